#pragma once

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

#include "dogm/grid.hpp"
#include "dogm/rnn/state.hpp"

namespace dogm {

/* Per-stream bookkeeping for ego-motion compensation. `ref` stays fixed for
 * the whole sequence; `prev_index_top` is the coarsest-level ego cell of the
 * previous step and is empty exactly at sequence start. */
struct CompensationState {
    Pose2 ref;
    std::optional<GridIndex> prev_index_top;
    int pad_cells = 0;
};

CompensationState make_compensation_state(const Pose2& ref, const LevelPyramid& pyramid);

/* One step of compensation: the input placement offset at level 1 and the
 * per-level recurrent-state shifts. gd[l-1] is the level-l shift. */
struct ShiftPlan {
    Vec2i p_in;
    std::vector<Vec2i> gd;

    bool any_shift() const {
        for (const Vec2i& g : gd)
            if (g.east != 0 || g.north != 0)
                return true;
        return false;
    }
};

/* Compute the step's ShiftPlan from the current ego pose and advance the
 * compensation state. The ego position inside its coarsest-level cell gives
 * p_in; a coarsest-cell change since the previous step gives the shifts,
 * scaled per level by the exact cell-size ratios. Strictly sequential per
 * stream. */
ShiftPlan plan_step(const Pose2& pose, CompensationState& state,
                    const LevelPyramid& pyramid);

/* Input placement: paste the measurement grid into a canvas enlarged by
 * pad_cells per edge at offset p_in, unknown cells at `fill`. The canvas
 * origin moves only in whole coarsest-level cells as the ego drives. */
GridMap place_input(const GridMap& map, const ShiftPlan& plan, int pad_cells,
                    float fill = 0.5f);

/* Recurrent states shifting: translate the payload by -gd in grid
 * coordinates so world-fixed content stays aligned with the advancing ego
 * frame; vacated cells take `fill`. A shift at least as large as the tensor
 * extent empties the tensor (valid, warned once per call). */
template <typename T>
Tensor<T> shift_state(const Tensor<T>& t, Vec2i gd, T fill) {
    Tensor<T> out(t.height(), t.width(), t.channels(), fill);
    if (std::llabs(gd.east) >= t.width() || std::llabs(gd.north) >= t.height()) {
        if (gd.east != 0 || gd.north != 0)
            std::fprintf(stderr,
                         "shift_state: shift (%lld, %lld) clears a %dx%d tensor\n",
                         static_cast<long long>(gd.east), static_cast<long long>(gd.north),
                         t.width(), t.height());
        return out;
    }
    const int src_x0 = static_cast<int>(std::max<std::int64_t>(gd.east, 0));
    const int dst_x0 = static_cast<int>(std::max<std::int64_t>(-gd.east, 0));
    const int src_y0 = static_cast<int>(std::max<std::int64_t>(gd.north, 0));
    const int dst_y0 = static_cast<int>(std::max<std::int64_t>(-gd.north, 0));
    const int w = t.width() - std::abs(static_cast<int>(gd.east));
    const int h = t.height() - std::abs(static_cast<int>(gd.north));
    for (int y = 0; y < h; ++y) {
        const T* src = &t.at(src_y0 + y, src_x0, 0);
        T* dst = &out.at(dst_y0 + y, dst_x0, 0);
        std::copy(src, src + static_cast<std::size_t>(w) * t.channels(), dst);
    }
    return out;
}

/* Shift every recurrent state by the plan's entry for its level. */
template <typename T>
std::vector<RecurrentState<T>> shift_all(const std::vector<RecurrentState<T>>& states,
                                         const ShiftPlan& plan,
                                         const LevelPyramid& pyramid) {
    std::vector<RecurrentState<T>> out;
    out.reserve(states.size());
    for (const RecurrentState<T>& s : states) {
        if (s.level < 1 || s.level > pyramid.levels() ||
            s.level > static_cast<int>(plan.gd.size()))
            throw ContractViolation("shift_all: state carries no valid level tag");
        const Vec2i gd = plan.gd[s.level - 1];
        out.push_back({s.level, shift_state(s.hidden, gd, T(0)),
                       shift_state(s.cell, gd, T(0))});
    }
    return out;
}

} // namespace dogm
