#include "dogm/egomotion.hpp"

namespace dogm {

CompensationState make_compensation_state(const Pose2& ref, const LevelPyramid& pyramid) {
    return {ref, std::nullopt, pyramid.pad_cells()};
}

ShiftPlan plan_step(const Pose2& pose, CompensationState& state,
                    const LevelPyramid& pyramid) {
    const int top = pyramid.levels();
    const GridIndex i1 = global_index(pose, state.ref, pyramid, 1);
    const GridIndex itop = global_index(pose, state.ref, pyramid, top);
    const std::int64_t top_ratio = pyramid.top_ratio();

    ShiftPlan plan;
    plan.p_in = {i1.i_east - itop.i_east * top_ratio,
                 i1.i_north - itop.i_north * top_ratio};

    Vec2i gd_top{0, 0};
    if (state.prev_index_top)
        gd_top = {itop.i_east - state.prev_index_top->i_east,
                  itop.i_north - state.prev_index_top->i_north};

    plan.gd.resize(top);
    for (int l = 1; l <= top; ++l) {
        const std::int64_t scale = top_ratio / pyramid.ratio(l);
        plan.gd[l - 1] = {gd_top.east * scale, gd_top.north * scale};
    }

    state.prev_index_top = itop;
    return plan;
}

GridMap place_input(const GridMap& map, const ShiftPlan& plan, int pad_cells,
                    float fill) {
    if (plan.p_in.east < 0 || plan.p_in.east > pad_cells - 1 ||
        plan.p_in.north < 0 || plan.p_in.north > pad_cells - 1)
        throw ContractViolation("place_input: p_in outside padding range "
                                "(missed recurrent-states shift?)");
    return place(map.width + pad_cells, map.height + pad_cells, map, plan.p_in, fill);
}

} // namespace dogm
