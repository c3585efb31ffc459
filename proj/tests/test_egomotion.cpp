#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dogm/egomotion.hpp"

using namespace dogm;

namespace {

const LevelPyramid kPyr = LevelPyramid::paper(0.15);

Pose2 pose_at_level1_index(std::int64_t ie, std::int64_t in) {
    /* Center of the level-1 cell (ie, in). */
    return Pose2((ie + 0.5) * 0.15, (in + 0.5) * 0.15, 0.0);
}

Tensor<float> iota_tensor(int h, int w, int c = 1) {
    Tensor<float> t(h, w, c);
    for (std::size_t i = 0; i < t.size(); ++i)
        t.data()[i] = static_cast<float>(i + 1);
    return t;
}

} // namespace

TEST_CASE("plan_step decomposes the pose into p_in and per-level shifts") {
    CompensationState state = make_compensation_state(Pose2(0, 0, 0), kPyr);
    CHECK(state.pad_cells == 28);

    const ShiftPlan p0 = plan_step(pose_at_level1_index(100, 50), state, kPyr);
    CHECK(p0.p_in == Vec2i{19, 23});
    CHECK(p0.gd == std::vector<Vec2i>{{0, 0}, {0, 0}, {0, 0}, {0, 0}});

    /* Stationary ego: same pose again. */
    const ShiftPlan p1 = plan_step(pose_at_level1_index(100, 50), state, kPyr);
    CHECK(p1.p_in == p0.p_in);
    CHECK_FALSE(p1.any_shift());

    /* Advance one level-4 cell east: i_g1 100 -> 127. */
    const ShiftPlan p2 = plan_step(pose_at_level1_index(127, 50), state, kPyr);
    CHECK(p2.p_in == p0.p_in);
    CHECK(p2.gd == std::vector<Vec2i>{{27, 0}, {9, 0}, {3, 0}, {1, 0}});
}

TEST_CASE("p_in stays in range and the displacement identity holds on walks") {
    std::mt19937_64 rng(4711);
    std::uniform_real_distribution<double> step(-2.0, 2.0);
    std::uniform_real_distribution<double> start(-100.0, 100.0);

    for (int walk = 0; walk < 20; ++walk) {
        CompensationState state = make_compensation_state(Pose2(0, 0, 0), kPyr);
        Pose2 pose(start(rng), start(rng), 0);
        GridIndex prev_i1{};
        Vec2i prev_pin{};
        bool has_prev = false;
        for (int t = 0; t < 500; ++t) {
            const ShiftPlan plan = plan_step(pose, state, kPyr);
            CHECK(plan.p_in.east >= 0);
            CHECK(plan.p_in.east < 27);
            CHECK(plan.p_in.north >= 0);
            CHECK(plan.p_in.north < 27);
            for (int l = 1; l <= 4; ++l) {
                CHECK(plan.gd[l - 1].east == plan.gd[3].east * (27 / kPyr.ratio(l)));
                CHECK(plan.gd[l - 1].north == plan.gd[3].north * (27 / kPyr.ratio(l)));
            }
            const GridIndex i1 = global_index(pose, state.ref, kPyr, 1);
            if (has_prev) {
                /* Level-1 displacement = 27 * gd_4 + delta p_in, exactly. */
                CHECK(i1.i_east - prev_i1.i_east ==
                      27 * plan.gd[3].east + (plan.p_in.east - prev_pin.east));
                CHECK(i1.i_north - prev_i1.i_north ==
                      27 * plan.gd[3].north + (plan.p_in.north - prev_pin.north));
            }
            prev_i1 = i1;
            prev_pin = plan.p_in;
            has_prev = true;
            pose = Pose2(pose.east + step(rng), pose.north + step(rng), 0);
        }
    }
}

TEST_CASE("place_input pads to the enlarged canvas at p_in") {
    GridMap m(80, 80, 1, 0.15f, 0.0, 0.0, 0.85f);

    ShiftPlan plan;
    plan.p_in = {0, 0};
    plan.gd.assign(4, {0, 0});
    const GridMap c0 = place_input(m, plan, 28);
    CHECK(c0.width == 108);
    CHECK(c0.height == 108);
    CHECK(c0.at(0, 0, 0) == 0.85f);
    CHECK(c0.at(79, 79, 0) == 0.85f);
    CHECK(c0.at(80, 40, 0) == 0.5f);  // unknown band east
    CHECK(c0.at(40, 80, 0) == 0.5f);  // unknown band north

    plan.p_in = {27, 27};
    const GridMap c1 = place_input(m, plan, 28);
    CHECK(c1.at(26, 26, 0) == 0.5f);  // unknown band west/south
    CHECK(c1.at(27, 27, 0) == 0.85f);
    CHECK(c1.at(106, 106, 0) == 0.85f);
    CHECK(c1.at(107, 107, 0) == 0.5f);

    plan.p_in = {28, 0};
    CHECK_THROWS_AS(place_input(m, plan, 28), ContractViolation);
}

TEST_CASE("shift_state translates payload against the ego advance") {
    const Tensor<float> t = iota_tensor(3, 3);

    const Tensor<float> same = shift_state(t, {0, 0}, 0.0f);
    CHECK(same == t);

    const Tensor<float> east = shift_state(t, {1, 0}, 0.0f);
    /* Values 1..9 row-major: every row moves one column toward the origin,
     * the vacated column is fill. */
    CHECK(east.at(0, 0, 0) == 2.0f);
    CHECK(east.at(0, 1, 0) == 3.0f);
    CHECK(east.at(0, 2, 0) == 0.0f);
    CHECK(east.at(1, 0, 0) == 5.0f);
    CHECK(east.at(2, 2, 0) == 0.0f);

    const Tensor<float> back = shift_state(east, {-1, 0}, 0.0f);
    CHECK(back.at(0, 0, 0) == 0.0f);
    CHECK(back.at(0, 1, 0) == 2.0f);
    CHECK(back.at(0, 2, 0) == 3.0f);
    CHECK(back.at(1, 1, 0) == 5.0f);

    const Tensor<float> gone = shift_state(t, {3, 0}, -1.0f);
    for (std::size_t i = 0; i < gone.size(); ++i)
        CHECK(gone.data()[i] == -1.0f);
}

TEST_CASE("shift_state composition matches a direct two-shift oracle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<float> val(-1.0f, 1.0f);
    std::uniform_int_distribution<int> sh(-4, 4);
    for (int it = 0; it < 200; ++it) {
        Tensor<float> t(9, 9, 2);
        for (std::size_t i = 0; i < t.size(); ++i)
            t.data()[i] = val(rng);
        const Vec2i a{sh(rng), sh(rng)};
        const Vec2i b{sh(rng), sh(rng)};
        const Tensor<float> two = shift_state(shift_state(t, a, 0.0f), b, 0.0f);

        /* Oracle: direct index arithmetic for the composition. */
        Tensor<float> oracle(9, 9, 2, 0.0f);
        for (int y = 0; y < 9; ++y)
            for (int x = 0; x < 9; ++x)
                for (int c = 0; c < 2; ++c) {
                    const std::int64_t mx = x + b.east;
                    const std::int64_t my = y + b.north;
                    if (mx < 0 || mx >= 9 || my < 0 || my >= 9)
                        continue;
                    const std::int64_t sx = mx + a.east;
                    const std::int64_t sy = my + a.north;
                    if (sx < 0 || sx >= 9 || sy < 0 || sy >= 9)
                        continue;
                    oracle.at(y, x, c) = t.at(static_cast<int>(sy), static_cast<int>(sx), c);
                }
        CHECK(two == oracle);
    }
}

TEST_CASE("shift_all applies the per-level shifts of one plan") {
    std::vector<RecurrentState<float>> states;
    const int extents[4] = {108, 36, 12, 4};
    for (int l = 1; l <= 4; ++l)
        states.push_back({l, iota_tensor(extents[l - 1], extents[l - 1]),
                          iota_tensor(extents[l - 1], extents[l - 1])});

    ShiftPlan still;
    still.p_in = {0, 0};
    still.gd.assign(4, {0, 0});
    const auto unchanged = shift_all(states, still, kPyr);
    for (int i = 0; i < 4; ++i) {
        CHECK(unchanged[i].hidden == states[i].hidden);
        CHECK(unchanged[i].cell == states[i].cell);
    }

    ShiftPlan move;
    move.p_in = {0, 0};
    move.gd = {{27, 27}, {9, 9}, {3, 3}, {1, 1}};
    const auto shifted = shift_all(states, move, kPyr);
    for (int i = 0; i < 4; ++i) {
        const Vec2i gd = move.gd[i];
        CHECK(shifted[i].hidden == shift_state(states[i].hidden, gd, 0.0f));
        CHECK(shifted[i].cell == shift_state(states[i].cell, gd, 0.0f));
    }

    /* Shift east then back west: interior restored, one fill band of the
     * level shift width where content fell off the edge. */
    ShiftPlan fwd;
    fwd.gd = {{27, 0}, {9, 0}, {3, 0}, {1, 0}};
    ShiftPlan bwd;
    bwd.gd = {{-27, 0}, {-9, 0}, {-3, 0}, {-1, 0}};
    const auto round = shift_all(shift_all(states, fwd, kPyr), bwd, kPyr);
    for (int i = 0; i < 4; ++i) {
        const int ext = extents[i];
        const int band = static_cast<int>(fwd.gd[i].east);
        for (int y = 0; y < ext; ++y)
            for (int x = 0; x < ext; ++x) {
                if (x < band)
                    CHECK(round[i].hidden.at(y, x, 0) == 0.0f);
                else
                    CHECK(round[i].hidden.at(y, x, 0) == states[i].hidden.at(y, x, 0));
            }
    }

    std::vector<RecurrentState<float>> bad = {{0, iota_tensor(4, 4), iota_tensor(4, 4)}};
    CHECK_THROWS_AS(shift_all(bad, move, kPyr), ContractViolation);
}

TEST_CASE("canvas anchor only moves by whole coarse cells") {
    /* The placed-input origin equals window origin minus p_in cells, which
     * by construction advances in multiples of the level-4 cell size. */
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> step(-1.5, 1.5);
    CompensationState state = make_compensation_state(Pose2(0, 0, 0), kPyr);
    Pose2 pose(3.3, -2.2, 0);
    const int c_off = 40;

    std::int64_t anchor0_e = 0, anchor0_n = 0;
    std::int64_t cum_gd_e = 0, cum_gd_n = 0;
    for (int t = 0; t < 300; ++t) {
        const ShiftPlan plan = plan_step(pose, state, kPyr);
        const GridIndex i1 = global_index(pose, state.ref, kPyr, 1);
        const std::int64_t anchor_e = i1.i_east - c_off - plan.p_in.east;
        const std::int64_t anchor_n = i1.i_north - c_off - plan.p_in.north;
        if (t == 0) {
            anchor0_e = anchor_e;
            anchor0_n = anchor_n;
        } else {
            cum_gd_e += plan.gd[3].east;
            cum_gd_n += plan.gd[3].north;
            CHECK(anchor_e - anchor0_e == 27 * cum_gd_e);
            CHECK(anchor_n - anchor0_n == 27 * cum_gd_n);
        }
        pose = Pose2(pose.east + step(rng), pose.north + step(rng), 0);
    }
}
