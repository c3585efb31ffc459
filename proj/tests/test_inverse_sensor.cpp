#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "dogm/inverse_sensor.hpp"

using namespace dogm;

namespace {

using CellSet = std::set<std::pair<int, int>>;

CellSet to_set(const std::vector<Vec2i>& cells) {
    CellSet s;
    for (const Vec2i& c : cells)
        s.insert({static_cast<int>(c.east), static_cast<int>(c.north)});
    return s;
}

/* Sampling oracle: walk the ray in fixed steps and collect the cells the
 * sample points fall into. Misses cells the ray only clips at a corner, so
 * callers treat it as a subset witness. */
CellSet sampling_oracle(const GridGeometry& g, double se, double sn,
                        double de, double dn, double len, double step) {
    CellSet s;
    for (double t = step * 0.5; t < len; t += step) {
        const int x = static_cast<int>(std::floor((se + de * t - g.origin_east) / g.cell_size));
        const int y = static_cast<int>(std::floor((sn + dn * t - g.origin_north) / g.cell_size));
        if (x >= 0 && x < g.width && y >= 0 && y < g.height)
            s.insert({x, y});
    }
    return s;
}

/* Exact oracle: per-cell slab test over the whole grid; a cell is traversed
 * iff the ray's parameter interval inside it has positive length. */
CellSet slab_oracle(const GridGeometry& g, double se, double sn,
                    double de, double dn, double len) {
    CellSet s;
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const double x0 = g.origin_east + x * g.cell_size;
            const double y0 = g.origin_north + y * g.cell_size;
            double t0 = 0.0, t1 = len;
            bool ok = true;
            const auto clip = [&](double sx, double d, double lo, double hi) {
                if (d == 0.0) {
                    if (sx <= lo || sx >= hi)
                        ok = false;
                    return;
                }
                double ta = (lo - sx) / d, tb = (hi - sx) / d;
                if (ta > tb)
                    std::swap(ta, tb);
                t0 = std::max(t0, ta);
                t1 = std::min(t1, tb);
            };
            clip(se, de, x0, x0 + g.cell_size);
            clip(sn, dn, y0, y0 + g.cell_size);
            if (ok && t1 - t0 > 1e-12)
                s.insert({x, y});
        }
    return s;
}

} // namespace

TEST_CASE("empty scan leaves every cell unknown") {
    Scan scan;
    scan.sensor_pose = Pose2(1.0, 1.0, 0.0);
    scan.max_range = 10.0;
    const GridMap m = measurement_grid(scan, {20, 20, 0.15f, 0.0, 0.0});
    for (float v : m.data)
        CHECK(v == 0.5f);
}

TEST_CASE("single eastward beam marks free cells then the hit cell") {
    /* Sensor at the center of cell (0, 5), one beam east, hit at 1.0 m.
     * Expected cells frozen from the sampling oracle at 0.01 m steps:
     * the ray starts at east 0.075, so the hit point (1.075) lies in
     * column 7; columns 0..6 are traversed free space. */
    const GridGeometry g{20, 10, 0.15f, 0.0, 0.0};
    Scan scan;
    scan.sensor_pose = Pose2(0.075, 5 * 0.15 + 0.075, 0.0);
    scan.max_range = 10.0;
    scan.beams.push_back({0.0, 1.0, true});

    const CellSet sampled = sampling_oracle(g, scan.sensor_pose.east, scan.sensor_pose.north,
                                            1.0, 0.0, 1.0, 0.01);
    CellSet expected_free;
    for (int x = 0; x <= 6; ++x)
        expected_free.insert({x, 5});
    CellSet expected_all = expected_free;
    expected_all.insert({7, 5});
    CHECK(sampled == expected_all);

    const GridMap m = measurement_grid(scan, g);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const float v = m.at(x, y, 0);
            if (expected_free.count({x, y}))
                CHECK(v == 0.15f);
            else if (x == 7 && y == 5)
                CHECK(v == 0.85f);
            else
                CHECK(v == 0.5f);
        }
}

TEST_CASE("a miss at max range marks only free space") {
    const GridGeometry g{20, 20, 0.15f, 0.0, 0.0};
    Scan scan;
    scan.sensor_pose = Pose2(1.5, 1.5, 0.0);
    scan.max_range = 1.2;
    scan.beams.push_back({0.7, 1.2, false});
    const GridMap m = measurement_grid(scan, g);
    int free = 0;
    for (float v : m.data) {
        CHECK(v != 0.85f);
        free += v == 0.15f;
    }
    CHECK(free > 0);
}

TEST_CASE("output values come from the three-point alphabet only") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-3.1, 3.1);
    std::uniform_real_distribution<double> rr(0.1, 6.0);
    Scan scan;
    scan.sensor_pose = Pose2(1.4, 1.6, 0.3);
    scan.max_range = 6.0;
    std::vector<double> azs;
    for (int i = 0; i < 60; ++i)
        azs.push_back(ang(rng));
    std::sort(azs.begin(), azs.end());
    azs.erase(std::unique(azs.begin(), azs.end()), azs.end());
    for (double a : azs) {
        const bool hit = rng() % 2;
        scan.beams.push_back({a, hit ? rr(rng) : 6.0, hit});
    }
    const GridMap m = measurement_grid(scan, {24, 24, 0.15f, 0.0, 0.0});
    for (float v : m.data)
        CHECK((v == 0.15f || v == 0.5f || v == 0.85f));
}

TEST_CASE("occupied evidence wins over free along crossing beams") {
    const GridGeometry g{20, 20, 0.15f, 0.0, 0.0};
    Scan scan;
    scan.sensor_pose = Pose2(0.075, 0.075, 0.0);
    scan.max_range = 10.0;
    /* First beam hits inside the corridor the second beam later crosses. */
    scan.beams.push_back({0.0, 1.0, true});
    scan.beams.push_back({0.01, 2.5, true});
    const GridMap m = measurement_grid(scan, g);
    CHECK(m.at(7, 0, 0) == 0.85f);

    /* Monotonicity: adding beams never demotes occupied back to unknown. */
    Scan more = scan;
    more.beams.push_back({0.02, 2.0, true});
    const GridMap m2 = measurement_grid(more, g);
    for (std::size_t i = 0; i < m.data.size(); ++i)
        if (m.data[i] == 0.85f)
            CHECK(m2.data[i] != 0.5f);
}

TEST_CASE("traversal walk equals the per-cell slab oracle on random beams") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(-1.0, 4.0);
    std::uniform_real_distribution<double> ang(-3.14159, 3.14159);
    std::uniform_real_distribution<double> len(0.05, 7.0);
    const GridGeometry g{18, 14, 0.15f, 0.3, -0.2};

    for (int it = 0; it < 500; ++it) {
        const double se = pos(rng), sn = pos(rng);
        const double a = ang(rng);
        const double de = std::cos(a), dn = std::sin(a);
        const double L = len(rng);
        const CellSet walked = to_set(traverse_cells(g, se, sn, de, dn, L));
        CHECK(walked == slab_oracle(g, se, sn, de, dn, L));
        /* Dense sampling (cell/10 steps) must never find a cell the walk
         * missed. */
        const CellSet sampled = sampling_oracle(g, se, sn, de, dn, L, 0.015);
        CHECK(std::includes(walked.begin(), walked.end(), sampled.begin(), sampled.end()));
    }
}

TEST_CASE("sensor outside the grid is clipped, degenerate geometry rejected") {
    Scan scan;
    scan.sensor_pose = Pose2(-5.0, 1.52, 0.0);
    scan.max_range = 20.0;
    scan.beams.push_back({0.0, 20.0, false});
    const GridMap m = measurement_grid(scan, {20, 20, 0.15f, 0.0, 0.0});
    int free = 0;
    for (float v : m.data)
        free += v == 0.15f;
    CHECK(free == 20);  // one full row clipped into the grid

    CHECK_THROWS_AS(measurement_grid(scan, {0, 20, 0.15f, 0.0, 0.0}), ContractViolation);
}

TEST_CASE("scan invariants are enforced") {
    Scan scan;
    scan.sensor_pose = Pose2(0, 0, 0);
    scan.max_range = 5.0;
    scan.beams.push_back({0.2, 1.0, true});
    scan.beams.push_back({0.1, 1.0, true});
    CHECK_THROWS_AS(validate(scan), ContractViolation);

    scan.beams.clear();
    scan.beams.push_back({0.0, 4.0, false});  // miss must carry max_range
    CHECK_THROWS_AS(validate(scan), ContractViolation);

    scan.beams.clear();
    scan.beams.push_back({0.0, 6.0, true});  // beyond max range
    CHECK_THROWS_AS(validate(scan), ContractViolation);
}
