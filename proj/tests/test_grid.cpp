#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "dogm/grid.hpp"

using namespace dogm;

TEST_CASE("floor_div rounds toward minus infinity") {
    CHECK(floor_div(7, 3) == 2);
    CHECK(floor_div(-1, 27) == -1);
    CHECK(floor_div(-27, 27) == -1);
    CHECK(floor_div(-28, 27) == -2);
    CHECK(floor_div(0, 5) == 0);
}

TEST_CASE("global_index evaluates the floored cell quotient") {
    const LevelPyramid pyr = LevelPyramid::paper(0.15);
    const Pose2 ref(0, 0, 0);

    const GridIndex a = global_index(Pose2(1.0, 2.0, 0), ref, pyr, 1);
    CHECK(a.i_east == 6);
    CHECK(a.i_north == 13);

    const GridIndex b = global_index(Pose2(-0.1, 0.0, 0), ref, pyr, 1);
    CHECK(b.i_east == -1);
    CHECK(b.i_north == 0);

    const GridIndex c = global_index(Pose2(4.05, 4.05, 0), ref, pyr, 4);
    CHECK(c.i_east == 1);
    CHECK(c.i_north == 1);

    CHECK_THROWS_AS(global_index(Pose2(), ref, pyr, 5), ContractViolation);
    CHECK_THROWS_AS(global_index(Pose2(), ref, pyr, 0), ContractViolation);
}

TEST_CASE("global_index is translation consistent and factor-3 nested") {
    const LevelPyramid pyr = LevelPyramid::paper(0.15);
    const Pose2 ref(2.0, -3.0, 0);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> pos(-50.0, 50.0);
    std::uniform_int_distribution<std::int64_t> cells(-40, 40);

    for (int it = 0; it < 2000; ++it) {
        const Pose2 p(pos(rng), pos(rng), 0);
        for (int level = 1; level <= 4; ++level) {
            const double s = pyr.cell_size(level);
            const std::int64_t ke = cells(rng), kn = cells(rng);
            const GridIndex base = global_index(p, ref, pyr, level);
            const GridIndex moved =
                global_index(Pose2(p.east + s * ke, p.north + s * kn, 0), ref, pyr, level);
            CHECK(moved.i_east == base.i_east + ke);
            CHECK(moved.i_north == base.i_north + kn);
        }
        for (int level = 1; level < 4; ++level) {
            const GridIndex fine = global_index(p, ref, pyr, level);
            const GridIndex coarse = global_index(p, ref, pyr, level + 1);
            CHECK(coarse.i_east == floor_div(fine.i_east, 3));
            CHECK(coarse.i_north == floor_div(fine.i_north, 3));
        }
    }
}

namespace {

GridMap counting_map(int w, int h, int c, float cs, double oe, double on) {
    GridMap m(w, h, c, cs, oe, on);
    for (std::size_t i = 0; i < m.data.size(); ++i)
        m.data[i] = static_cast<float>(i) * 0.25f - 3.0f;
    return m;
}

} // namespace

TEST_CASE("crop windows and adjusts the origin") {
    const GridMap m = counting_map(10, 10, 2, 0.15f, 0.0, 0.0);

    const GridMap same = crop(m, 0, 0, 10, 10);
    CHECK(same.data == m.data);
    CHECK(same.origin_east == m.origin_east);

    const GridMap w = crop(m, 2, 3, 4, 4);
    CHECK(w.width == 4);
    CHECK(w.height == 4);
    CHECK(w.origin_east == doctest::Approx(0.30).epsilon(1e-6));
    CHECK(w.origin_north == doctest::Approx(0.45).epsilon(1e-6));
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            for (int ch = 0; ch < 2; ++ch)
                CHECK(w.at(x, y, ch) == m.at(x + 2, y + 3, ch));

    CHECK_THROWS_AS(crop(m, 8, 8, 4, 4), RangeError);
}

TEST_CASE("place pastes into a filled canvas preserving georeference") {
    const GridMap m = counting_map(3, 3, 1, 0.15f, 1.5, 0.6);

    const GridMap c = place(5, 5, m, {1, 1}, 0.5f);
    CHECK(c.width == 5);
    CHECK(c.origin_east == doctest::Approx(1.5 - 0.15).epsilon(1e-6));
    int border = 0;
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            if (x == 0 || y == 0 || x == 4 || y == 4) {
                CHECK(c.at(x, y, 0) == 0.5f);
                ++border;
            } else {
                CHECK(c.at(x, y, 0) == m.at(x - 1, y - 1, 0));
            }
        }
    CHECK(border == 16);

    const GridMap identity = place(3, 3, m, {0, 0}, 0.0f);
    CHECK(identity.data == m.data);
    CHECK(identity.origin_east == m.origin_east);

    CHECK_THROWS_AS(place(4, 4, m, {2, 2}, 0.0f), RangeError);
}

TEST_CASE("crop of place at the same offset is identity on the payload") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 12);
    std::uniform_real_distribution<float> val(-2.0f, 2.0f);
    for (int it = 0; it < 50; ++it) {
        const int w = dim(rng), h = dim(rng), c = 1 + dim(rng) % 3;
        GridMap m(w, h, c, 0.2f, -1.0, 2.0);
        for (float& v : m.data)
            v = val(rng);
        const int ox = dim(rng) % 4, oy = dim(rng) % 4;
        const GridMap canvas = place(w + 6, h + 6, m, {ox, oy}, 0.5f);
        const GridMap back = crop(canvas, ox, oy, w, h);
        CHECK(back.data == m.data);
        CHECK(back.origin_east == doctest::Approx(m.origin_east).epsilon(1e-6));
        CHECK(back.origin_north == doctest::Approx(m.origin_north).epsilon(1e-6));
    }
}

TEST_CASE("GridMap construction enforces invariants") {
    CHECK_THROWS_AS(GridMap(0, 4, 1, 0.1f, 0, 0), ContractViolation);
    CHECK_THROWS_AS(GridMap(4, 4, 0, 0.1f, 0, 0), ContractViolation);
    CHECK_THROWS_AS(GridMap(4, 4, 1, 0.0f, 0, 0), ContractViolation);
}

TEST_CASE("DGM1 files round-trip bit-exactly") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<float> val(-10.0f, 10.0f);
    GridMap m(17, 9, 3, 0.15f, -12.345, 678.9);
    for (float& v : m.data)
        v = val(rng);
    m.data[0] = 0.0f;
    m.data[1] = -0.0f;
    m.data[2] = 1e-38f;

    const auto path = std::filesystem::temp_directory_path() / "dogm_test_roundtrip.dgm";
    save_dgm1(path, m);
    const GridMap r = load_dgm1(path);
    CHECK(r.width == m.width);
    CHECK(r.height == m.height);
    CHECK(r.channels == m.channels);
    CHECK(r.cell_size == m.cell_size);
    CHECK(r.origin_east == m.origin_east);
    CHECK(r.origin_north == m.origin_north);
    CHECK(std::memcmp(r.data.data(), m.data.data(), m.data.size() * sizeof(float)) == 0);

    /* Header is 4 + 3*4 + 4 + 2*8 = 36 bytes. */
    CHECK(std::filesystem::file_size(path) == 36 + m.data.size() * sizeof(float));
    std::filesystem::remove(path);
}

TEST_CASE("DGM1 loader rejects bad input") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto bad = dir / "dogm_test_bad.dgm";
    {
        std::FILE* f = std::fopen(bad.c_str(), "wb");
        std::fputs("NOPE", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_dgm1(bad), DataError);
    CHECK_THROWS_AS(load_dgm1(dir / "dogm_test_missing.dgm"), DataError);
    std::filesystem::remove(bad);
}

TEST_CASE("Pose2 normalizes heading to (-pi, pi]") {
    CHECK(Pose2(0, 0, 4.0 * 3.14159265358979).heading ==
          doctest::Approx(4.0 * 3.14159265358979 - 4.0 * std::numbers::pi).epsilon(1e-9));
    CHECK(Pose2(0, 0, std::numbers::pi).heading == doctest::Approx(std::numbers::pi));
    CHECK(Pose2(0, 0, -std::numbers::pi).heading == doctest::Approx(std::numbers::pi));
}
