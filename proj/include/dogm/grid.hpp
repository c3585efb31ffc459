#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dogm/error.hpp"
#include "dogm/mathutil.hpp"
#include "dogm/tensor.hpp"

namespace dogm {

/* Ego pose in the global east/north frame, heading in radians
 * (east = 0, counterclockwise), normalized to (-pi, pi]. */
struct Pose2 {
    double east = 0.0;
    double north = 0.0;
    double heading = 0.0;

    Pose2() = default;
    Pose2(double e, double n, double h) : east(e), north(n), heading(wrap_angle(h)) {}
};

/* Per-axis cell offset, east then north. */
struct Vec2i {
    std::int64_t east = 0;
    std::int64_t north = 0;

    bool operator==(const Vec2i&) const = default;
};

/* The factor-3 resolution pyramid created by the stride-3 encoder stages.
 * Level l (1-based) has cell size base_cell_size * ratios[l-1]. */
class LevelPyramid {
public:
    LevelPyramid(double base_cell_size, int levels);

    /* The four-level pyramid with cell sizes a * [1, 3, 9, 27]. */
    static LevelPyramid paper(double base_cell_size = 0.15) {
        return LevelPyramid(base_cell_size, 4);
    }

    double base_cell_size() const { return a_; }
    int levels() const { return static_cast<int>(ratios_.size()); }
    int ratio(int level) const;
    double cell_size(int level) const { return a_ * ratio(level); }
    /* Cells per level-L cell edge at level 1. */
    int top_ratio() const { return ratios_.back(); }
    /* Input enlargement per edge used by input placement. */
    int pad_cells() const { return ratios_.back() / ratios_.front() + 1; }

private:
    double a_;
    std::vector<int> ratios_;
};

/* Signed cell index relative to the global reference, east/north order. */
struct GridIndex {
    std::int64_t i_east = 0;
    std::int64_t i_north = 0;
    int level = 1;

    Vec2i vec() const { return {i_east, i_north}; }
    bool operator==(const GridIndex&) const = default;
};

/* Georeferenced W x H x C grid of cell values. Data is row-major,
 * channel-last; row y counts north from the origin, column x counts east.
 * The origin is the global position of the lower-left cell corner. */
struct GridMap {
    int width = 0;
    int height = 0;
    int channels = 0;
    float cell_size = 0.0f;
    double origin_east = 0.0;
    double origin_north = 0.0;
    std::vector<float> data;

    GridMap() = default;
    GridMap(int w, int h, int c, float cs, double oe, double on, float fill = 0.0f);

    float& at(int x, int y, int ch) { return data[idx(x, y, ch)]; }
    const float& at(int x, int y, int ch) const { return data[idx(x, y, ch)]; }

    std::size_t idx(int x, int y, int ch) const {
        return (static_cast<std::size_t>(y) * width + x) * channels + ch;
    }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }

    /* World position of the center of cell (x, y). */
    double center_east(int x) const { return origin_east + (x + 0.5) * cell_size; }
    double center_north(int y) const { return origin_north + (y + 0.5) * cell_size; }

    Tensor<float> tensor() const;
    Tensor<double> tensor64() const;
};

/* Ego position as a signed cell index of the given pyramid level, relative
 * to the fixed reference. Level 1 is floored directly; coarser levels come
 * from exact nested floor division so the factor-3 identity
 * i_{l+1} = floor(i_l / 3) holds for every pose. */
GridIndex global_index(const Pose2& pose, const Pose2& ref,
                       const LevelPyramid& pyramid, int level);

/* Copy of a window, with the origin advanced by (x0, y0) cells. */
GridMap crop(const GridMap& map, int x0, int y0, int w, int h);

/* Paste `map` into a fresh canvas_w x canvas_h canvas at `offset` cells,
 * remaining cells at `fill`. The canvas origin is chosen so every copied
 * cell keeps its world position. */
GridMap place(int canvas_w, int canvas_h, const GridMap& map,
              Vec2i offset, float fill);

/* DGM1 binary grid file: magic "DGM1", little-endian u32 width, u32 height,
 * u32 channels, f32 cell_size, f64 origin_east, f64 origin_north, then
 * width*height*channels f32 values, row-major, channel-last. */
void save_dgm1(const std::filesystem::path& path, const GridMap& map);
GridMap load_dgm1(const std::filesystem::path& path);

} // namespace dogm
