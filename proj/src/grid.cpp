#include "dogm/grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace dogm {

LevelPyramid::LevelPyramid(double base_cell_size, int levels) : a_(base_cell_size) {
    if (base_cell_size <= 0.0)
        throw ContractViolation("LevelPyramid: cell size must be positive");
    if (levels < 1)
        throw ContractViolation("LevelPyramid: need at least one level");
    int r = 1;
    for (int l = 0; l < levels; ++l, r *= 3)
        ratios_.push_back(r);
}

int LevelPyramid::ratio(int level) const {
    if (level < 1 || level > levels())
        throw ContractViolation("LevelPyramid: level out of range");
    return ratios_[level - 1];
}

GridMap::GridMap(int w, int h, int c, float cs, double oe, double on, float fill)
    : width(w), height(h), channels(c), cell_size(cs),
      origin_east(oe), origin_north(on) {
    if (w < 1 || h < 1 || c < 1)
        throw ContractViolation("GridMap: extents must be >= 1");
    if (!(cs > 0.0f))
        throw ContractViolation("GridMap: cell size must be positive");
    data.assign(static_cast<std::size_t>(w) * h * c, fill);
}

Tensor<float> GridMap::tensor() const {
    Tensor<float> t(height, width, channels);
    t.raw() = data;
    return t;
}

Tensor<double> GridMap::tensor64() const {
    Tensor<double> t(height, width, channels);
    for (std::size_t i = 0; i < data.size(); ++i)
        t.data()[i] = data[i];
    return t;
}

GridIndex global_index(const Pose2& pose, const Pose2& ref,
                       const LevelPyramid& pyramid, int level) {
    if (level < 1 || level > pyramid.levels())
        throw ContractViolation("global_index: invalid level");
    const double a = pyramid.base_cell_size();
    const auto i1e = static_cast<std::int64_t>(std::floor((pose.east - ref.east) / a));
    const auto i1n = static_cast<std::int64_t>(std::floor((pose.north - ref.north) / a));
    const int r = pyramid.ratio(level);
    return {floor_div(i1e, r), floor_div(i1n, r), level};
}

GridMap crop(const GridMap& map, int x0, int y0, int w, int h) {
    if (w < 1 || h < 1)
        throw RangeError("crop: window extents must be >= 1");
    if (x0 < 0 || y0 < 0 || x0 + w > map.width || y0 + h > map.height)
        throw RangeError("crop: window exceeds map bounds");
    GridMap out(w, h, map.channels, map.cell_size,
                map.origin_east + static_cast<double>(x0) * map.cell_size,
                map.origin_north + static_cast<double>(y0) * map.cell_size);
    const std::size_t row_bytes = static_cast<std::size_t>(w) * map.channels;
    for (int y = 0; y < h; ++y)
        std::memcpy(&out.data[out.idx(0, y, 0)], &map.data[map.idx(x0, y0 + y, 0)],
                    row_bytes * sizeof(float));
    return out;
}

GridMap place(int canvas_w, int canvas_h, const GridMap& map,
              Vec2i offset, float fill) {
    if (offset.east < 0 || offset.north < 0 ||
        offset.east + map.width > canvas_w || offset.north + map.height > canvas_h)
        throw RangeError("place: map does not fit in canvas at offset");
    GridMap out(canvas_w, canvas_h, map.channels, map.cell_size,
                map.origin_east - static_cast<double>(offset.east) * map.cell_size,
                map.origin_north - static_cast<double>(offset.north) * map.cell_size,
                fill);
    const std::size_t row_bytes = static_cast<std::size_t>(map.width) * map.channels;
    for (int y = 0; y < map.height; ++y)
        std::memcpy(&out.data[out.idx(static_cast<int>(offset.east),
                                      static_cast<int>(offset.north) + y, 0)],
                    &map.data[map.idx(0, y, 0)], row_bytes * sizeof(float));
    return out;
}

namespace {

template <typename T>
void write_le(std::ofstream& os, T v) {
    static_assert(std::endian::native == std::endian::little,
                  "DGM1 writer assumes a little-endian host");
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

void save_dgm1(const std::filesystem::path& path, const GridMap& map) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw DataError("save_dgm1: cannot open " + path.string());
    os.write("DGM1", 4);
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(map.width));
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(map.height));
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(map.channels));
    write_le<float>(os, map.cell_size);
    write_le<double>(os, map.origin_east);
    write_le<double>(os, map.origin_north);
    os.write(reinterpret_cast<const char*>(map.data.data()),
             static_cast<std::streamsize>(map.data.size() * sizeof(float)));
    if (!os)
        throw DataError("save_dgm1: write failed for " + path.string());
}

GridMap load_dgm1(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw DataError("load_dgm1: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "DGM1", 4) != 0)
        throw DataError("load_dgm1: bad magic in " + path.string());
    const auto w = read_le<std::uint32_t>(is);
    const auto h = read_le<std::uint32_t>(is);
    const auto c = read_le<std::uint32_t>(is);
    const auto cs = read_le<float>(is);
    const auto oe = read_le<double>(is);
    const auto on = read_le<double>(is);
    if (!is || w < 1 || h < 1 || c < 1 || !(cs > 0.0f))
        throw DataError("load_dgm1: bad header in " + path.string());
    GridMap map(static_cast<int>(w), static_cast<int>(h), static_cast<int>(c), cs, oe, on);
    is.read(reinterpret_cast<char*>(map.data.data()),
            static_cast<std::streamsize>(map.data.size() * sizeof(float)));
    if (!is)
        throw DataError("load_dgm1: truncated payload in " + path.string());
    return map;
}

} // namespace dogm
