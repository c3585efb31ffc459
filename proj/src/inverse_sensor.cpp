#include "dogm/inverse_sensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dogm {

void validate(const Scan& scan) {
    if (!(scan.max_range > 0.0))
        throw ContractViolation("Scan: max_range must be positive");
    double prev = -std::numeric_limits<double>::infinity();
    for (const Beam& b : scan.beams) {
        if (b.azimuth <= prev)
            throw ContractViolation("Scan: azimuths must be strictly increasing");
        prev = b.azimuth;
        if (b.hit) {
            if (!(b.range > 0.0) || b.range > scan.max_range + 1e-9)
                throw ContractViolation("Scan: hit range outside (0, max_range]");
        } else if (std::abs(b.range - scan.max_range) > 1e-9) {
            throw ContractViolation("Scan: miss must carry max_range");
        }
    }
}

std::vector<Vec2i> traverse_cells(const GridGeometry& geometry,
                                  double start_e, double start_n,
                                  double dir_e, double dir_n, double length) {
    std::vector<Vec2i> cells;
    if (!(length > 0.0))
        return cells;
    const double cs = geometry.cell_size;
    const double sx = start_e - geometry.origin_east;
    const double sy = start_n - geometry.origin_north;
    const double ext_x = geometry.width * cs;
    const double ext_y = geometry.height * cs;

    /* Clip [0, length] against the grid slab on each axis. */
    double t0 = 0.0, t1 = length;
    const auto clip = [&](double s, double d, double lo, double hi) {
        if (d == 0.0)
            return s >= lo && s <= hi;
        double ta = (lo - s) / d;
        double tb = (hi - s) / d;
        if (ta > tb)
            std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        return true;
    };
    if (!clip(sx, dir_e, 0.0, ext_x) || !clip(sy, dir_n, 0.0, ext_y) || t0 >= t1)
        return cells;

    int cx = std::clamp(static_cast<int>(std::floor((sx + dir_e * t0) / cs)), 0,
                        geometry.width - 1);
    int cy = std::clamp(static_cast<int>(std::floor((sy + dir_n * t0) / cs)), 0,
                        geometry.height - 1);
    const int step_x = dir_e > 0.0 ? 1 : (dir_e < 0.0 ? -1 : 0);
    const int step_y = dir_n > 0.0 ? 1 : (dir_n < 0.0 ? -1 : 0);
    const double inf = std::numeric_limits<double>::infinity();
    const double dt_x = dir_e != 0.0 ? cs / std::abs(dir_e) : inf;
    const double dt_y = dir_n != 0.0 ? cs / std::abs(dir_n) : inf;
    double tmax_x = inf, tmax_y = inf;
    if (dir_e != 0.0)
        tmax_x = ((cx + (step_x > 0 ? 1 : 0)) * cs - sx) / dir_e;
    if (dir_n != 0.0)
        tmax_y = ((cy + (step_y > 0 ? 1 : 0)) * cs - sy) / dir_n;

    double t = t0;
    while (true) {
        const double t_next = std::min({tmax_x, tmax_y, t1});
        if (t_next > t)
            cells.push_back({cx, cy});
        if (t_next >= t1)
            break;
        if (tmax_x <= tmax_y) {
            cx += step_x;
            tmax_x += dt_x;
        } else {
            cy += step_y;
            tmax_y += dt_y;
        }
        t = t_next;
        if (cx < 0 || cx >= geometry.width || cy < 0 || cy >= geometry.height)
            break;
    }
    return cells;
}

GridMap measurement_grid(const Scan& scan, const GridGeometry& geometry,
                         const InverseSensorModel& model) {
    if (geometry.width < 1 || geometry.height < 1 || !(geometry.cell_size > 0.0f))
        throw ContractViolation("measurement_grid: degenerate grid geometry");
    validate(scan);

    /* 0 = unknown, 1 = free, 2 = occupied; occupied wins. */
    std::vector<std::uint8_t> state(
        static_cast<std::size_t>(geometry.width) * geometry.height, 0);
    const auto mark = [&](int x, int y, std::uint8_t s) {
        std::uint8_t& cur = state[static_cast<std::size_t>(y) * geometry.width + x];
        cur = std::max(cur, s);
    };

    for (const Beam& b : scan.beams) {
        const double ang = scan.sensor_pose.heading + b.azimuth;
        const double de = std::cos(ang);
        const double dn = std::sin(ang);
        for (const Vec2i& c : traverse_cells(geometry, scan.sensor_pose.east,
                                             scan.sensor_pose.north, de, dn, b.range))
            mark(static_cast<int>(c.east), static_cast<int>(c.north), 1);
        if (b.hit) {
            const double ee = scan.sensor_pose.east + de * b.range;
            const double en = scan.sensor_pose.north + dn * b.range;
            const int hx = static_cast<int>(
                std::floor((ee - geometry.origin_east) / geometry.cell_size));
            const int hy = static_cast<int>(
                std::floor((en - geometry.origin_north) / geometry.cell_size));
            if (hx >= 0 && hx < geometry.width && hy >= 0 && hy < geometry.height)
                mark(hx, hy, 2);
        }
    }

    GridMap out(geometry.width, geometry.height, 1, geometry.cell_size,
                geometry.origin_east, geometry.origin_north, model.p_unknown);
    for (int y = 0; y < geometry.height; ++y)
        for (int x = 0; x < geometry.width; ++x) {
            const std::uint8_t s = state[static_cast<std::size_t>(y) * geometry.width + x];
            if (s == 1)
                out.at(x, y, 0) = model.p_free;
            else if (s == 2)
                out.at(x, y, 0) = model.p_occ;
        }
    return out;
}

} // namespace dogm
