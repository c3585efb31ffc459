#pragma once

#include <vector>

#include "dogm/grid.hpp"

namespace dogm {

struct Beam {
    double azimuth = 0.0; // radians, relative to sensor heading
    double range = 0.0;   // meters
    bool hit = false;
};

/* A single-time-step 2D range scan. Azimuths strictly increasing; range
 * equals max_range for misses. */
struct Scan {
    Pose2 sensor_pose;
    std::vector<Beam> beams;
    double max_range = 0.0;
};

void validate(const Scan& scan);

struct GridGeometry {
    int width = 0;
    int height = 0;
    float cell_size = 0.0f;
    double origin_east = 0.0;
    double origin_north = 0.0;
};

struct InverseSensorModel {
    float p_occ = 0.85f;
    float p_free = 0.15f;
    float p_unknown = 0.5f;
};

/* Convert one scan into a measurement grid: cells traversed by a beam
 * before its endpoint become p_free, hit cells p_occ, untouched cells stay
 * at the unknown prior. Occupied evidence wins over free. Beams are clipped
 * to the grid, so a sensor outside the grid is accepted. */
GridMap measurement_grid(const Scan& scan, const GridGeometry& geometry,
                         const InverseSensorModel& model = {});

/* Cells whose interior the segment from `start` toward `dir` (unit) crosses
 * within [0, length], in visiting order, restricted to the grid window.
 * Incremental boundary-crossing walk; exposed for the traversal oracle. */
std::vector<Vec2i> traverse_cells(const GridGeometry& geometry,
                                  double start_e, double start_n,
                                  double dir_e, double dir_n, double length);

} // namespace dogm
