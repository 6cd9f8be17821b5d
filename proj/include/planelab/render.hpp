#pragma once

#include <string>

#include "planelab/polarity.hpp"

namespace planelab {

inline const char* tool_version() { return "planelab 0.1.0"; }

struct RenderSpec {
    PlaneModel plane;
    double xmin = -3, xmax = 3, ymin = -3, ymax = 3;
    int slope_count = 9;     // non-vertical slopes sampled
    int intercept_count = 5; // intercepts per slope
    int vertical_count = 5;
    int samples_per_line = 256;
    std::string overlay_polarity; // empty for none
    std::string out_path;
};

// Deterministic SVG of a flat plane's line family with an optional unital
// overlay. Throws parameter_error for planes of carrier dimension > 1.
void render_svg(const RenderSpec& spec);

// Unital sample export per the JSON/CSV schema; n = 0 writes an empty array.
void export_unital_samples(const Polarity& pol, int n, std::uint64_t seed,
                           const std::string& format, const std::string& path);

// Sampled incident point-line pairs of a plane.
void export_plane_incidences(const PlaneModel& plane, int n, std::uint64_t seed,
                             const std::string& format, const std::string& path);

// write-to-temp-then-rename; surfaces I/O failures as std::runtime_error
void atomic_write(const std::string& path, const std::string& content);

} // namespace planelab
