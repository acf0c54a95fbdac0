#pragma once

#include <filesystem>

#include "rovtrack/simulation.hpp"

namespace rovtrack {

// Six stacked per-DOF panels, actual output solid and reference dashed.
void write_timeseries_svg(const SimLog& log, const std::filesystem::path& path);

// Planar projection of the tracked path; axes pick eta components (0=X, 1=Y, 2=Z).
void write_path_svg(const SimLog& log, int ax, int ay, const std::filesystem::path& path);

}  // namespace rovtrack
