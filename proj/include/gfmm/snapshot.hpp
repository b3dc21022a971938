#pragma once

#include <string>

#include "gfmm/types.hpp"

namespace gfmm {

// Renders a two-feature model as a standalone SVG: the unit square, every
// box as a class-colored rectangle (points become dots), plus a legend.
// Throws std::invalid_argument for models with any other dimensionality.
std::string snapshot_svg(const TrainedModel& model);

void save_snapshot_svg(const TrainedModel& model, const std::string& path);

}  // namespace gfmm
