#pragma once

#include <span>

#include "gfmm/types.hpp"

namespace gfmm {

// Threshold ramp: 0 below zero, linear with slope g up to 1, saturated above.
// g controls how fast membership decays outside a box.
double ramp(double z, double g);

// Degree to which the interval sample [xl, xu] belongs to the box [v, w]:
// 1 when fully contained, decaying per the ramp with the worst per-dimension
// overrun. All spans must share one size; gamma holds one slope per
// dimension. Throws std::invalid_argument on size mismatch.
double membership(std::span<const double> xl, std::span<const double> xu,
                  std::span<const double> v, std::span<const double> w,
                  std::span<const double> gamma);

double membership(const Pattern& x, const Hyperbox& b,
                  std::span<const double> gamma);

}  // namespace gfmm
