#include "gfmm/membership.hpp"

#include <algorithm>

namespace gfmm {

double ramp(double z, double g) {
  const double zg = z * g;
  if (zg > 1.0) return 1.0;
  if (zg < 0.0) return 0.0;
  return zg;
}

double membership(std::span<const double> xl, std::span<const double> xu,
                  std::span<const double> v, std::span<const double> w,
                  std::span<const double> gamma) {
  const std::size_t n = xl.size();
  if (xu.size() != n || v.size() != n || w.size() != n || gamma.size() != n)
    throw std::invalid_argument("membership: dimension mismatch");

  // Worst per-dimension fit: each side contributes 1 minus the ramped
  // overrun past the box face on that side.
  double worst = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double above = 1.0 - ramp(xu[j] - w[j], gamma[j]);
    const double below = 1.0 - ramp(v[j] - xl[j], gamma[j]);
    worst = std::min(worst, std::min(above, below));
    if (worst == 0.0) break;  // cannot recover
  }
  return worst;
}

double membership(const Pattern& x, const Hyperbox& b,
                  std::span<const double> gamma) {
  return membership(x.lower, x.upper, b.v, b.w, gamma);
}

}  // namespace gfmm
