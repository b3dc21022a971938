#include "gfmm/types.hpp"

#include <algorithm>
#include <cmath>

namespace gfmm {

ModelParams ModelParams::make(double theta, std::size_t dims, double gamma) {
  ModelParams p;
  p.theta = theta;
  p.gamma.assign(dims, gamma);
  return p;
}

void ModelParams::validate(std::size_t dims) const {
  if (!(theta >= 0.0) || theta > 1.0)
    throw std::invalid_argument("theta must lie in [0, 1]");
  if (gamma.size() != dims)
    throw std::invalid_argument("gamma must have one entry per feature");
  for (double g : gamma)
    if (!(g > 0.0) || !std::isfinite(g))
      throw std::invalid_argument("gamma entries must be positive and finite");
}

FeatureScaler FeatureScaler::identity(std::size_t dims) {
  FeatureScaler s;
  s.lo_.assign(dims, 0.0);
  s.hi_.assign(dims, 1.0);
  return s;
}

FeatureScaler FeatureScaler::from_bounds(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size())
    throw std::invalid_argument("scaler bounds must have equal length");
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (hi[j] < lo[j])
      throw std::invalid_argument("scaler max must not fall below min");
  FeatureScaler s;
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

double FeatureScaler::scale(double value, std::size_t j) const {
  double span = hi_[j] - lo_[j];
  if (span == 0.0) return 0.5;  // constant feature: park mid-cube
  return (value - lo_[j]) / span;
}

double FeatureScaler::unscale(double value, std::size_t j) const {
  return lo_[j] + value * (hi_[j] - lo_[j]);
}

std::vector<double> FeatureScaler::scale_row(const std::vector<double>& raw) const {
  if (raw.size() != dims())
    throw std::invalid_argument("row width does not match the scaler");
  std::vector<double> out(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) out[j] = scale(raw[j], j);
  return out;
}

FeatureScaler fit_scaler(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DataError("cannot fit a scaler on zero rows");
  const std::size_t n = rows.front().size();
  std::vector<double> lo = rows.front();
  std::vector<double> hi = rows.front();
  for (const auto& row : rows) {
    if (row.size() != n) throw DataError("rows of unequal width");
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = std::min(lo[j], row[j]);
      hi[j] = std::max(hi[j], row[j]);
    }
  }
  return FeatureScaler::from_bounds(std::move(lo), std::move(hi));
}

Pattern clamp_to_unit(Pattern p) {
  auto clamp01 = [](double x) { return std::min(1.0, std::max(0.0, x)); };
  for (double& x : p.lower) x = clamp01(x);
  for (double& x : p.upper) x = clamp01(x);
  return p;
}

std::string TrainedModel::class_name(int label) const {
  auto it = class_names.find(label);
  if (it != class_names.end()) return it->second;
  return std::to_string(label);
}

Pattern into_model_space(const TrainedModel& model, const Pattern& raw) {
  if (raw.dims() != model.dims())
    throw std::invalid_argument("query width does not match the model");
  Pattern scaled;
  scaled.label = raw.label;
  scaled.lower = model.scaler.scale_row(raw.lower);
  scaled.upper = model.scaler.scale_row(raw.upper);
  return clamp_to_unit(std::move(scaled));
}

}  // namespace gfmm
