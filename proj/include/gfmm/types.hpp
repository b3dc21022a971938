#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfmm {

// Class id reserved for samples and hyperboxes that carry no label (yet).
// Real classes always use ids >= 1.
inline constexpr int kUnlabeled = 0;

// Raised for malformed input files, unusable datasets and corrupt models.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a model file declares a format version this build cannot read.
class FormatVersionError : public DataError {
 public:
  using DataError::DataError;
};

// One sample: an axis-aligned interval [lower, upper] in the unit hypercube.
// Point samples have lower == upper; interval samples are genuine boxes.
struct Pattern {
  std::vector<double> lower;
  std::vector<double> upper;
  int label = kUnlabeled;

  std::size_t dims() const { return lower.size(); }

  static Pattern point(std::vector<double> x, int label = kUnlabeled) {
    Pattern p;
    p.upper = x;
    p.lower = std::move(x);
    p.label = label;
    return p;
  }

  static Pattern interval(std::vector<double> lo, std::vector<double> hi,
                          int label = kUnlabeled) {
    Pattern p;
    p.lower = std::move(lo);
    p.upper = std::move(hi);
    p.label = label;
    return p;
  }
};

// An axis-aligned box [v, w] with a class label and the count of training
// samples it has accumulated.
struct Hyperbox {
  std::vector<double> v;  // minimum corner
  std::vector<double> w;  // maximum corner
  int label = kUnlabeled;
  std::uint64_t cardinality = 1;

  std::size_t dims() const { return v.size(); }
};

// Records one absorbed training sample on a box. Both trainers funnel every
// cardinality update through here so the counting policy lives in one place:
// a box starts at 1 when created from a sample, and gains 1 whenever it
// absorbs (membership one) or expands over a later sample.
inline void record_absorbed_sample(Hyperbox& b) { ++b.cardinality; }

// Training knobs: maximum box extent theta and per-dimension membership
// sensitivity gamma.
struct ModelParams {
  double theta = 0.3;
  std::vector<double> gamma;  // one entry per feature, all > 0

  static ModelParams make(double theta, std::size_t dims, double gamma = 1.0);

  // Throws std::invalid_argument when theta is outside [0, 1] (theta == 0 is
  // legal: boxes may not grow at all) or gamma does not fit `dims`.
  void validate(std::size_t dims) const;
};

// Per-feature affine map from raw units into [0, 1], fitted on training
// data and carried inside the model so queries can arrive in raw units.
class FeatureScaler {
 public:
  FeatureScaler() = default;

  static FeatureScaler identity(std::size_t dims);

  std::size_t dims() const { return lo_.size(); }
  bool empty() const { return lo_.empty(); }
  const std::vector<double>& feature_min() const { return lo_; }
  const std::vector<double>& feature_max() const { return hi_; }

  // Scales one raw value for feature j. Constant features (min == max) map
  // to 0.5 so they carry no information but stay inside the cube.
  double scale(double value, std::size_t j) const;
  // Inverse map; for constant features every scaled value returns the
  // constant.
  double unscale(double value, std::size_t j) const;

  std::vector<double> scale_row(const std::vector<double>& raw) const;

  static FeatureScaler from_bounds(std::vector<double> lo, std::vector<double> hi);

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

// Fits min/max bounds over a set of raw rows. All rows must share one width;
// throws DataError on an empty input.
FeatureScaler fit_scaler(const std::vector<std::vector<double>>& rows);

// Clamps both corners of a pattern into [0, 1] per dimension. Applied to
// validation/test samples that fall outside the training range.
Pattern clamp_to_unit(Pattern p);

// The trained classifier: boxes in creation order plus everything needed to
// score raw queries.
struct TrainedModel {
  std::vector<Hyperbox> boxes;
  ModelParams params;
  FeatureScaler scaler;
  std::set<int> class_catalog;             // real classes only, never kUnlabeled
  std::map<int, std::string> class_names;  // id -> original label token

  std::size_t dims() const {
    return boxes.empty() ? scaler.dims() : boxes.front().dims();
  }

  // Name for a class id; falls back to the number itself when the model
  // carries no decode table.
  std::string class_name(int label) const;
};

// Scales a raw-unit pattern through the model's scaler and clamps it into
// the unit cube. The label is carried through untouched.
Pattern into_model_space(const TrainedModel& model, const Pattern& raw);

}  // namespace gfmm
