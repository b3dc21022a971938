#pragma once

// Internals shared by the two trainers: input validation and candidate
// selection. Not part of the public headers.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "gfmm/membership.hpp"
#include "gfmm/types.hpp"

namespace gfmm::detail {

// A box eligible to take a sample: same class, or either side unlabeled.
inline bool is_candidate(int box_label, int sample_label) {
  return box_label == kUnlabeled || sample_label == kUnlabeled ||
         box_label == sample_label;
}

// A box the grown box must stay clear of / be contracted against. A labeled
// box competes with every differently-labeled box; an unlabeled box
// competes with everyone.
inline bool is_rival(int grown_label, int other_label) {
  if (grown_label == kUnlabeled) return true;
  return other_label != kUnlabeled && other_label != grown_label;
}

struct Candidate {
  std::size_t index = 0;
  double membership = 0.0;
};

// Candidates for `x` sorted by decreasing membership; equal memberships
// keep creation order (stable sort over boxes walked in creation order).
// Compiled once (trainer_detail.cpp) so both trainers share the exact same
// code for this dominant piece of per-sample work.
void gather_candidates(const std::vector<Hyperbox>& boxes, const Pattern& x,
                       std::span<const double> gamma, std::vector<Candidate>& out);

// Rejects training data that is not a clean unit-cube interval set.
inline void validate_training_data(std::span<const Pattern> data, std::size_t dims) {
  for (const Pattern& x : data) {
    if (x.lower.size() != dims || x.upper.size() != dims)
      throw std::invalid_argument("training sample width mismatch");
    for (std::size_t j = 0; j < dims; ++j) {
      const double lo = x.lower[j], hi = x.upper[j];
      if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("training sample has non-finite values");
      if (lo < 0.0 || hi > 1.0 || lo > hi)
        throw std::invalid_argument(
            "training samples must be intervals inside the unit cube");
    }
    if (x.label < 0) throw std::invalid_argument("negative class id");
  }
}

inline Hyperbox box_from_sample(const Pattern& x) {
  Hyperbox b;
  b.v = x.lower;
  b.w = x.upper;
  b.label = x.label;
  b.cardinality = 1;
  return b;
}

}  // namespace gfmm::detail
