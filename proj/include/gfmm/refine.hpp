#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gfmm/predict.hpp"
#include "gfmm/types.hpp"

namespace gfmm {

// Removes boxes that win validation samples badly. A box "wins" a sample
// when it attains the sample's maximal membership over all boxes (every
// tied box is charged). Boxes with wins whose correct-win share falls below
// `threshold` are dropped; boxes that never win are kept — silence is not
// evidence of harm. If the filter would remove every box the model is
// returned unpruned. Validation patterns arrive in raw units and go through
// the model's scaler. Throws std::invalid_argument when the validation set
// is empty or the threshold falls outside [0, 1].
TrainedModel prune(const TrainedModel& model, std::span<const Pattern> validation,
                   double threshold = 0.5);

// A committee of independently trained models plus the shuffle seeds that
// built them (kept for provenance and reproducibility).
struct EnsembleModel {
  std::vector<TrainedModel> members;
  std::vector<std::uint64_t> seeds;

  std::size_t dims() const { return members.empty() ? 0 : members.front().dims(); }
};

// Trains `seeds.size()` overlap-avoiding members, each on its own seeded
// shuffle of `data` (data already in the unit cube, as for the trainers).
EnsembleModel train_ensemble(std::span<const Pattern> data, const ModelParams& params,
                             std::span<const std::uint64_t> seeds);

// Convenience: derives one seed per member from a master seed.
EnsembleModel train_ensemble(std::span<const Pattern> data, const ModelParams& params,
                             std::size_t members, std::uint64_t master_seed);

// Majority vote over the members' predictions. A vote tie is broken by the
// summed membership-weighted cardinality each tied class collected across
// all members' winner sets, then by smallest class id. With one member this
// degenerates to that member's predict().
int predict_ensemble(const Pattern& x, const EnsembleModel& ensemble,
                     TieStrategy strategy = TieStrategy::cardinality,
                     std::uint64_t seed = 0);

}  // namespace gfmm
