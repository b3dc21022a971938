#include "gfmm/refine.hpp"

#include <algorithm>
#include <cmath>

#include "gfmm/membership.hpp"
#include "gfmm/rng.hpp"
#include "gfmm/train_iol.hpp"

namespace gfmm {

TrainedModel prune(const TrainedModel& model, std::span<const Pattern> validation,
                   double threshold) {
  if (!(threshold >= 0.0) || threshold > 1.0)
    throw std::invalid_argument("prune: threshold must lie in [0, 1]");
  if (validation.empty())
    throw std::invalid_argument("prune: validation data is empty");
  if (model.boxes.empty()) return model;

  struct WinRecord {
    std::uint64_t wins = 0;
    std::uint64_t correct = 0;
  };
  std::vector<WinRecord> record(model.boxes.size());
  std::vector<double> memberships(model.boxes.size());

  for (const Pattern& raw : validation) {
    const Pattern x = into_model_space(model, raw);
    double top = 0.0;
    for (std::size_t i = 0; i < model.boxes.size(); ++i) {
      memberships[i] = membership(x, model.boxes[i], model.params.gamma);
      top = std::max(top, memberships[i]);
    }
    // Every box attaining the top membership wins the sample; ties charge
    // all of them.
    for (std::size_t i = 0; i < model.boxes.size(); ++i) {
      if (std::abs(memberships[i] - top) < kTieEpsilon) {
        record[i].wins += 1;
        if (model.boxes[i].label == raw.label) record[i].correct += 1;
      }
    }
  }

  TrainedModel pruned = model;
  pruned.boxes.clear();
  for (std::size_t i = 0; i < model.boxes.size(); ++i) {
    const WinRecord& r = record[i];
    const bool keep =
        r.wins == 0 ||
        static_cast<double>(r.correct) / static_cast<double>(r.wins) >= threshold;
    if (keep) pruned.boxes.push_back(model.boxes[i]);
  }
  // A filter that wipes out the whole model filtered nothing useful.
  if (pruned.boxes.empty()) return model;
  return pruned;
}

EnsembleModel train_ensemble(std::span<const Pattern> data, const ModelParams& params,
                             std::span<const std::uint64_t> seeds) {
  if (seeds.empty())
    throw std::invalid_argument("train_ensemble: at least one member required");

  EnsembleModel ensemble;
  ensemble.seeds.assign(seeds.begin(), seeds.end());
  ensemble.members.reserve(seeds.size());

  std::vector<std::size_t> order(data.size());
  std::vector<Pattern> shuffled(data.size());
  for (std::uint64_t seed : seeds) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);
    for (std::size_t i = 0; i < order.size(); ++i) shuffled[i] = data[order[i]];
    ensemble.members.push_back(train_iol(shuffled, params));
  }
  return ensemble;
}

EnsembleModel train_ensemble(std::span<const Pattern> data, const ModelParams& params,
                             std::size_t members, std::uint64_t master_seed) {
  std::vector<std::uint64_t> seeds(members);
  for (std::size_t i = 0; i < members; ++i) seeds[i] = mix_seed(master_seed, i);
  return train_ensemble(data, params, seeds);
}

int predict_ensemble(const Pattern& x, const EnsembleModel& ensemble,
                     TieStrategy strategy, std::uint64_t seed) {
  if (ensemble.members.empty())
    throw std::invalid_argument("predict_ensemble: empty ensemble");

  // One vote per member; collect each member's winner-set evidence so a
  // vote tie can be settled by accumulated sample mass.
  std::map<int, std::size_t> votes;
  std::map<int, double> evidence;  // class -> sum of cardinality * membership
  for (const TrainedModel& member : ensemble.members) {
    // The seed passes through unchanged, so a one-member committee answers
    // exactly like predict() under every strategy, random included.
    const ClassScores s = predict_scores(x, member, strategy, seed);
    votes[s.winner] += 1;
    for (const WinnerBox& wb : s.winners) {
      const Hyperbox& b = member.boxes[wb.box_index];
      evidence[b.label] += static_cast<double>(b.cardinality) * wb.membership;
    }
  }

  std::size_t top_votes = 0;
  for (const auto& [label, count] : votes) top_votes = std::max(top_votes, count);

  int best = 0;
  double best_evidence = -1.0;
  for (const auto& [label, count] : votes) {
    if (count != top_votes) continue;
    const auto it = evidence.find(label);
    const double e = it == evidence.end() ? 0.0 : it->second;
    if (e > best_evidence) {  // map order: equal evidence keeps the smaller id
      best_evidence = e;
      best = label;
    }
  }
  return best;
}

}  // namespace gfmm
