#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gfmm/types.hpp"

namespace gfmm {

// How to decide when several classes reach the same top membership.
enum class TieStrategy { cardinality, manhattan, random };

// Two memberships within this distance count as equal when collecting the
// winner set.
inline constexpr double kTieEpsilon = 1e-12;

// One box from the winner set (all boxes attaining the top membership).
struct WinnerBox {
  std::size_t box_index = 0;  // creation index in the model
  double membership = 0.0;
};

// Per-class activation for one query plus everything a tie-break needs.
struct ClassScores {
  std::map<int, double> scores;    // class id -> max membership over its boxes
  double b_win = 0.0;              // top membership over all labeled boxes
  int winner = kUnlabeled;         // winning class (smallest id until a
                                   // strategy resolves a genuine tie)
  bool tie_broken = false;         // true when >= 2 classes attain b_win
  std::vector<WinnerBox> winners;  // boxes attaining b_win, creation order
  // Filled by the cardinality strategy when it actually runs: the
  // normalized per-class vote mass among the winner set.
  std::optional<std::map<int, double>> tie_probabilities;
};

// Scores a unit-cube query against every labeled box. Unlabeled boxes never
// win. Classes with no remaining boxes score 0. Throws std::invalid_argument
// when the model has no labeled boxes or dimensions disagree.
ClassScores class_scores(const Pattern& x, const TrainedModel& model);

// Everything a tie-break needs to know about one winning box.
struct TieEntry {
  const Hyperbox* box = nullptr;
  double membership = 0.0;
  std::size_t creation_index = 0;
};

// Cardinality vote: each class's probability is the membership-weighted
// share of sample counts inside the winner set; the largest share wins.
// Shares apart by no more than rounding noise count as equal and the
// smallest class id wins them. Exception: when the top membership
// is exactly 1 and a single-sample box is among the winners, that box's
// class is returned directly (first such box in creation order) — an exact
// hit on a memorized sample outranks the vote. `probabilities`, when given,
// receives the normalized shares (empty for the exact-hit path).
int tie_break_cardinality(std::span<const TieEntry> winners,
                          std::map<int, double>* probabilities = nullptr);

// Nearest-centroid vote: the winner whose box centre is closest to the
// query's midpoint in L1 distance; earliest creation index on equal
// distance.
int tie_break_manhattan(const Pattern& x, std::span<const TieEntry> winners);

// Uniform draw over the distinct classes in the winner set.
int tie_break_random(std::span<const TieEntry> winners, std::uint64_t seed);

// Full prediction for a unit-cube query: class with the top membership,
// ties resolved by the chosen strategy. `seed` only matters for
// TieStrategy::random.
int predict(const Pattern& x, const TrainedModel& model,
            TieStrategy strategy = TieStrategy::cardinality,
            std::uint64_t seed = 0);

// Like predict() but returns the full score breakdown (winner resolved,
// tie_probabilities filled when the cardinality vote ran).
ClassScores predict_scores(const Pattern& x, const TrainedModel& model,
                           TieStrategy strategy = TieStrategy::cardinality,
                           std::uint64_t seed = 0);

}  // namespace gfmm
