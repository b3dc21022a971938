#include "gfmm/predict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gfmm/membership.hpp"
#include "gfmm/rng.hpp"

namespace gfmm {

namespace {

// Winner entries for the tie-break calls, in creation order.
std::vector<TieEntry> to_entries(const TrainedModel& model,
                                 const std::vector<WinnerBox>& winners) {
  std::vector<TieEntry> entries;
  entries.reserve(winners.size());
  for (const WinnerBox& wb : winners)
    entries.push_back({&model.boxes[wb.box_index], wb.membership, wb.box_index});
  return entries;
}

}  // namespace

ClassScores class_scores(const Pattern& x, const TrainedModel& model) {
  if (x.dims() != model.dims())
    throw std::invalid_argument("class_scores: query width does not match the model");

  ClassScores out;
  for (int c : model.class_catalog) out.scores[c] = 0.0;

  bool any_labeled = false;
  std::vector<double> memberships(model.boxes.size(), 0.0);
  for (std::size_t i = 0; i < model.boxes.size(); ++i) {
    const Hyperbox& b = model.boxes[i];
    if (b.label == kUnlabeled) continue;  // no class to vote for
    any_labeled = true;
    const double m = membership(x, b, model.params.gamma);
    memberships[i] = m;
    auto [it, inserted] = out.scores.try_emplace(b.label, m);
    if (!inserted) it->second = std::max(it->second, m);
    out.b_win = std::max(out.b_win, m);
  }
  if (!any_labeled)
    throw std::invalid_argument("class_scores: model has no labeled boxes");

  std::set<int> tied_classes;
  for (std::size_t i = 0; i < model.boxes.size(); ++i) {
    const Hyperbox& b = model.boxes[i];
    if (b.label == kUnlabeled) continue;
    if (std::abs(memberships[i] - out.b_win) < kTieEpsilon) {
      out.winners.push_back({i, memberships[i]});
      tied_classes.insert(b.label);
    }
  }
  out.winner = *tied_classes.begin();  // smallest id until a strategy decides
  out.tie_broken = tied_classes.size() > 1;
  return out;
}

int tie_break_cardinality(std::span<const TieEntry> winners,
                          std::map<int, double>* probabilities) {
  if (winners.empty())
    throw std::invalid_argument("tie_break_cardinality: empty winner set");

  // Exact hit on a memorized sample: a winner with full membership and a
  // single absorbed sample decides on its own.
  bool full = false;
  for (const TieEntry& e : winners) full = full || e.membership == 1.0;
  if (full) {
    for (const TieEntry& e : winners) {  // creation order
      if (e.box->cardinality == 1) {
        if (probabilities) probabilities->clear();
        return e.box->label;
      }
    }
  }

  // Normalized membership-weighted sample mass per class.
  std::map<int, double> mass;
  double total = 0.0;
  for (const TieEntry& e : winners) {
    const double m = static_cast<double>(e.box->cardinality) * e.membership;
    mass[e.box->label] += m;
    total += m;
  }

  int best = winners.front().box->label;
  if (total > 0.0) {
    // Summation order perturbs equal masses by an ulp, so compare shares
    // with a whisker of slack: classes whose shares differ only by rounding
    // noise count as tied and the smallest id wins (map order), keeping the
    // answer stable under rescaled cardinalities.
    constexpr double kShareSlack = 1e-12;
    double best_mass = -1.0;
    for (auto& [label, m] : mass) {
      m /= total;
      if (m > best_mass * (1.0 + kShareSlack)) {
        best_mass = m;
        best = label;
      }
    }
  } else {
    // All memberships zero: no evidence to weigh, fall back to the smallest
    // class id among the winners for a deterministic answer.
    for (auto& [label, m] : mass) m = 1.0 / static_cast<double>(mass.size());
    best = mass.begin()->first;
  }
  if (probabilities) *probabilities = std::move(mass);
  return best;
}

int tie_break_manhattan(const Pattern& x, std::span<const TieEntry> winners) {
  if (winners.empty())
    throw std::invalid_argument("tie_break_manhattan: empty winner set");

  // Distance from the query's midpoint to each winner's centre; first
  // creation wins a distance tie.
  int best = winners.front().box->label;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const TieEntry& e : winners) {
    double dist = 0.0;
    for (std::size_t j = 0; j < e.box->dims(); ++j) {
      const double mid = 0.5 * (x.lower[j] + x.upper[j]);
      const double centre = 0.5 * (e.box->v[j] + e.box->w[j]);
      dist += std::abs(mid - centre);
    }
    if (dist < best_dist) {
      best_dist = dist;
      best = e.box->label;
    }
  }
  return best;
}

int tie_break_random(std::span<const TieEntry> winners, std::uint64_t seed) {
  if (winners.empty())
    throw std::invalid_argument("tie_break_random: empty winner set");
  std::set<int> classes;
  for (const TieEntry& e : winners) classes.insert(e.box->label);
  Rng rng(seed);
  std::size_t pick = rng.index(classes.size());
  auto it = classes.begin();
  std::advance(it, static_cast<long>(pick));
  return *it;
}

ClassScores predict_scores(const Pattern& x, const TrainedModel& model,
                           TieStrategy strategy, std::uint64_t seed) {
  ClassScores s = class_scores(x, model);
  if (!s.tie_broken) return s;

  const std::vector<TieEntry> entries = to_entries(model, s.winners);
  switch (strategy) {
    case TieStrategy::cardinality: {
      std::map<int, double> probs;
      s.winner = tie_break_cardinality(entries, &probs);
      s.tie_probabilities = std::move(probs);
      break;
    }
    case TieStrategy::manhattan:
      s.winner = tie_break_manhattan(x, entries);
      break;
    case TieStrategy::random:
      s.winner = tie_break_random(entries, seed);
      break;
  }
  return s;
}

int predict(const Pattern& x, const TrainedModel& model, TieStrategy strategy,
            std::uint64_t seed) {
  return predict_scores(x, model, strategy, seed).winner;
}

}  // namespace gfmm
