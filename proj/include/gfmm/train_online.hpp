#pragma once

#include <functional>
#include <span>

#include "gfmm/types.hpp"

namespace gfmm {

// Sentinel for "the boxes do not overlap".
inline constexpr int kNoOverlapDim = -1;

// Result of the four-case overlap scan between two boxes: the smallest
// per-dimension overlap width, the first dimension attaining it, and which
// of the four interval cases fired there. dim == kNoOverlapDim exactly when
// some dimension has disjoint (or merely touching) projections, i.e. the
// boxes share no volume that the four cases recognise.
struct OverlapReport {
  double delta = 1.0;       // smallest overlap width; meaningful when dim != kNoOverlapDim
  int dim = kNoOverlapDim;  // dimension to contract
  int case_id = 0;          // 1..4, the case that fired on `dim`
};

// Classifies the relative position of projections [vi, wi] and [vk, wk] on
// one dimension. Returns the case number 1..4 and stores the overlap width,
// or returns 0 (width 0) when the projections are disjoint or only share an
// endpoint. All comparisons are strict where the cases demand it: boxes that
// touch along a face do not count as overlapping.
//
//   case 1: vi < vk < wi < wk       partial, i enters k from the left
//   case 2: vk < vi < wk < wi       partial, k enters i from the left
//   case 3: vi < vk <= wk < wi      k's projection inside i's
//   case 4: vk < vi <= wi < wk      i's projection inside k's
int overlap_case_1d(double vi, double wi, double vk, double wk, double& width);

// Full overlap scan of bi against bk (order matters for the case ids).
OverlapReport overlap_test(const Hyperbox& bi, const Hyperbox& bk);

// True when box [vt, wt] intersects `other` on every dimension at once: a
// positive-width intersection on each dimension, where a zero-width meet
// counts only if the meeting point lies strictly inside one of the two
// intervals. Boxes that merely share a face or a corner are not overlapping.
// This is the expansion gate of the overlap-avoiding trainer; the classic
// online trainer instead expands first and repairs with overlap_test +
// contract, whose four cases pin down which contraction applies.
bool boxes_overlap(std::span<const double> vt, std::span<const double> wt,
                   const Hyperbox& other);

// Can box b grow over sample x without any side exceeding theta?
bool expandable(const Hyperbox& b, const Pattern& x, double theta);

// Grows b to cover x (min of the lower corners, max of the upper corners)
// and counts the absorbed sample. An unlabeled box adopts the label of a
// labeled sample.
void expand(Hyperbox& b, const Pattern& x);

// Resolves the overlap described by `report` by adjusting bi and/or bk on
// report.dim only. Afterwards the two projections on that dimension at most
// touch, so the pair no longer overlaps.
void contract(Hyperbox& bi, Hyperbox& bk, const OverlapReport& report);

// What happened to one training sample.
struct TrainStep {
  enum class Action { created, absorbed, expanded };
  std::size_t pattern_index = 0;
  std::size_t box_index = 0;
  Action action = Action::created;
  std::size_t contractions = 0;  // overlap resolutions run after an expansion
};

// Optional per-sample observer: called after each sample is fully processed
// with the current box list. Lets tests and tools audit every intermediate
// state without hooking into trainer internals.
using StepObserver =
    std::function<void(const std::vector<Hyperbox>&, const TrainStep&)>;

// Classic incremental training. Per sample: find candidate boxes (same
// label or unlabeled), try them in order of decreasing membership, absorb
// on membership one, otherwise expand the first candidate that stays within
// theta, then test the grown box against boxes of other classes and contract
// away any overlap. A sample no candidate can take becomes a new box.
//
// `data` must already live in the unit cube; the returned model carries an
// identity scaler which callers owning a real scaler replace afterwards.
TrainedModel train_online(std::span<const Pattern> data, const ModelParams& params,
                          const StepObserver& observer = {});

}  // namespace gfmm
