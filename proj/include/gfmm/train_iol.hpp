#pragma once

#include <span>

#include "gfmm/train_online.hpp"

namespace gfmm {

// True when the tentative box [vt, wt] would overlap any box in `others`
// (the boxes a grown candidate must avoid: every differently-labeled box,
// or every other box for an unlabeled candidate).
bool would_overlap(std::span<const double> vt, std::span<const double> wt,
                   std::span<const Hyperbox> others);

// Overlap-avoiding incremental training. Per sample: candidates (same label
// or unlabeled) are tried in order of decreasing membership; membership one
// absorbs, otherwise a candidate expands only if the grown box would not
// overlap any box of another class — an expansion that would overlap is
// rejected and the next candidate is tried. When no candidate commits, the
// sample becomes a new box as-is, with no overlap test: freshly created
// boxes may sit inside foreign territory but can never grow there, so no
// contraction step exists in this trainer.
//
// `data` must already live in the unit cube; the returned model carries an
// identity scaler which callers owning a real scaler replace afterwards.
TrainedModel train_iol(std::span<const Pattern> data, const ModelParams& params,
                       const StepObserver& observer = {});

}  // namespace gfmm
