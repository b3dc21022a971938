#include "gfmm/train_iol.hpp"

#include <vector>

#include "trainer_detail.hpp"

namespace gfmm {

bool would_overlap(std::span<const double> vt, std::span<const double> wt,
                   std::span<const Hyperbox> others) {
  for (const Hyperbox& o : others)
    if (boxes_overlap(vt, wt, o)) return true;
  return false;
}

TrainedModel train_iol(std::span<const Pattern> data, const ModelParams& params,
                       const StepObserver& observer) {
  if (data.empty()) throw std::invalid_argument("no training data");
  TrainedModel model;
  model.params = params;

  const std::size_t dims = data.front().dims();
  params.validate(dims);
  detail::validate_training_data(data, dims);
  model.scaler = FeatureScaler::identity(dims);

  std::vector<Hyperbox>& boxes = model.boxes;
  std::vector<detail::Candidate> candidates;
  std::vector<double> vt(dims), wt(dims);  // tentative grown corners

  for (std::size_t t = 0; t < data.size(); ++t) {
    const Pattern& x = data[t];
    if (x.label != kUnlabeled) model.class_catalog.insert(x.label);

    TrainStep step;
    step.pattern_index = t;

    detail::gather_candidates(boxes, x, params.gamma, candidates);
    bool handled = false;

    for (const detail::Candidate& cand : candidates) {
      Hyperbox& b = boxes[cand.index];
      if (cand.membership == 1.0) {
        record_absorbed_sample(b);
        step.box_index = cand.index;
        step.action = TrainStep::Action::absorbed;
        handled = true;
        break;
      }
      if (!expandable(b, x, params.theta)) continue;

      for (std::size_t j = 0; j < dims; ++j) {
        vt[j] = std::min(b.v[j], x.lower[j]);
        wt[j] = std::max(b.w[j], x.upper[j]);
      }
      // Expansion commits only when the grown box stays clear of every
      // rival; otherwise this candidate is passed over and the next one
      // gets its chance.
      bool blocked = false;
      for (std::size_t k = 0; k < boxes.size() && !blocked; ++k) {
        if (k == cand.index) continue;
        if (!detail::is_rival(b.label, boxes[k].label)) continue;
        blocked = boxes_overlap(vt, wt, boxes[k]);
      }
      if (blocked) continue;

      b.v = vt;
      b.w = wt;
      if (b.label == kUnlabeled && x.label != kUnlabeled) b.label = x.label;
      record_absorbed_sample(b);
      step.box_index = cand.index;
      step.action = TrainStep::Action::expanded;
      handled = true;
      break;
    }

    if (!handled) {
      // No candidate could take the sample: it becomes a box verbatim, with
      // no overlap check — it may lie inside foreign territory (noise often
      // does) but, trapped, it can never grow from there.
      boxes.push_back(detail::box_from_sample(x));
      step.box_index = boxes.size() - 1;
      step.action = TrainStep::Action::created;
    }
    if (observer) observer(boxes, step);
  }
  return model;
}

}  // namespace gfmm
