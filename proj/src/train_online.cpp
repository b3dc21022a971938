#include "gfmm/train_online.hpp"

#include <algorithm>

#include "trainer_detail.hpp"

namespace gfmm {

int overlap_case_1d(double vi, double wi, double vk, double wk, double& width) {
  if (vi < vk && vk < wi && wi < wk) {  // i runs into k from the left
    width = wi - vk;
    return 1;
  }
  if (vk < vi && vi < wk && wk < wi) {  // k runs into i from the left
    width = wk - vi;
    return 2;
  }
  if (vi < vk && wk < wi) {  // k's projection strictly inside i's
    width = std::min(wk - vi, wi - vk);
    return 3;
  }
  if (vk < vi && wi < wk) {  // i's projection strictly inside k's
    width = std::min(wi - vk, wk - vi);
    return 4;
  }
  width = 0.0;
  return 0;
}

OverlapReport overlap_test(const Hyperbox& bi, const Hyperbox& bk) {
  if (bi.dims() != bk.dims())
    throw std::invalid_argument("overlap_test: dimension mismatch");
  // delta starts at 1 and only ever shrinks; the dimension that set the
  // final (smallest) value is the one a contraction will operate on. A
  // single clear dimension means the boxes share no volume at all.
  double delta = 1.0;
  int dim = kNoOverlapDim;
  int case_id = 0;
  for (std::size_t j = 0; j < bi.dims(); ++j) {
    double width = 0.0;
    const int c = overlap_case_1d(bi.v[j], bi.w[j], bk.v[j], bk.w[j], width);
    if (c == 0) return OverlapReport{};
    if (width < delta) {
      delta = width;
      dim = static_cast<int>(j);
      case_id = c;
    }
  }
  return OverlapReport{delta, dim, case_id};
}

bool boxes_overlap(std::span<const double> vt, std::span<const double> wt,
                   const Hyperbox& other) {
  for (std::size_t j = 0; j < other.dims(); ++j) {
    const double lo = std::max(vt[j], other.v[j]);
    const double hi = std::min(wt[j], other.w[j]);
    if (lo < hi) continue;  // positive-width intersection on this dimension
    if (lo > hi) return false;  // projections are disjoint
    // The projections meet at a single point. That still counts as an
    // intrusion when the meeting point lies strictly inside one of the two
    // intervals (e.g. a degenerate box sitting in the other's interior), but
    // boxes that merely share a face or corner are legal neighbours.
    const bool inside_tentative = vt[j] < lo && lo < wt[j];
    const bool inside_other = other.v[j] < lo && lo < other.w[j];
    if (!inside_tentative && !inside_other) return false;
  }
  return true;
}

bool expandable(const Hyperbox& b, const Pattern& x, double theta) {
  for (std::size_t j = 0; j < b.dims(); ++j)
    if (std::max(b.w[j], x.upper[j]) - std::min(b.v[j], x.lower[j]) > theta)
      return false;
  return true;
}

void expand(Hyperbox& b, const Pattern& x) {
  for (std::size_t j = 0; j < b.dims(); ++j) {
    b.v[j] = std::min(b.v[j], x.lower[j]);
    b.w[j] = std::max(b.w[j], x.upper[j]);
  }
  if (b.label == kUnlabeled && x.label != kUnlabeled) b.label = x.label;
  record_absorbed_sample(b);
}

void contract(Hyperbox& bi, Hyperbox& bk, const OverlapReport& report) {
  if (report.dim == kNoOverlapDim)
    throw std::invalid_argument("contract: report holds no overlap");
  const int d = report.dim;
  switch (report.case_id) {
    case 1: {  // split the shared band halfway
      const double mid = 0.5 * (bi.w[d] + bk.v[d]);
      bi.w[d] = mid;
      bk.v[d] = mid;
      break;
    }
    case 2: {
      const double mid = 0.5 * (bk.w[d] + bi.v[d]);
      bk.w[d] = mid;
      bi.v[d] = mid;
      break;
    }
    case 3:  // k inside i: pull the i face needing the smaller move
      if (bk.w[d] - bi.v[d] < bi.w[d] - bk.v[d])
        bi.v[d] = bk.w[d];
      else
        bi.w[d] = bk.v[d];
      break;
    case 4:  // i inside k: pull the k face needing the smaller move
      if (bk.w[d] - bi.v[d] < bi.w[d] - bk.v[d])
        bk.w[d] = bi.v[d];
      else
        bk.v[d] = bi.w[d];
      break;
    default:
      throw std::invalid_argument("contract: malformed overlap report");
  }
}

TrainedModel train_online(std::span<const Pattern> data, const ModelParams& params,
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

  for (std::size_t t = 0; t < data.size(); ++t) {
    const Pattern& x = data[t];
    if (x.label != kUnlabeled) model.class_catalog.insert(x.label);

    TrainStep step;
    step.pattern_index = t;

    detail::gather_candidates(boxes, x, params.gamma, candidates);
    bool handled = false;

    if (!candidates.empty() && candidates.front().membership == 1.0) {
      // Already covered; just count the sample.
      const std::size_t i = candidates.front().index;
      record_absorbed_sample(boxes[i]);
      step.box_index = i;
      step.action = TrainStep::Action::absorbed;
      handled = true;
    } else {
      for (const detail::Candidate& cand : candidates) {
        Hyperbox& b = boxes[cand.index];
        if (!expandable(b, x, params.theta)) continue;
        expand(b, x);
        step.box_index = cand.index;
        step.action = TrainStep::Action::expanded;

        // The grown box may now cut into foreign boxes; contract pair by
        // pair, rescanning from the start after each fix, until clean.
        // Boxes only ever shrink here, so resolved pairs stay resolved and
        // the loop terminates.
        bool dirty = true;
        while (dirty) {
          dirty = false;
          for (std::size_t k = 0; k < boxes.size(); ++k) {
            if (k == cand.index) continue;
            if (!detail::is_rival(b.label, boxes[k].label)) continue;
            const OverlapReport report = overlap_test(b, boxes[k]);
            if (report.dim == kNoOverlapDim) continue;
            contract(b, boxes[k], report);
            ++step.contractions;
            dirty = true;
            break;
          }
        }
        handled = true;
        break;
      }
    }

    if (!handled) {
      boxes.push_back(detail::box_from_sample(x));
      step.box_index = boxes.size() - 1;
      step.action = TrainStep::Action::created;
    }
    if (observer) observer(boxes, step);
  }
  return model;
}

}  // namespace gfmm
