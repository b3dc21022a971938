#include "trainer_detail.hpp"

namespace gfmm::detail {

void gather_candidates(const std::vector<Hyperbox>& boxes, const Pattern& x,
                       std::span<const double> gamma, std::vector<Candidate>& out) {
  out.clear();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (is_candidate(boxes[i].label, x.label))
      out.push_back({i, membership(x, boxes[i], gamma)});
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.membership > b.membership;
  });
}

}  // namespace gfmm::detail
