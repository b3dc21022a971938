#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "gfmm/rng.hpp"
#include "gfmm/train_iol.hpp"
#include "gfmm/train_online.hpp"
#include "test_support.hpp"

using gfmm::Hyperbox;
using gfmm::kUnlabeled;
using gfmm::ModelParams;
using gfmm::Pattern;
using gfmm::TrainedModel;
using gfmm::train_iol;
using gfmm::TrainStep;
using gfmm::would_overlap;
using test_support::make_box;

TEST_CASE("would_overlap detects simultaneous intersection on every dimension") {
  const std::vector<Hyperbox> others = {make_box({0.2, 0.2}, {0.4, 0.4}, 2)};
  const std::vector<double> v1 = {0.1, 0.1}, w1 = {0.3, 0.3};
  CHECK(would_overlap(v1, w1, others));
  const std::vector<double> v2 = {0.1, 0.1}, w2 = {0.2, 0.2};
  CHECK(!would_overlap(v2, w2, others));  // touching corner only
  CHECK(!would_overlap(v1, w1, {}));

  // Sharing a whole face is legal too: the meet has zero width.
  const std::vector<double> v3 = {0.1, 0.2}, w3 = {0.2, 0.4};
  CHECK(!would_overlap(v3, w3, others));

  // But an aligned edge with positive-width intrusion on every dimension is
  // an overlap even though no endpoint is strictly between the other's.
  const std::vector<double> v4 = {0.2, 0.1}, w4 = {0.4, 0.3};
  CHECK(would_overlap(v4, w4, others));

  // A degenerate (point) box strictly inside the rival blocks as well.
  const std::vector<double> v5 = {0.3, 0.3}, w5 = {0.3, 0.3};
  CHECK(would_overlap(v5, w5, others));
  // ...while a point on the rival's boundary does not.
  const std::vector<double> v6 = {0.2, 0.3}, w6 = {0.2, 0.3};
  CHECK(!would_overlap(v6, w6, others));
}

TEST_CASE("an expansion that would cut into a rival is rejected") {
  // The nearest candidate (A) would swallow the rival B; the farther
  // candidate (C) expands instead and takes the sample.
  const std::vector<Pattern> data = {
      Pattern::interval({0.1, 0.4}, {0.3, 0.5}, 1),    // A
      Pattern::interval({0.31, 0.42}, {0.34, 0.48}, 2),  // B
      Pattern::interval({0.5, 0.4}, {0.7, 0.5}, 1),    // C
      Pattern::point({0.35, 0.45}, 1)};                // D
  const TrainedModel m = train_iol(data, ModelParams::make(0.4, 2));
  REQUIRE(m.boxes.size() == 3);

  const Hyperbox& a = m.boxes[0];
  CHECK(a.v == std::vector<double>{0.1, 0.4});  // untouched
  CHECK(a.w == std::vector<double>{0.3, 0.5});
  CHECK(a.cardinality == 1);

  const Hyperbox& c = m.boxes[2];
  CHECK(std::abs(c.v[0] - 0.35) <= 1e-12);  // grew left to reach D
  CHECK(c.v[1] == 0.4);
  CHECK(c.w == std::vector<double>{0.7, 0.5});
  CHECK(c.cardinality == 2);
}

TEST_CASE("when every candidate is blocked the sample becomes its own box") {
  const std::vector<Pattern> data = {
      Pattern::interval({0.1, 0.1}, {0.3, 0.3}, 1),    // A
      Pattern::interval({0.32, 0.32}, {0.5, 0.5}, 2),  // B blocks A's growth
      Pattern::point({0.45, 0.45}, 1)};
  const TrainedModel m = train_iol(data, ModelParams::make(0.5, 2));
  REQUIRE(m.boxes.size() == 3);
  CHECK(m.boxes[0].w == std::vector<double>{0.3, 0.3});  // A unchanged
  CHECK(m.boxes[2].label == 1);
  CHECK(m.boxes[2].v == std::vector<double>{0.45, 0.45});
  CHECK(m.boxes[2].cardinality == 1);
}

TEST_CASE("full membership absorbs without growth") {
  const std::vector<Pattern> data = {Pattern::interval({0.2, 0.2}, {0.4, 0.4}, 1),
                                     Pattern::point({0.4, 0.4}, 1)};
  const TrainedModel m = train_iol(data, ModelParams::make(0.3, 2));
  REQUIRE(m.boxes.size() == 1);
  CHECK(m.boxes[0].cardinality == 2);
  CHECK(m.boxes[0].w == std::vector<double>{0.4, 0.4});
}

TEST_CASE("interval samples join the store verbatim, overlap or not") {
  // No candidate shares B's class, so B lands inside A unchecked - but can
  // never grow from there.
  const std::vector<Pattern> data = {Pattern::interval({0.1, 0.1}, {0.4, 0.4}, 1),
                                     Pattern::interval({0.2, 0.2}, {0.3, 0.3}, 2)};
  const TrainedModel m = train_iol(data, ModelParams::make(0.4, 2));
  REQUIRE(m.boxes.size() == 2);
  CHECK(m.boxes[1].v == std::vector<double>{0.2, 0.2});
  CHECK(m.boxes[1].w == std::vector<double>{0.3, 0.3});
  CHECK(test_support::referee_boxes_overlap(m.boxes[0], m.boxes[1]));
}

TEST_CASE("boxes only ever grow during training") {
  gfmm::Rng rng(808);
  for (int run = 0; run < 10; ++run) {
    const std::size_t dims = 1 + rng.index(3);
    const auto data = test_support::random_patterns(rng, 150, dims, 3, 0.1);
    std::vector<Hyperbox> previous;
    train_iol(data, ModelParams::make(rng.real(0.1, 0.7), dims),
              [&](const std::vector<Hyperbox>& boxes, const TrainStep&) {
                for (std::size_t i = 0; i < previous.size(); ++i) {
                  for (std::size_t j = 0; j < dims; ++j) {
                    CHECK(boxes[i].v[j] <= previous[i].v[j]);
                    CHECK(boxes[i].w[j] >= previous[i].w[j]);
                  }
                }
                previous = boxes;
              });
  }
}

TEST_CASE("every committed expansion is overlap-free at commit time") {
  gfmm::Rng rng(909);
  std::size_t expansions = 0;
  for (int run = 0; run < 20; ++run) {
    const std::size_t dims = 1 + rng.index(3);
    const auto data = test_support::random_patterns(rng, 150, dims, 3, 0.1);
    train_iol(data, ModelParams::make(rng.real(0.1, 0.7), dims),
              [&](const std::vector<Hyperbox>& boxes, const TrainStep& s) {
                if (s.action != TrainStep::Action::expanded) return;
                ++expansions;
                const Hyperbox& b = boxes[s.box_index];
                for (std::size_t k = 0; k < boxes.size(); ++k) {
                  if (k == s.box_index) continue;
                  if (!test_support::referee_is_rival(b.label, boxes[k].label))
                    continue;
                  CHECK(!test_support::referee_boxes_overlap(b, boxes[k]));
                }
              });
  }
  CHECK(expansions > 100);
}

TEST_CASE("theta zero memorizes distinct point/label pairs") {
  gfmm::Rng rng(1010);
  std::vector<Pattern> data;
  std::set<std::pair<std::vector<double>, int>> distinct;
  for (int i = 0; i < 120; ++i) {
    // A coarse grid forces plenty of exact duplicates.
    std::vector<double> x = {rng.index(5) * 0.2, rng.index(5) * 0.2};
    const int label = 1 + static_cast<int>(rng.index(2));
    distinct.insert({x, label});
    data.push_back(Pattern::point(std::move(x), label));
  }
  const TrainedModel m = train_iol(data, ModelParams::make(0.0, 2));
  CHECK(m.boxes.size() == distinct.size());
  std::uint64_t total = 0;
  for (const Hyperbox& b : m.boxes) total += b.cardinality;
  CHECK(total == data.size());
}

TEST_CASE("interleaved classes cost more boxes without contraction") {
  // Alternating classes along a line: the classic trainer contracts its way
  // through, the overlap-avoiding one must keep boxes small.
  std::vector<Pattern> data;
  for (int i = 0; i < 40; ++i)
    data.push_back(Pattern::point({0.025 * i, 0.5}, 1 + (i % 2)));
  const ModelParams params = ModelParams::make(0.6, 2);
  const TrainedModel iol = train_iol(data, params);
  const TrainedModel onln = gfmm::train_online(data, params);
  CHECK(iol.boxes.size() >= onln.boxes.size());
}

TEST_CASE("training is deterministic in the input order") {
  gfmm::Rng rng(1111);
  const auto data = test_support::random_patterns(rng, 150, 2, 3);
  const TrainedModel a = train_iol(data, ModelParams::make(0.3, 2));
  const TrainedModel b = train_iol(data, ModelParams::make(0.3, 2));
  REQUIRE(a.boxes.size() == b.boxes.size());
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    CHECK(a.boxes[i].v == b.boxes[i].v);
    CHECK(a.boxes[i].w == b.boxes[i].w);
    CHECK(a.boxes[i].label == b.boxes[i].label);
    CHECK(a.boxes[i].cardinality == b.boxes[i].cardinality);
  }
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(train_iol(std::vector<Pattern>{}, ModelParams::make(0.3, 2)),
                  std::invalid_argument);
}
