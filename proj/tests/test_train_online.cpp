#include <cmath>
#include <vector>

#include "doctest.h"
#include "gfmm/rng.hpp"
#include "gfmm/train_online.hpp"
#include "test_support.hpp"

using gfmm::Hyperbox;
using gfmm::kUnlabeled;
using gfmm::ModelParams;
using gfmm::Pattern;
using gfmm::TrainedModel;
using gfmm::train_online;
using gfmm::TrainStep;

TEST_CASE("a single sample becomes a single box") {
  const TrainedModel m =
      train_online(std::vector<Pattern>{Pattern::point({0.2, 0.3}, 1)},
                   ModelParams::make(0.3, 2));
  REQUIRE(m.boxes.size() == 1);
  CHECK(m.boxes[0].v == std::vector<double>{0.2, 0.3});
  CHECK(m.boxes[0].w == std::vector<double>{0.2, 0.3});
  CHECK(m.boxes[0].label == 1);
  CHECK(m.boxes[0].cardinality == 1);
  CHECK(m.class_catalog == std::set<int>{1});
}

TEST_CASE("two close same-class samples merge into one box") {
  const std::vector<Pattern> data = {Pattern::point({0.2, 0.2}, 1),
                                     Pattern::point({0.4, 0.3}, 1)};
  const TrainedModel m = train_online(data, ModelParams::make(0.3, 2));
  REQUIRE(m.boxes.size() == 1);
  CHECK(m.boxes[0].v == std::vector<double>{0.2, 0.2});
  CHECK(m.boxes[0].w == std::vector<double>{0.4, 0.3});
  CHECK(m.boxes[0].cardinality == 2);
}

TEST_CASE("a contained sample is absorbed without growth") {
  const std::vector<Pattern> data = {Pattern::point({0.2, 0.2}, 1),
                                     Pattern::point({0.4, 0.4}, 1),
                                     Pattern::point({0.3, 0.3}, 1)};
  std::vector<TrainStep::Action> actions;
  const TrainedModel m =
      train_online(data, ModelParams::make(0.3, 2),
                   [&](const std::vector<Hyperbox>&, const TrainStep& s) {
                     actions.push_back(s.action);
                   });
  REQUIRE(m.boxes.size() == 1);
  CHECK(m.boxes[0].cardinality == 3);
  CHECK(m.boxes[0].v == std::vector<double>{0.2, 0.2});
  CHECK(m.boxes[0].w == std::vector<double>{0.4, 0.4});
  REQUIRE(actions.size() == 3);
  CHECK(actions[2] == TrainStep::Action::absorbed);
}

TEST_CASE("a sample beyond theta opens a second box") {
  const std::vector<Pattern> data = {Pattern::point({0.1, 0.1}, 1),
                                     Pattern::point({0.9, 0.9}, 1)};
  const TrainedModel m = train_online(data, ModelParams::make(0.3, 2));
  CHECK(m.boxes.size() == 2);
}

TEST_CASE("an unlabeled box adopts the label of the sample that grows it") {
  const std::vector<Pattern> data = {Pattern::point({0.2, 0.2}, kUnlabeled),
                                     Pattern::point({0.3, 0.3}, 2)};
  const TrainedModel m = train_online(data, ModelParams::make(0.3, 2));
  REQUIRE(m.boxes.size() == 1);
  CHECK(m.boxes[0].label == 2);
  CHECK(m.boxes[0].cardinality == 2);
}

TEST_CASE("an unlabeled sample may join any box") {
  const std::vector<Pattern> data = {Pattern::point({0.2, 0.2}, 1),
                                     Pattern::point({0.25, 0.25}, kUnlabeled)};
  const TrainedModel m = train_online(data, ModelParams::make(0.3, 2));
  REQUIRE(m.boxes.size() == 1);
  CHECK(m.boxes[0].label == 1);
  CHECK(m.boxes[0].cardinality == 2);
}

TEST_CASE("an expansion into foreign territory is contracted away") {
  // A red box grows first; a blue box then expands across its lower edge.
  // The overlap is resolved on dimension 1: the two candidate face moves tie
  // exactly (coordinates are dyadic, so the widths compare exactly), and the
  // tie rule moves the red box's floor up to the blue ceiling.
  const std::vector<Pattern> data = {
      Pattern::point({0.125, 0.125}, 1), Pattern::point({0.375, 0.375}, 1),
      Pattern::point({0.1875, 0.25}, 2), Pattern::point({0.4375, 0.25}, 2)};
  std::vector<std::size_t> contractions;
  const TrainedModel m =
      train_online(data, ModelParams::make(0.3, 2),
                   [&](const std::vector<Hyperbox>&, const TrainStep& s) {
                     contractions.push_back(s.contractions);
                   });
  REQUIRE(m.boxes.size() == 2);

  const Hyperbox& red = m.boxes[0];
  CHECK(red.label == 1);
  CHECK(red.v[0] == 0.125);
  CHECK(red.v[1] == 0.25);  // floor pushed up by the contraction
  CHECK(red.w[0] == 0.375);
  CHECK(red.w[1] == 0.375);
  CHECK(red.cardinality == 2);

  const Hyperbox& blue = m.boxes[1];
  CHECK(blue.label == 2);
  CHECK(blue.v[0] == 0.1875);
  CHECK(blue.w[0] == 0.4375);
  CHECK(blue.v[1] == 0.25);
  CHECK(blue.w[1] == 0.25);
  CHECK(blue.cardinality == 2);

  CHECK(contractions == std::vector<std::size_t>{0, 0, 0, 1});
}

TEST_CASE("after every step the four-case test clears every rival pair") {
  gfmm::Rng rng(505);
  for (int run = 0; run < 20; ++run) {
    const std::size_t dims = 1 + rng.index(3);
    const auto data = test_support::random_patterns(rng, 120, dims, 3, 0.1);
    const double theta = rng.real(0.1, 0.7);
    std::size_t checked = 0;
    train_online(data, ModelParams::make(theta, dims),
                 [&](const std::vector<Hyperbox>& boxes, const TrainStep& s) {
                   // Only expansions get the overlap treatment; created boxes
                   // may start inside foreign territory by design. Contraction
                   // repairs exactly what overlap_test can name, so that is
                   // the invariant the trainer guarantees after each step.
                   if (s.action != TrainStep::Action::expanded) return;
                   const Hyperbox& b = boxes[s.box_index];
                   for (std::size_t k = 0; k < boxes.size(); ++k) {
                     if (k == s.box_index) continue;
                     if (!test_support::referee_is_rival(b.label, boxes[k].label))
                       continue;
                     CHECK(gfmm::overlap_test(b, boxes[k]).dim == gfmm::kNoOverlapDim);
                     ++checked;
                   }
                 });
    CHECK(checked > 0);
  }
}

TEST_CASE("box coordinates always satisfy v <= w and cardinalities add up") {
  gfmm::Rng rng(606);
  const auto data = test_support::random_patterns(rng, 200, 3, 3, 0.05);
  const TrainedModel m = train_online(data, ModelParams::make(0.25, 3));
  std::uint64_t total = 0;
  for (const Hyperbox& b : m.boxes) {
    for (std::size_t j = 0; j < b.dims(); ++j) CHECK(b.v[j] <= b.w[j]);
    total += b.cardinality;
  }
  CHECK(total == data.size());
}

TEST_CASE("training is deterministic in the input order") {
  gfmm::Rng rng(707);
  const auto data = test_support::random_patterns(rng, 150, 2, 3);
  const TrainedModel a = train_online(data, ModelParams::make(0.3, 2));
  const TrainedModel b = train_online(data, ModelParams::make(0.3, 2));
  REQUIRE(a.boxes.size() == b.boxes.size());
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    CHECK(a.boxes[i].v == b.boxes[i].v);
    CHECK(a.boxes[i].w == b.boxes[i].w);
    CHECK(a.boxes[i].label == b.boxes[i].label);
    CHECK(a.boxes[i].cardinality == b.boxes[i].cardinality);
  }
}

TEST_CASE("empty and inconsistent training data are rejected") {
  CHECK_THROWS_AS(train_online(std::vector<Pattern>{}, ModelParams::make(0.3, 2)),
                  std::invalid_argument);
  const std::vector<Pattern> ragged = {Pattern::point({0.1, 0.2}, 1),
                                       Pattern::point({0.1}, 1)};
  CHECK_THROWS_AS(train_online(ragged, ModelParams::make(0.3, 2)),
                  std::invalid_argument);
  const std::vector<Pattern> outside = {Pattern::point({1.4, 0.2}, 1)};
  CHECK_THROWS_AS(train_online(outside, ModelParams::make(0.3, 2)),
                  std::invalid_argument);
}
