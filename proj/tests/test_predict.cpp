#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "gfmm/membership.hpp"
#include "gfmm/predict.hpp"
#include "test_support.hpp"

using gfmm::class_scores;
using gfmm::ClassScores;
using gfmm::Hyperbox;
using gfmm::Pattern;
using gfmm::predict;
using gfmm::predict_scores;
using gfmm::TieEntry;
using gfmm::TieStrategy;
using gfmm::TrainedModel;
using test_support::make_box;
using test_support::make_model;

TEST_CASE("a contained query scores one for its class") {
  const TrainedModel m = make_model({make_box({0.2, 0.2}, {0.4, 0.4}, 1)}, 2);
  const ClassScores s = class_scores(Pattern::point({0.3, 0.3}), m);
  CHECK(s.scores.at(1) == 1.0);
  CHECK(s.b_win == 1.0);
  CHECK(s.winner == 1);
  CHECK(!s.tie_broken);
  REQUIRE(s.winners.size() == 1);
  CHECK(s.winners[0].box_index == 0);
}

TEST_CASE("the strictly best class wins without a tie") {
  const TrainedModel m = make_model(
      {make_box({0.1}, {0.3}, 1), make_box({0.8}, {0.9}, 2)}, 1);
  const ClassScores s = class_scores(Pattern::point({0.4}), m);  // 0.9 vs 0.6
  CHECK(std::abs(s.scores.at(1) - 0.9) <= 1e-12);
  CHECK(std::abs(s.scores.at(2) - 0.6) <= 1e-12);
  CHECK(s.winner == 1);
  CHECK(!s.tie_broken);
}

TEST_CASE("per-class score is the max over that class's boxes") {
  const TrainedModel m = make_model({make_box({0.1}, {0.2}, 1),
                                     make_box({0.6}, {0.7}, 1),
                                     make_box({0.8}, {0.9}, 2)},
                                    1);
  const ClassScores s = class_scores(Pattern::point({0.55}), m);
  CHECK(std::abs(s.scores.at(1) - 0.95) <= 1e-12);  // nearer box of class 1
}

TEST_CASE("unlabeled boxes never win") {
  const TrainedModel m = make_model({make_box({0.4, 0.4}, {0.6, 0.6}, 0),
                                     make_box({0.0, 0.0}, {0.1, 0.1}, 1)},
                                    2);
  const ClassScores s = class_scores(Pattern::point({0.5, 0.5}), m);
  CHECK(s.winner == 1);  // despite membership 1 in the unlabeled box
  CHECK(s.scores.count(0) == 0);
}

TEST_CASE("a model without labeled boxes cannot predict") {
  const TrainedModel m = make_model({make_box({0.1}, {0.2}, 0)}, 1);
  CHECK_THROWS_AS(class_scores(Pattern::point({0.5}), m), std::invalid_argument);
}

TEST_CASE("cardinality vote weighs sample counts by membership") {
  // Both boxes sit 0.4 away from the query: memberships tie at 0.6.
  const TrainedModel m = make_model(
      {make_box({0.0}, {0.1}, 1, 3), make_box({0.9}, {1.0}, 2, 1)}, 1);
  const ClassScores s =
      predict_scores(Pattern::point({0.5}), m, TieStrategy::cardinality);
  CHECK(s.tie_broken);
  CHECK(s.winner == 1);
  REQUIRE(s.tie_probabilities.has_value());
  CHECK(std::abs(s.tie_probabilities->at(1) - 0.75) <= 1e-12);
  CHECK(std::abs(s.tie_probabilities->at(2) - 0.25) <= 1e-12);
}

TEST_CASE("an exact hit on a memorized sample outranks the vote") {
  // Query on the shared face: membership 1 in both boxes; the single-sample
  // box wins outright despite the other side's heavier mass.
  const TrainedModel m = make_model(
      {make_box({0.0}, {0.5}, 1, 5), make_box({0.5}, {1.0}, 2, 1)}, 1);
  CHECK(predict(Pattern::point({0.5}), m, TieStrategy::cardinality) == 2);
}

TEST_CASE("several memorized winners: first created wins") {
  const TrainedModel m = make_model(
      {make_box({0.0}, {0.5}, 1, 1), make_box({0.5}, {1.0}, 2, 1)}, 1);
  CHECK(predict(Pattern::point({0.5}), m, TieStrategy::cardinality) == 1);
}

TEST_CASE("a zero-mass tie falls back to uniform probabilities") {
  // gamma 10 pushes both memberships to exactly 0.
  const TrainedModel m = make_model(
      {make_box({0.0}, {0.05}, 2, 4), make_box({0.95}, {1.0}, 1, 9)}, 1, 10.0);
  const ClassScores s =
      predict_scores(Pattern::point({0.5}), m, TieStrategy::cardinality);
  CHECK(s.b_win == 0.0);
  CHECK(s.winner == 1);  // smallest class id
  REQUIRE(s.tie_probabilities.has_value());
  CHECK(std::abs(s.tie_probabilities->at(1) - 0.5) <= 1e-12);
  CHECK(std::abs(s.tie_probabilities->at(2) - 0.5) <= 1e-12);
}

TEST_CASE("tie probabilities are normalized and scale-invariant") {
  std::vector<Hyperbox> boxes = {make_box({0.0}, {0.1}, 1, 3),
                                 make_box({0.9}, {1.0}, 2, 1),
                                 make_box({0.85}, {0.95}, 3, 7)};
  std::vector<TieEntry> winners;
  for (std::size_t i = 0; i < boxes.size(); ++i)
    winners.push_back({&boxes[i], 0.5 + 0.1 * i, i});

  std::map<int, double> probs;
  const int pick = gfmm::tie_break_cardinality(winners, &probs);
  double total = 0.0;
  for (const auto& [cls, p] : probs) total += p;
  CHECK(std::abs(total - 1.0) <= 1e-9);

  // Scaling every cardinality by 20 changes nothing.
  for (Hyperbox& b : boxes) b.cardinality *= 20;
  std::map<int, double> scaled;
  CHECK(gfmm::tie_break_cardinality(winners, &scaled) == pick);
  for (const auto& [cls, p] : probs)
    CHECK(std::abs(scaled.at(cls) - p) <= 1e-9);
}

TEST_CASE("manhattan vote picks the nearer centroid") {
  // Centroids 0.4 and 0.45; the query midpoint 0.5 is nearer to 0.45.
  const TrainedModel m = make_model(
      {make_box({0.3}, {0.5}, 1), make_box({0.4}, {0.5}, 2)}, 1);
  CHECK(predict(Pattern::point({0.5}), m, TieStrategy::manhattan) == 2);
}

TEST_CASE("manhattan vote: zero distance wins outright") {
  const TrainedModel m = make_model(
      {make_box({0.3}, {0.6}, 1), make_box({0.35}, {0.45}, 2)}, 1);
  // Query at 0.4: contained in both, essentially at the second centroid.
  CHECK(predict(Pattern::point({0.4}), m, TieStrategy::manhattan) == 2);
}

TEST_CASE("manhattan vote: equidistant winners go to the earlier box") {
  // Dyadic coordinates make the centroids and distances exact: 0.375 and
  // 0.625 are both 0.125 from the query at the shared face.
  const TrainedModel m = make_model(
      {make_box({0.25}, {0.5}, 1), make_box({0.5}, {0.75}, 2)}, 1);
  CHECK(predict(Pattern::point({0.5}), m, TieStrategy::manhattan) == 1);
}

TEST_CASE("manhattan vote uses the interval midpoint") {
  const TrainedModel m = make_model(
      {make_box({0.0}, {0.5}, 1), make_box({0.5}, {1.0}, 2)}, 1);
  // Pattern [0.375, 0.625]: midpoint 0.5, memberships tie at 0.875, and the
  // centroids 0.25 / 0.75 are exactly equidistant -> first box.
  CHECK(predict(Pattern::interval({0.375}, {0.625}), m, TieStrategy::manhattan) ==
        1);
}

TEST_CASE("random vote is seeded and fair") {
  const TrainedModel m = make_model(
      {make_box({0.0}, {0.5}, 1, 2), make_box({0.5}, {1.0}, 2, 2)}, 1);
  const Pattern q = Pattern::point({0.5});

  SUBCASE("one distinct class needs no randomness") {
    const TrainedModel solo = make_model(
        {make_box({0.0}, {0.5}, 1), make_box({0.4}, {0.9}, 1)}, 1);
    for (std::uint64_t seed = 0; seed < 8; ++seed)
      CHECK(predict(Pattern::point({0.45}), solo, TieStrategy::random, seed) == 1);
  }

  SUBCASE("a fixed seed fixes the outcome") {
    for (std::uint64_t seed = 0; seed < 16; ++seed)
      CHECK(predict(q, m, TieStrategy::random, seed) ==
            predict(q, m, TieStrategy::random, seed));
  }

  SUBCASE("across seeds both classes appear about equally") {
    int ones = 0;
    const int draws = 10000;
    for (int seed = 0; seed < draws; ++seed)
      ones += predict(q, m, TieStrategy::random, seed) == 1;
    CHECK(ones > 4700);
    CHECK(ones < 5300);
  }
}

TEST_CASE("memberships within the epsilon count as tied") {
  const TrainedModel near_tie = make_model(
      {make_box({0.0}, {0.1}, 1, 9), make_box({0.9 + 1e-13}, {1.0}, 2, 1)}, 1);
  // Class 2's membership trails by 1e-13: still a tie, and the cardinality
  // vote then prefers the heavier class-1 box.
  const ClassScores s =
      predict_scores(Pattern::point({0.5}), near_tie, TieStrategy::cardinality);
  CHECK(s.tie_broken);
  CHECK(s.winner == 1);

  const TrainedModel clear = make_model(
      {make_box({0.0}, {0.1}, 1, 9), make_box({0.91}, {1.0}, 2, 1)}, 1);
  const ClassScores t =
      predict_scores(Pattern::point({0.5}), clear, TieStrategy::cardinality);
  CHECK(!t.tie_broken);
  CHECK(t.winner == 1);
}

TEST_CASE("adding a weaker box never flips the winner") {
  gfmm::Rng rng(1212);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Hyperbox> boxes = {make_box({0.1, 0.1}, {0.3, 0.3}, 1, 2),
                                   make_box({0.6, 0.6}, {0.8, 0.8}, 2, 3)};
    const Pattern q =
        Pattern::point({rng.real(0.05, 0.95), rng.real(0.05, 0.95)});
    const TrainedModel base = make_model(boxes, 2);
    const ClassScores before = predict_scores(q, base, TieStrategy::cardinality);

    // A remote sliver whose membership cannot reach b_win.
    boxes.push_back(make_box({0.0, 0.95}, {0.02, 1.0}, 3, 50));
    const TrainedModel grown = make_model(boxes, 2);
    const ClassScores after = predict_scores(q, grown, TieStrategy::cardinality);
    if (gfmm::membership(q, grown.boxes[2], grown.params.gamma) <
        before.b_win - 1e-12) {
      CHECK(after.winner == before.winner);
    }
  }
}

TEST_CASE("all strategies agree inside a single box") {
  const TrainedModel m = make_model({make_box({0.2, 0.2}, {0.4, 0.4}, 2),
                                     make_box({0.7, 0.7}, {0.9, 0.9}, 1)},
                                    2);
  const Pattern q = Pattern::point({0.3, 0.3});
  CHECK(predict(q, m, TieStrategy::cardinality) == 2);
  CHECK(predict(q, m, TieStrategy::manhattan) == 2);
  CHECK(predict(q, m, TieStrategy::random, 4) == 2);
}

TEST_CASE("dimension mismatch is rejected") {
  const TrainedModel m = make_model({make_box({0.1}, {0.2}, 1)}, 1);
  CHECK_THROWS_AS(class_scores(Pattern::point({0.1, 0.2}), m),
                  std::invalid_argument);
}
