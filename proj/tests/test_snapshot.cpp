// SVG snapshots of two-feature models: rectangles for real boxes, dots for
// degenerate ones, one legend row per class — and a clean refusal elsewhere.
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "gfmm/snapshot.hpp"
#include "gfmm/types.hpp"
#include "test_support.hpp"

using gfmm::kUnlabeled;
using gfmm::save_snapshot_svg;
using gfmm::snapshot_svg;
using gfmm::TrainedModel;
using test_support::make_box;
using test_support::make_model;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

}  // namespace

TEST_CASE("a two-class model renders boxes, a dot and a legend") {
  TrainedModel model = make_model(
      {
          make_box({0.1, 0.1}, {0.4, 0.3}, 1, 5),   // a real rectangle
          make_box({0.6, 0.6}, {0.9, 0.9}, 2, 3),   // another
          make_box({0.5, 0.5}, {0.5, 0.5}, 1, 1),   // a point box -> dot
          make_box({0.2, 0.7}, {0.25, 0.8}, kUnlabeled, 1),
      },
      2);
  const std::string svg = snapshot_svg(model);

  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Background + unit frame + 3 box rects + 2 legend swatches = 7 <rect.
  CHECK(count_occurrences(svg, "<rect") == 7);
  CHECK(count_occurrences(svg, "<circle") == 1);  // the point box
  CHECK(count_occurrences(svg, "<text") == 2);    // one legend row per class
  CHECK(svg.find("class 1") != std::string::npos);
  CHECK(svg.find("class 2") != std::string::npos);
  CHECK(svg.find("#999999") != std::string::npos);  // unlabeled box in grey
  // Tooltips report cardinalities.
  CHECK(svg.find("n=5") != std::string::npos);
}

TEST_CASE("named classes appear by name in the legend") {
  TrainedModel model = make_model({make_box({0.1, 0.1}, {0.4, 0.4}, 1, 2)}, 2);
  model.class_names[1] = "survived";
  const std::string svg = snapshot_svg(model);
  CHECK(svg.find("class survived") != std::string::npos);
}

TEST_CASE("snapshots refuse any dimensionality but two") {
  const TrainedModel one = make_model({make_box({0.1}, {0.4}, 1)}, 1);
  CHECK_THROWS_AS((void)snapshot_svg(one), std::invalid_argument);
  const TrainedModel three =
      make_model({make_box({0.1, 0.1, 0.1}, {0.4, 0.4, 0.4}, 1)}, 3);
  CHECK_THROWS_AS((void)snapshot_svg(three), std::invalid_argument);
}

TEST_CASE("save_snapshot_svg writes the same bytes to disk") {
  const TrainedModel model =
      make_model({make_box({0.2, 0.2}, {0.7, 0.6}, 1, 4)}, 2);
  const std::string path = test_support::temp_path("snap", ".svg");
  save_snapshot_svg(model, path);

  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == snapshot_svg(model));

  CHECK_THROWS_AS(save_snapshot_svg(model, "/nonexistent/dir/out.svg"),
                  gfmm::DataError);
}
