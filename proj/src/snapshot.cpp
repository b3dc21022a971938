#include "gfmm/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <map>

namespace gfmm {

namespace {

// Colorblind-friendly cycle for class fills; unlabeled boxes render grey.
const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                          "#ff7f00", "#a65628", "#f781bf", "#17becf"};
constexpr int kPaletteSize = 8;
constexpr double kPlot = 560.0;    // drawing area for the unit square
constexpr double kMargin = 40.0;

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

// Unit coordinates -> pixel coordinates (y flipped: SVG grows downward).
double px(double x) { return kMargin + x * kPlot; }
double py(double y) { return kMargin + (1.0 - y) * kPlot; }

}  // namespace

std::string snapshot_svg(const TrainedModel& model) {
  if (model.dims() != 2)
    throw std::invalid_argument("snapshot_svg: only two-feature models can be drawn");

  std::map<int, const char*> colors;
  int next = 0;
  for (int c : model.class_catalog) colors[c] = kPalette[next++ % kPaletteSize];

  const double width = kPlot + 2 * kMargin;
  const double legend_rows = static_cast<double>(model.class_catalog.size());
  const double height = kPlot + 2 * kMargin + 22.0 * legend_rows + 10.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " +
         fmt(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // The unit square every box lives in.
  svg += "<rect x=\"" + fmt(px(0)) + "\" y=\"" + fmt(py(1)) + "\" width=\"" +
         fmt(kPlot) + "\" height=\"" + fmt(kPlot) +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  for (std::size_t i = 0; i < model.boxes.size(); ++i) {
    const Hyperbox& b = model.boxes[i];
    const char* color = b.label == kUnlabeled ? "#999999" : colors[b.label];
    const std::string title = "box " + std::to_string(i) + ": class " +
                              model.class_name(b.label) + ", n=" +
                              std::to_string(b.cardinality);
    const double w = (b.w[0] - b.v[0]) * kPlot;
    const double h = (b.w[1] - b.v[1]) * kPlot;
    if (w < 1.0 && h < 1.0) {
      // Degenerate box: draw a dot so single samples stay visible.
      svg += "<circle cx=\"" + fmt(px(b.v[0])) + "\" cy=\"" + fmt(py(b.v[1])) +
             "\" r=\"3\" fill=\"" + color + "\"><title>" + title +
             "</title></circle>\n";
    } else {
      svg += "<rect x=\"" + fmt(px(b.v[0])) + "\" y=\"" + fmt(py(b.w[1])) +
             "\" width=\"" + fmt(w < 1.0 ? 1.0 : w) + "\" height=\"" +
             fmt(h < 1.0 ? 1.0 : h) + "\" fill=\"" + color +
             "\" fill-opacity=\"0.30\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"><title>" + title + "</title></rect>\n";
    }
  }

  double ly = kPlot + 2 * kMargin;
  for (int c : model.class_catalog) {
    svg += "<rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(ly) +
           "\" width=\"14\" height=\"14\" fill=\"" + std::string(colors[c]) +
           "\" fill-opacity=\"0.6\" stroke=\"" + colors[c] + "\"/>\n";
    svg += "<text x=\"" + fmt(kMargin + 20) + "\" y=\"" + fmt(ly + 12) +
           "\" font-family=\"sans-serif\" font-size=\"13\">class " +
           model.class_name(c) + "</text>\n";
    ly += 22.0;
  }
  svg += "</svg>\n";
  return svg;
}

void save_snapshot_svg(const TrainedModel& model, const std::string& path) {
  const std::string svg = snapshot_svg(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << svg;
  if (!out) throw DataError("failed while writing '" + path + "'");
}

}  // namespace gfmm
