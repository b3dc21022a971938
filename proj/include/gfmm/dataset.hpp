#pragma once

#include <map>
#include <string>
#include <vector>

#include "gfmm/types.hpp"

namespace gfmm {

// Where the label lives in a CSV file.
inline constexpr int kLabelColumnLast = -1;  // right-most column
inline constexpr int kLabelColumnNone = -2;  // no label column (query data)

// A loaded CSV: numeric feature rows plus (optionally) integer class ids.
struct Dataset {
  std::vector<std::vector<double>> rows;   // features only, label removed
  std::vector<int> labels;                 // empty when loaded without labels
  std::map<int, std::string> label_names;  // id -> original label token

  std::size_t size() const { return rows.size(); }
  std::size_t features() const { return rows.empty() ? 0 : rows.front().size(); }
  bool has_labels() const { return !labels.empty(); }
};

// Reads a CSV file (quoted fields, embedded commas and CRLF line ends are
// handled). Feature cells must parse as numbers. Label tokens that are all
// integers >= 1 are used verbatim as class ids; any other label set (words,
// or numbers including 0, which is reserved for "unlabeled") is mapped to
// ids 1..K in order of first appearance. The mapping is recorded either way.
// Throws DataError on unreadable files, ragged rows or non-numeric features.
Dataset load_csv(const std::string& path, int label_column = kLabelColumnLast,
                 bool has_header = true);

// Raw-unit point patterns for every row (labels attached when present).
std::vector<Pattern> to_patterns(const Dataset& ds);

// Unit-cube point patterns: each row scaled, and clamped when `clamp` is
// set (test data may exceed the training range).
std::vector<Pattern> to_scaled_patterns(const Dataset& ds, const FeatureScaler& scaler,
                                        bool clamp);

}  // namespace gfmm
