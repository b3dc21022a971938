#include "gfmm/dataset.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gfmm {

namespace {

// Splits CSV text into records. Quoted fields may hold commas, doubled
// quotes and line breaks; records end at LF, CRLF or CR.
std::vector<std::vector<std::string>> split_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;  // whether the current record has any content

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    if (field_started || !record.empty()) {
      end_field();
      records.push_back(std::move(record));
      record.clear();
    }
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;  // a comma implies a following (maybe empty) field
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  end_record();  // final record without trailing newline
  return records;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return s.substr(b, e - b);
}

bool parse_number(const std::string& token, double& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && errno != ERANGE;
}

// Integer >= 1 (usable verbatim as a class id)?
bool parse_verbatim_id(const std::string& token, int& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  std::size_t i = t[0] == '+' ? 1 : 0;
  if (i == t.size()) return false;
  long value = 0;
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') return false;
    value = value * 10 + (t[i] - '0');
    if (value > 1000000000) return false;
  }
  if (value < 1) return false;
  out = static_cast<int>(value);
  return true;
}

}  // namespace

Dataset load_csv(const std::string& path, int label_column, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  if (text.size() >= 3 && text.compare(0, 3, "\xef\xbb\xbf") == 0)
    text.erase(0, 3);  // UTF-8 byte-order mark

  std::vector<std::vector<std::string>> records = split_records(text);
  std::size_t first_row = 0;
  if (has_header && !records.empty()) first_row = 1;
  if (records.size() <= first_row)
    throw DataError("'" + path + "' holds no data rows");

  const std::size_t cols = records[first_row].size();
  std::size_t label_index = cols;  // one past the end = no label
  if (label_column == kLabelColumnLast) {
    label_index = cols - 1;
  } else if (label_column != kLabelColumnNone) {
    if (label_column < 0 || static_cast<std::size_t>(label_column) >= cols)
      throw std::invalid_argument("label column index out of range");
    label_index = static_cast<std::size_t>(label_column);
  }
  const bool labeled = label_index < cols;
  if (cols == 0 || (labeled && cols == 1))
    throw DataError("'" + path + "' has no feature columns");

  Dataset ds;
  ds.rows.reserve(records.size() - first_row);
  std::vector<std::string> tokens;  // label token per row
  for (std::size_t r = first_row; r < records.size(); ++r) {
    const auto& record = records[r];
    if (record.size() != cols) {
      throw DataError("'" + path + "' row " + std::to_string(r + 1) + " has " +
                      std::to_string(record.size()) + " cells, expected " +
                      std::to_string(cols));
    }
    std::vector<double> row;
    row.reserve(cols - (labeled ? 1 : 0));
    for (std::size_t c = 0; c < cols; ++c) {
      if (c == label_index) {
        tokens.push_back(trim(record[c]));
        continue;
      }
      double value = 0.0;
      if (!parse_number(record[c], value)) {
        throw DataError("'" + path + "' row " + std::to_string(r + 1) + " column " +
                        std::to_string(c + 1) + ": '" + record[c] +
                        "' is not numeric");
      }
      row.push_back(value);
    }
    ds.rows.push_back(std::move(row));
  }

  if (labeled) {
    // Tokens that are all integers >= 1 become ids verbatim; anything else
    // (words, zeros, negatives, floats) is mapped to 1..K by first
    // appearance. Id 0 stays reserved for "unlabeled".
    bool verbatim = true;
    std::vector<int> verbatim_ids(tokens.size());
    for (std::size_t i = 0; i < tokens.size() && verbatim; ++i)
      verbatim = parse_verbatim_id(tokens[i], verbatim_ids[i]);

    ds.labels.resize(tokens.size());
    if (verbatim) {
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        ds.labels[i] = verbatim_ids[i];
        ds.label_names.emplace(verbatim_ids[i], std::to_string(verbatim_ids[i]));
      }
    } else {
      std::map<std::string, int> seen;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto [it, inserted] =
            seen.emplace(tokens[i], static_cast<int>(seen.size()) + 1);
        ds.labels[i] = it->second;
        if (inserted) ds.label_names.emplace(it->second, tokens[i]);
      }
    }
  }
  return ds;
}

std::vector<Pattern> to_patterns(const Dataset& ds) {
  std::vector<Pattern> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i)
    out.push_back(Pattern::point(ds.rows[i], ds.has_labels() ? ds.labels[i] : kUnlabeled));
  return out;
}

std::vector<Pattern> to_scaled_patterns(const Dataset& ds, const FeatureScaler& scaler,
                                        bool clamp) {
  std::vector<Pattern> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Pattern p = Pattern::point(scaler.scale_row(ds.rows[i]),
                               ds.has_labels() ? ds.labels[i] : kUnlabeled);
    if (clamp) p = clamp_to_unit(std::move(p));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace gfmm
