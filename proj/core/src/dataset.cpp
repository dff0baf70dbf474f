#include "adasvm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "adasvm/errors.hpp"
#include "adasvm/rng.hpp"
#include "adasvm/serialization.hpp"

namespace adasvm {

namespace {

// Substream tags; part of the pinned reproducibility contract.
constexpr std::uint64_t kFoldTagBase = 0;      // + class index
constexpr std::uint64_t kFractionTagBase = 16; // + class index

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);  // from_chars rejects '+'
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string format_double(double v) {
  char buf[64];
  // shortest round-trip representation
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::size_t> class_indices(const Dataset& data, int label) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (data.labels[i] == label) out.push_back(i);
  }
  return out;
}

}  // namespace

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.name = name;
  out.mapping = mapping;
  out.features = Matrix(rows.size(), features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto src = features.row(rows[r]);
    std::copy(src.begin(), src.end(), out.features.row(r).begin());
    out.labels.push_back(labels[rows[r]]);
  }
  return out;
}

std::size_t Dataset::count_label(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void validate(const Dataset& data) {
  if (data.features.rows() == 0 || data.features.cols() == 0) {
    throw std::invalid_argument("dataset must have at least one sample and one feature");
  }
  if (data.labels.size() != data.features.rows()) {
    throw std::invalid_argument("label count does not match sample count");
  }
  for (int y : data.labels) {
    if (y != -1 && y != +1) throw std::invalid_argument("labels must be -1 or +1");
  }
  for (std::size_t i = 0; i < data.features.rows(); ++i) {
    for (double v : data.features.row(i)) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
    }
  }
}

std::pair<std::vector<int>, LabelMapping> normalize_labels(const std::vector<double>& raw) {
  std::set<double> distinct(raw.begin(), raw.end());
  if (distinct.size() < 2) {
    throw std::invalid_argument("labels contain one class only; need exactly two");
  }
  if (distinct.size() > 2) {
    throw std::invalid_argument("labels contain " + std::to_string(distinct.size()) +
                                " classes; need exactly two");
  }
  LabelMapping mapping{*distinct.begin(), *std::next(distinct.begin())};
  std::vector<int> labels;
  labels.reserve(raw.size());
  for (double v : raw) labels.push_back(v == mapping.raw_negative ? -1 : +1);
  return {std::move(labels), mapping};
}

Dataset parse_libsvm(std::string_view text) {
  auto lines = split_lines(text);
  std::vector<double> raw_labels;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::size_t max_index = 0;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    auto tokens = split_ws(lines[li]);
    if (tokens.empty()) continue;
    const std::size_t line_no = li + 1;

    double label;
    if (!parse_double(tokens[0], label)) {
      throw ParseError(line_no, "malformed label '" + std::string(tokens[0]) + "'");
    }
    std::vector<std::pair<std::size_t, double>> row;
    std::size_t prev_index = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      auto colon = tokens[t].find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected index:value, got '" + std::string(tokens[t]) + "'");
      }
      std::size_t index = 0;
      auto idx_sv = tokens[t].substr(0, colon);
      auto [ptr, ec] = std::from_chars(idx_sv.data(), idx_sv.data() + idx_sv.size(), index);
      if (ec != std::errc() || ptr != idx_sv.data() + idx_sv.size() || index == 0) {
        throw ParseError(line_no, "malformed feature index '" + std::string(idx_sv) + "'");
      }
      if (index == prev_index) {
        throw ParseError(line_no, "duplicate feature index " + std::to_string(index));
      }
      if (index < prev_index) {
        throw ParseError(line_no, "feature indices not strictly increasing");
      }
      double value;
      if (!parse_double(tokens[t].substr(colon + 1), value)) {
        throw ParseError(line_no,
                         "non-numeric feature value '" + std::string(tokens[t].substr(colon + 1)) + "'");
      }
      if (!std::isfinite(value)) {
        throw ParseError(line_no, "non-finite feature value");
      }
      prev_index = index;
      row.emplace_back(index, value);
    }
    raw_labels.push_back(label);
    rows.push_back(std::move(row));
    if (prev_index > max_index) max_index = prev_index;
  }

  if (rows.empty()) throw ParseError(0, "empty dataset");
  if (max_index == 0) throw ParseError(0, "dataset has no features");

  Dataset data;
  data.features = Matrix(rows.size(), max_index);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto [index, value] : rows[r]) data.features(r, index - 1) = value;
  }
  auto [labels, mapping] = normalize_labels(raw_labels);
  data.labels = std::move(labels);
  data.mapping = mapping;
  return data;
}

std::string serialize_libsvm(const Dataset& data) {
  std::string out;
  for (std::size_t r = 0; r < data.size(); ++r) {
    out += data.labels[r] > 0 ? "+1" : "-1";
    auto row = data.features.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] == 0.0) continue;  // zeros are implicit in the format
      out += ' ';
      out += std::to_string(c + 1);
      out += ':';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

Dataset parse_csv(std::string_view text) {
  auto lines = split_lines(text);
  std::vector<std::vector<std::string_view>> table;
  std::vector<std::size_t> line_numbers;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view line = lines[li];
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    table.push_back(std::move(cells));
    line_numbers.push_back(li + 1);
  }
  if (table.empty()) throw ParseError(0, "empty dataset");

  // Header detection: any non-numeric cell in the first row.
  std::size_t first_data_row = 0;
  for (auto cell : table[0]) {
    double unused;
    if (!parse_double(cell, unused)) {
      first_data_row = 1;
      break;
    }
  }
  if (first_data_row >= table.size()) throw ParseError(0, "empty dataset (header only)");

  const std::size_t n_cols = table[first_data_row].size();
  if (n_cols < 2) throw ParseError(line_numbers[first_data_row], "need at least one feature column");

  Dataset data;
  const std::size_t n_rows = table.size() - first_data_row;
  data.features = Matrix(n_rows, n_cols - 1);
  std::vector<double> raw_labels;
  raw_labels.reserve(n_rows);

  for (std::size_t r = first_data_row; r < table.size(); ++r) {
    const auto& cells = table[r];
    if (cells.size() != n_cols) {
      throw ParseError(line_numbers[r], "expected " + std::to_string(n_cols) + " columns, got " +
                                            std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c + 1 < n_cols; ++c) {
      double v;
      if (!parse_double(cells[c], v)) {
        throw ParseError(line_numbers[r], "non-numeric value '" + std::string(cells[c]) + "'");
      }
      if (!std::isfinite(v)) throw ParseError(line_numbers[r], "non-finite feature value");
      data.features(r - first_data_row, c) = v;
    }
    double label;
    if (!parse_double(cells[n_cols - 1], label)) {
      throw ParseError(line_numbers[r], "non-numeric label '" + std::string(cells[n_cols - 1]) + "'");
    }
    raw_labels.push_back(label);
  }

  auto [labels, mapping] = normalize_labels(raw_labels);
  data.labels = std::move(labels);
  data.mapping = mapping;
  return data;
}

std::string serialize_csv(const Dataset& data) {
  std::string out;
  for (std::size_t c = 0; c < data.n_features(); ++c) {
    out += "f" + std::to_string(c + 1) + ",";
  }
  out += "label\n";
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (double v : data.features.row(r)) {
      out += format_double(v);
      out += ',';
    }
    out += data.labels[r] > 0 ? "1" : "-1";
    out += '\n';
  }
  return out;
}

Dataset load_dataset(const std::string& path, DataFormat format) {
  std::string text = read_file(path);
  Dataset data = format == DataFormat::libsvm ? parse_libsvm(text) : parse_csv(text);
  auto slash = path.find_last_of("/\\");
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  data.name = stem;
  validate(data);
  return data;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::test_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) out.push_back(i);
  }
  return out;
}

FoldPlan stratified_kfold(const Dataset& data, int k, std::uint64_t seed) {
  validate(data);
  if (k < 2) throw std::invalid_argument("fold count must be at least 2");

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignments.assign(data.size(), -1);

  const int classes[2] = {-1, +1};
  for (int ci = 0; ci < 2; ++ci) {
    auto indices = class_indices(data, classes[ci]);
    if (indices.size() < static_cast<std::size_t>(k)) {
      throw std::invalid_argument("class " + std::string(classes[ci] > 0 ? "+1" : "-1") + " has " +
                                  std::to_string(indices.size()) + " samples, fewer than k=" +
                                  std::to_string(k));
    }
    auto rng = substream(seed, kFoldTagBase + static_cast<std::uint64_t>(ci));
    shuffle(indices, rng);
    for (std::size_t j = 0; j < indices.size(); ++j) {
      plan.assignments[indices[j]] = static_cast<int>(j % static_cast<std::size_t>(k));
    }
  }
  return plan;
}

SplitResult fraction_split(const Dataset& data, double fraction, std::uint64_t seed) {
  validate(data);
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("fraction must lie strictly between 0 and 1");
  }

  std::vector<std::size_t> train_rows, test_rows;
  const int classes[2] = {-1, +1};
  for (int ci = 0; ci < 2; ++ci) {
    auto indices = class_indices(data, classes[ci]);
    if (indices.empty()) throw std::invalid_argument("both classes must be present");
    auto rng = substream(seed, kFractionTagBase + static_cast<std::uint64_t>(ci));
    shuffle(indices, rng);
    auto n_train = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(indices.size())));
    n_train = std::max<std::size_t>(n_train, 1);
    n_train = std::min(n_train, indices.size());
    train_rows.insert(train_rows.end(), indices.begin(), indices.begin() + n_train);
    test_rows.insert(test_rows.end(), indices.begin() + n_train, indices.end());
  }
  if (test_rows.empty()) {
    throw std::invalid_argument("fraction leaves an empty test set");
  }

  // Original row order keeps the split independent of shuffle internals.
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {data.subset(train_rows), data.subset(test_rows)};
}

Dataset make_monk1() {
  const int ranges[6] = {3, 3, 2, 3, 4, 2};
  Dataset data;
  data.name = "monk1";
  data.features = Matrix(432, 6);
  data.labels.reserve(432);
  int attrs[6];
  std::size_t row = 0;
  for (attrs[0] = 1; attrs[0] <= ranges[0]; ++attrs[0])
    for (attrs[1] = 1; attrs[1] <= ranges[1]; ++attrs[1])
      for (attrs[2] = 1; attrs[2] <= ranges[2]; ++attrs[2])
        for (attrs[3] = 1; attrs[3] <= ranges[3]; ++attrs[3])
          for (attrs[4] = 1; attrs[4] <= ranges[4]; ++attrs[4])
            for (attrs[5] = 1; attrs[5] <= ranges[5]; ++attrs[5]) {
              for (int c = 0; c < 6; ++c) data.features(row, c) = attrs[c];
              data.labels.push_back(attrs[0] == attrs[1] || attrs[4] == 1 ? +1 : -1);
              ++row;
            }
  data.mapping = LabelMapping{0.0, 1.0};
  return data;
}

}  // namespace adasvm
