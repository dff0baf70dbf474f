#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adasvm/matrix.hpp"

namespace adasvm {

// How raw input labels were normalized: the numerically smaller raw value
// always maps to -1, the larger to +1.
struct LabelMapping {
  double raw_negative = -1.0;
  double raw_positive = +1.0;
};

// Dense sample matrix with labels in {-1,+1}.
struct Dataset {
  Matrix features;             // n rows x m columns
  std::vector<int> labels;     // n entries, each -1 or +1
  std::string name;
  LabelMapping mapping;

  std::size_t size() const { return features.rows(); }
  std::size_t n_features() const { return features.cols(); }

  // New dataset holding the given rows, in the given order.
  Dataset subset(std::span<const std::size_t> rows) const;

  std::size_t count_label(int label) const;
};

// Throws std::invalid_argument when a Dataset invariant is broken
// (labels outside {-1,+1}, non-finite features, empty matrix, size mismatch).
void validate(const Dataset& data);

// Maps two distinct raw label values onto {-1,+1}, smaller -> -1.
std::pair<std::vector<int>, LabelMapping> normalize_labels(const std::vector<double>& raw);

// LIBSVM sparse text format: `label index:value ...` per line, 1-based
// strictly increasing indices. Absent indices become 0.0.
Dataset parse_libsvm(std::string_view text);
std::string serialize_libsvm(const Dataset& data);

// CSV: last column is the label, all other columns numeric features.
// An optional header row is detected by a non-numeric first row.
Dataset parse_csv(std::string_view text);
std::string serialize_csv(const Dataset& data);

enum class DataFormat { libsvm, csv };

// Reads a dataset file; the dataset name is the file stem.
Dataset load_dataset(const std::string& path, DataFormat format);

// Stratified fold assignment: a pure function of (labels, k, seed).
struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> assignments;  // n entries in [0, k)

  std::vector<std::size_t> train_indices(int fold) const;
  std::vector<std::size_t> test_indices(int fold) const;
};

// Per-class shuffle followed by round-robin assignment, so per-class fold
// sizes differ by at most one. Requires k >= 2 and every class >= k members.
FoldPlan stratified_kfold(const Dataset& data, int k, std::uint64_t seed);

struct SplitResult {
  Dataset train;
  Dataset test;
};

// Per-class sampling without replacement: each class contributes
// clamp(round(fraction * class_size), 1, class_size) training rows.
// Errors when the resulting train or test set is empty.
SplitResult fraction_split(const Dataset& data, double fraction, std::uint64_t seed);

// The complete 432-row truth table of the first monk's problem:
// attributes (a1..a6) with ranges (3,3,2,3,4,2) enumerated lexicographically,
// label +1 iff a1 == a2 or a5 == 1.
Dataset make_monk1();

}  // namespace adasvm
