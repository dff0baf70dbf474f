#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "adasvm/adaboost.hpp"
#include "adasvm/dataset.hpp"
#include "adasvm/svm.hpp"

namespace adasvm {

// z(x): the vector of all T stump outputs on x, each entry -1 or +1.
struct FeatureMap {
  std::vector<DecisionStump> stumps;
  std::size_t input_features = 0;

  std::size_t dimension() const { return stumps.size(); }
  std::vector<double> apply(std::span<const double> x) const;
};

// Row i, column t = h_t(x_i). Errors on an empty map or feature mismatch.
Matrix feature_map_apply(const FeatureMap& map, const Dataset& data);

enum class MarginMode {
  soft,            // always solve the soft-margin problem at the given C
  hard_then_soft,  // try hard margin, fall back to soft when not separable
};

struct HybridOptions {
  std::size_t learners = 100;
  double c = 1.0;
  double tol = kDefaultSvmTol;
  MarginMode mode = MarginMode::soft;
};

struct HybridProvenance {
  std::size_t learners = 0;
  double c = 1.0;
  MarginMode requested_mode = MarginMode::soft;
  bool used_hard_margin = false;
  bool svm_converged = false;
  std::vector<RoundRecord> rounds;
};

// Final classifier sign(sum_t beta_t h_t(x) + b): the ensemble's stumps
// with the SVM's (beta, b) in place of the vote weights.
struct HybridModel {
  FeatureMap feature_map;
  SvmModel svm;
  HybridProvenance provenance;
};

// Boost T stumps, map the samples through them, fit the SVM on the
// resulting +-1 matrix. Deterministic end to end.
HybridModel train_hybrid(const Dataset& data, const HybridOptions& options);

int hybrid_predict(const HybridModel& model, std::span<const double> x);

struct MarginGrowthPoint {
  std::size_t learners = 0;
  std::optional<double> margin;  // nullopt: not separable at this prefix
};

// Hard-margin geometric margin across nested stump prefixes: one AdaBoost
// run at max(t_list) supplies the stumps, each T uses the first T columns.
// Requires t_list ascending.
std::vector<MarginGrowthPoint> margin_growth_study(const Dataset& data,
                                                   std::span<const std::size_t> t_list,
                                                   double tol);

}  // namespace adasvm
