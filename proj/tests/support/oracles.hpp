#pragma once

// Reference implementations used only by the test suites. They take the
// slow, direct route on purpose: exhaustive candidate enumeration, direct
// summation in dataset order, dense linear algebra. They share no code
// with the production paths they certify.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "adasvm/adaboost.hpp"
#include "adasvm/dataset.hpp"
#include "adasvm/matrix.hpp"

namespace adasvm::testing {

// Exhaustive (feature, threshold, polarity) search with the documented
// candidate set and tie rule; per-candidate error by direct summation.
std::pair<DecisionStump, double> brute_force_stump(const Dataset& data,
                                                   const std::vector<double>& weights);

struct ReferenceRound {
  DecisionStump stump;
  double epsilon = 0.0;
  double alpha = 0.0;
  std::vector<double> weights_before;  // D_t
  double z = 0.0;
};

struct ReferenceModel {
  std::vector<ReferenceRound> rounds;
};

// Plain transcription of the boosting loop driven by brute_force_stump.
ReferenceModel reference_adaboost(const Dataset& data, std::size_t T);

struct QpSolution {
  std::vector<double> lambda;
  double dual_objective = 0.0;
};

// Global maximum of the soft-margin dual over the box-and-hyperplane
// feasible set, by enumerating all 3^n {lower, upper, free} patterns and
// solving each equality-constrained subsystem densely. Only sensible for
// n <= ~8.
QpSolution brute_force_qp(MatrixView z, std::span<const int> y, double c);

// Dense Gaussian elimination with partial pivoting; false on a (near)
// singular system.
bool solve_linear(std::vector<double> a, std::vector<double> b, std::size_t n,
                  std::vector<double>& x);

}  // namespace adasvm::testing
