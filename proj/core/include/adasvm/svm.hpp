#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adasvm/matrix.hpp"

namespace adasvm {

inline constexpr double kDefaultSvmTol = 1e-6;
inline constexpr std::uint64_t kDefaultSvmMaxIter = 10'000'000;

// Hard margin is realized as a soft-margin solve with this penalty plus a
// slack post-check: separable iff max slack <= kHardMarginSlackTol.
inline constexpr double kHardMarginC = 1e6;
inline constexpr double kHardMarginSlackTol = 1e-3;

struct SolverReport {
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double max_kkt_violation = 0.0;
  std::uint64_t iterations = 0;
};

// Linear SVM sign(beta . z + b). `c_value` is +infinity for hard-margin
// models (the solver itself then ran with kHardMarginC).
struct SvmModel {
  std::vector<double> beta;
  double bias = 0.0;
  double c_value = 1.0;
  std::vector<double> slacks;     // xi_i = max(0, 1 - y_i (beta.z_i + b))
  std::vector<double> dual_vars;  // lambda_i in [0, C]
  bool converged = false;
  SolverReport report;
};

// Solves min 1/2 |beta|^2 + C sum xi_i s.t. y_i (beta.z_i + b) >= 1 - xi_i
// through its dual: pairwise coordinate updates that preserve
// sum(lambda_i y_i) = 0, working pair chosen by maximal KKT violation.
// Stops when the violation drops to `tol` or the iteration cap is hit
// (the model is then flagged non-converged). Requires both classes.
SvmModel solve_soft_margin(MatrixView z, std::span<const int> y, double c, double tol,
                           std::uint64_t max_iter = kDefaultSvmMaxIter);

// Soft-margin solve at C = kHardMarginC; nullopt when the data is not
// separable (some slack exceeds kHardMarginSlackTol). On success the
// model's slacks are zeroed and c_value is +infinity.
std::optional<SvmModel> solve_hard_margin(MatrixView z, std::span<const int> y, double tol,
                                          std::uint64_t max_iter = kDefaultSvmMaxIter);

// 1 / |beta|_2. Errors on zero beta.
double geometric_margin(const SvmModel& model);

// Recomputes objectives, duality gap and per-point KKT violations from
// scratch; the test suites use it as the optimality certificate.
SolverReport kkt_report(const SvmModel& model, MatrixView z, std::span<const int> y);

// sign(beta . z + b), sign(0) := +1. Errors on dimension mismatch.
int svm_predict(const SvmModel& model, std::span<const double> z);

}  // namespace adasvm
