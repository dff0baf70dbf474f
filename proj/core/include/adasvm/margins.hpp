#pragma once

#include <span>
#include <utility>
#include <vector>

#include "adasvm/adaboost.hpp"
#include "adasvm/dataset.hpp"

namespace adasvm {

// Per-sample ensemble margins y_i f(x_i) / sum_t alpha_t, in [-1, 1].
struct MarginReport {
  std::vector<double> margins;
  double min_margin = 0.0;
  std::vector<std::pair<double, double>> cdf;  // (theta, fraction of margins <= theta)
};

// The theta grid used by reports: {0, 0.05, ..., 0.95}.
std::vector<double> default_theta_grid();

MarginReport normalized_margins(const AdaBoostModel& model, const Dataset& data);
MarginReport normalized_margins(const AdaBoostModel& model, const Dataset& data,
                                std::span<const double> theta_grid);

// Fraction of samples with margin <= theta.
double margin_cdf(const MarginReport& report, double theta);

// 2^T * prod_t sqrt(e_t^(1-theta) * (1-e_t)^(1+theta)), evaluated in log
// space. Every epsilon must lie in (0, 0.5) and theta in [0, 1).
double schapire_bound(std::span<const double> epsilons, double theta);

// (sqrt((1-2g)^(1-theta) * (1+2g)^(1+theta)))^T, log space.
// Requires 0 < gamma <= 0.5 and 0 <= theta <= 1.
double simplified_bound(double gamma, double theta, std::size_t T);

}  // namespace adasvm
