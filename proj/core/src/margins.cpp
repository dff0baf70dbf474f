#include "adasvm/margins.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adasvm {

std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(static_cast<double>(i) * 0.05);
  return grid;
}

MarginReport normalized_margins(const AdaBoostModel& model, const Dataset& data) {
  auto grid = default_theta_grid();
  return normalized_margins(model, data, grid);
}

MarginReport normalized_margins(const AdaBoostModel& model, const Dataset& data,
                                std::span<const double> theta_grid) {
  validate(data);
  double alpha_mass = 0.0;
  for (double a : model.alphas) alpha_mass += std::abs(a);
  if (!(alpha_mass > 0.0)) throw std::invalid_argument("zero total alpha mass");

  MarginReport report;
  report.margins.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double score = ensemble_score(model, data.features.row(i));
    const double margin = static_cast<double>(data.labels[i]) * score / alpha_mass;
    report.margins[i] = std::clamp(margin, -1.0, 1.0);
  }
  report.min_margin = *std::min_element(report.margins.begin(), report.margins.end());
  report.cdf.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    report.cdf.emplace_back(theta, margin_cdf(report, theta));
  }
  return report;
}

double margin_cdf(const MarginReport& report, double theta) {
  if (report.margins.empty()) throw std::invalid_argument("empty margin report");
  std::size_t count = 0;
  for (double m : report.margins) {
    if (m <= theta) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(report.margins.size());
}

double schapire_bound(std::span<const double> epsilons, double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in [0, 1)");
  double log_bound = static_cast<double>(epsilons.size()) * std::log(2.0);
  for (double e : epsilons) {
    if (!(e > 0.0 && e < 0.5)) {
      throw std::invalid_argument("every epsilon must lie strictly inside (0, 0.5)");
    }
    log_bound += 0.5 * ((1.0 - theta) * std::log(e) + (1.0 + theta) * std::log(1.0 - e));
  }
  return std::exp(log_bound);
}

double simplified_bound(double gamma, double theta, std::size_t T) {
  if (!(gamma > 0.0 && gamma <= 0.5)) throw std::invalid_argument("gamma must lie in (0, 0.5]");
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
  if (T == 0) return 1.0;  // empty product
  const double low = 1.0 - 2.0 * gamma;
  const double high = 1.0 + 2.0 * gamma;
  if (low == 0.0) {
    // 0^(1-theta): zero for theta < 1, one at theta == 1.
    if (theta < 1.0) return 0.0;
    return std::pow(std::sqrt(high), static_cast<double>(T));
  }
  const double log_base = 0.5 * ((1.0 - theta) * std::log(low) + (1.0 + theta) * std::log(high));
  return std::exp(static_cast<double>(T) * log_base);
}

}  // namespace adasvm
