#include "adasvm/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace adasvm {

std::vector<double> FeatureMap::apply(std::span<const double> x) const {
  if (stumps.empty()) throw std::invalid_argument("empty feature map");
  if (x.size() != input_features) {
    throw std::invalid_argument("feature row length does not match the map");
  }
  std::vector<double> z(stumps.size());
  for (std::size_t t = 0; t < stumps.size(); ++t) {
    z[t] = static_cast<double>(stumps[t].predict(x));
  }
  return z;
}

Matrix feature_map_apply(const FeatureMap& map, const Dataset& data) {
  if (map.stumps.empty()) throw std::invalid_argument("empty feature map");
  if (data.n_features() != map.input_features) {
    throw std::invalid_argument("dataset feature count does not match the map");
  }
  for (const auto& stump : map.stumps) {
    if (stump.feature < 0 || static_cast<std::size_t>(stump.feature) >= data.n_features()) {
      throw std::invalid_argument("stump feature index out of range");
    }
  }
  Matrix z(data.size(), map.stumps.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto x = data.features.row(i);
    for (std::size_t t = 0; t < map.stumps.size(); ++t) {
      z(i, t) = static_cast<double>(map.stumps[t].predict(x));
    }
  }
  return z;
}

HybridModel train_hybrid(const Dataset& data, const HybridOptions& options) {
  if (options.learners == 0) throw std::invalid_argument("learner count must be at least 1");
  if (!(options.c > 0.0)) throw std::invalid_argument("C must be positive");

  AdaBoostModel boosted = train_adaboost(data, options.learners);

  HybridModel model;
  model.feature_map = FeatureMap{boosted.stumps, boosted.n_features};
  model.provenance.learners = options.learners;
  model.provenance.c = options.c;
  model.provenance.requested_mode = options.mode;
  model.provenance.rounds = boosted.rounds;

  Matrix z = feature_map_apply(model.feature_map, data);

  if (options.mode == MarginMode::hard_then_soft) {
    if (auto hard = solve_hard_margin(MatrixView::of(z), data.labels, options.tol)) {
      model.svm = std::move(*hard);
      model.provenance.used_hard_margin = true;
      model.provenance.svm_converged = model.svm.converged;
      return model;
    }
  }
  model.svm = solve_soft_margin(MatrixView::of(z), data.labels, options.c, options.tol);
  model.provenance.used_hard_margin = false;
  model.provenance.svm_converged = model.svm.converged;
  return model;
}

int hybrid_predict(const HybridModel& model, std::span<const double> x) {
  return svm_predict(model.svm, model.feature_map.apply(x));
}

std::vector<MarginGrowthPoint> margin_growth_study(const Dataset& data,
                                                   std::span<const std::size_t> t_list,
                                                   double tol) {
  if (t_list.empty()) throw std::invalid_argument("empty learner list");
  if (!std::is_sorted(t_list.begin(), t_list.end())) {
    throw std::invalid_argument("learner list must be ascending");
  }
  if (t_list.front() == 0) throw std::invalid_argument("learner counts must be positive");

  // One boosting run at the largest T; each study point reuses a column
  // prefix, which is exactly the nested-feature premise the margin
  // monotonicity statement needs.
  const std::size_t t_max = t_list.back();
  AdaBoostModel boosted = train_adaboost(data, t_max);
  FeatureMap map{boosted.stumps, boosted.n_features};
  Matrix z = feature_map_apply(map, data);
  MatrixView full = MatrixView::of(z);

  std::vector<MarginGrowthPoint> points;
  points.reserve(t_list.size());
  for (std::size_t t : t_list) {
    MarginGrowthPoint point;
    point.learners = t;
    if (auto model = solve_hard_margin(full.prefix_cols(t), data.labels, tol)) {
      point.margin = geometric_margin(*model);
    }
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace adasvm
