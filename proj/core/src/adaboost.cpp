#include "adasvm/adaboost.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace adasvm {

SampleWeights SampleWeights::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cannot build weights for zero samples");
  return SampleWeights{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

double SampleWeights::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

bool SampleWeights::valid(double tol) const {
  if (values.empty()) return false;
  for (double w : values) {
    if (!(w >= 0.0)) return false;
  }
  return std::abs(sum() - 1.0) <= tol;
}

StumpTrainer::StumpTrainer(const Dataset& data) : data_(&data) {
  validate(data);
  const std::size_t n = data.size();
  const std::size_t m = data.n_features();
  order_.resize(m);
  for (std::size_t f = 0; f < m; ++f) {
    auto& ord = order_[f];
    ord.resize(n);
    std::iota(ord.begin(), ord.end(), std::size_t{0});
    std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
      return data.features(a, f) < data.features(b, f);
    });
  }
}

std::pair<DecisionStump, double> StumpTrainer::train(const SampleWeights& weights) const {
  const Dataset& data = *data_;
  const std::size_t n = data.size();
  if (weights.values.size() != n) {
    throw std::invalid_argument("weight vector does not match dataset size");
  }

  DecisionStump best;
  double best_err = 2.0;  // above any real error, so the first candidate always wins

  // Candidates are visited in tie-break order (feature asc, threshold asc,
  // polarity +1 first), so "strictly better by kStumpTieTolerance" keeps
  // the first member of every tie group.
  auto consider = [&](int feature, double threshold, double err_plus) {
    if (err_plus < best_err - kStumpTieTolerance) {
      best = DecisionStump{feature, threshold, +1};
      best_err = err_plus;
    }
    const double err_minus = 1.0 - err_plus;
    if (err_minus < best_err - kStumpTieTolerance) {
      best = DecisionStump{feature, threshold, -1};
      best_err = err_minus;
    }
  };

  for (std::size_t f = 0; f < data.n_features(); ++f) {
    const auto& ord = order_[f];

    // Class totals accumulated in sorted order: the sweep's partial sums
    // then cancel exactly at the full prefix, so a zero error is detected
    // as an exact 0.0.
    double w_pos_total = 0.0, w_neg_total = 0.0;
    for (std::size_t i : ord) {
      (data.labels[i] > 0 ? w_pos_total : w_neg_total) += weights.values[i];
    }

    // Sentinel below the minimum: the stump predicts one class everywhere.
    const double min_value = data.features(ord[0], f);
    consider(static_cast<int>(f), min_value - 1.0, w_neg_total);

    // err_plus(threshold) = positive weight at or below + negative weight above.
    double acc_pos = 0.0, acc_neg = 0.0;
    std::size_t i = 0;
    while (i < n) {
      const double value = data.features(ord[i], f);
      std::size_t j = i;
      while (j < n && data.features(ord[j], f) == value) {
        (data.labels[ord[j]] > 0 ? acc_pos : acc_neg) += weights.values[ord[j]];
        ++j;
      }
      if (j == n) break;
      const double next_value = data.features(ord[j], f);
      double threshold = value + (next_value - value) / 2.0;
      if (threshold >= next_value) threshold = value;  // adjacent doubles
      consider(static_cast<int>(f), threshold, acc_pos + (w_neg_total - acc_neg));
      i = j;
    }
  }

  return {best, std::max(best_err, 0.0)};
}

std::pair<DecisionStump, double> train_stump(const Dataset& data, const SampleWeights& weights) {
  return StumpTrainer(data).train(weights);
}

double clamp_epsilon(double epsilon) {
  return std::clamp(epsilon, kEpsilonClamp, 0.5 - kEpsilonClamp);
}

double compute_alpha(double epsilon) {
  if (!(epsilon >= 0.0) || epsilon >= 0.5) {
    throw std::invalid_argument("epsilon must lie in [0, 0.5)");
  }
  const double e = clamp_epsilon(epsilon);
  return 0.5 * std::log((1.0 - e) / e);
}

UpdateResult update_weights(const SampleWeights& weights, double alpha,
                            std::span<const int> predictions, std::span<const int> labels) {
  const std::size_t n = weights.values.size();
  if (predictions.size() != n || labels.size() != n) {
    throw std::invalid_argument("predictions/labels must match the weight vector length");
  }

  UpdateResult result;
  result.weights.values.resize(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mass =
        weights.values[i] * std::exp(-alpha * static_cast<double>(labels[i] * predictions[i]));
    result.weights.values[i] = mass;
    z += mass;
  }
  assert(z > 0.0 && "unnormalized weight mass vanished");
  for (double& w : result.weights.values) w /= z;
  result.z = z;
  return result;
}

AdaBoostTrainer::AdaBoostTrainer(const Dataset& data)
    : data_(&data),
      stump_trainer_(data),
      weights_(SampleWeights::uniform(data.size())),
      scores_(data.size(), 0.0) {
  if (data.count_label(+1) == 0 || data.count_label(-1) == 0) {
    throw std::invalid_argument("training requires both classes");
  }
  model_.n_features = data.n_features();
}

const RoundRecord& AdaBoostTrainer::step() {
  const Dataset& data = *data_;
  const std::size_t n = data.size();

  auto [stump, epsilon] = stump_trainer_.train(weights_);
  const double epsilon_clamped = clamp_epsilon(epsilon);
  const double alpha = compute_alpha(epsilon_clamped);

  last_pred_.resize(n);
  for (std::size_t i = 0; i < n; ++i) last_pred_[i] = stump.predict(data.features.row(i));

  auto update = update_weights(weights_, alpha, last_pred_, data.labels);
  weights_ = std::move(update.weights);

  std::size_t mistakes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    scores_[i] += alpha * static_cast<double>(last_pred_[i]);
    if (sign_or_positive(scores_[i]) != data.labels[i]) ++mistakes;
  }

  RoundRecord record;
  record.epsilon = epsilon;
  record.epsilon_clamped = epsilon_clamped;
  record.alpha = alpha;
  record.gamma = 0.5 - epsilon;
  record.z = update.z;
  record.train_error = static_cast<double>(mistakes) / static_cast<double>(n);
  record.clamped = epsilon != epsilon_clamped;

  model_.stumps.push_back(stump);
  model_.alphas.push_back(alpha);
  model_.rounds.push_back(record);
  return model_.rounds.back();
}

AdaBoostModel train_adaboost(const Dataset& data, std::size_t T) {
  if (T == 0) throw std::invalid_argument("learner count must be at least 1");
  AdaBoostTrainer trainer(data);
  for (std::size_t t = 0; t < T; ++t) trainer.step();
  return trainer.take_model();
}

double ensemble_score(const AdaBoostModel& model, std::span<const double> x) {
  if (x.size() != model.n_features) {
    throw std::invalid_argument("feature row length does not match the model");
  }
  double score = 0.0;
  for (std::size_t t = 0; t < model.stumps.size(); ++t) {
    score += model.alphas[t] * static_cast<double>(model.stumps[t].predict(x));
  }
  return score;
}

int ensemble_predict(const AdaBoostModel& model, std::span<const double> x) {
  return sign_or_positive(ensemble_score(model, x));
}

double training_error_bound(const AdaBoostModel& model) {
  double sum = 0.0;
  for (const auto& round : model.rounds) sum += round.gamma * round.gamma;
  return std::exp(-2.0 * sum);
}

double training_error(const AdaBoostModel& model, const Dataset& data) {
  std::size_t mistakes = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (ensemble_predict(model, data.features.row(i)) != data.labels[i]) ++mistakes;
  }
  return static_cast<double>(mistakes) / static_cast<double>(data.size());
}

}  // namespace adasvm
