#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adasvm/dataset.hpp"

namespace adasvm {

// Weighted errors are clamped to [kEpsilonClamp, 0.5 - kEpsilonClamp]
// before computing a vote weight, so training never divides by zero and
// never stops early: a sweep over T needs exactly T stumps.
inline constexpr double kEpsilonClamp = 1e-10;

// Two candidate stumps whose weighted errors differ by no more than this
// are treated as tied and resolved by (feature, threshold, polarity +1)
// order. Part of the training contract: it keeps the argmin stable under
// floating-point summation order.
inline constexpr double kStumpTieTolerance = 1e-12;

// Axis-aligned threshold hypothesis: predicts `polarity` when
// x[feature] > threshold, else -polarity.
struct DecisionStump {
  int feature = 0;
  double threshold = 0.0;
  int polarity = +1;

  int predict(std::span<const double> x) const {
    return x[static_cast<std::size_t>(feature)] > threshold ? polarity : -polarity;
  }

  bool operator==(const DecisionStump&) const = default;
};

// Distribution over training samples: nonnegative, sums to 1.
struct SampleWeights {
  std::vector<double> values;

  static SampleWeights uniform(std::size_t n);
  double sum() const;
  bool valid(double tol = 1e-12) const;
};

struct RoundRecord {
  double epsilon = 0.0;          // raw weighted error of the round's stump
  double epsilon_clamped = 0.0;  // value actually fed into the vote weight
  double alpha = 0.0;
  double gamma = 0.0;            // 0.5 - epsilon (raw)
  double z = 0.0;                // normalizer of the weight update
  double train_error = 0.0;      // training error of the voted ensemble so far
  bool clamped = false;
};

struct AdaBoostModel {
  std::vector<DecisionStump> stumps;
  std::vector<double> alphas;
  std::vector<RoundRecord> rounds;
  std::size_t n_features = 0;

  std::size_t size() const { return stumps.size(); }
};

// Exact minimizer of the weighted error over every
// (feature, threshold, polarity) candidate. Thresholds are midpoints of
// consecutive distinct sorted values per feature plus one sentinel below
// the feature minimum. Sort orders are precomputed once, so reuse the
// trainer when fitting many stumps on the same dataset.
class StumpTrainer {
 public:
  explicit StumpTrainer(const Dataset& data);

  // Returns the best stump and its raw weighted error (<= 0.5: both
  // polarities are searched, so an error above one half flips).
  std::pair<DecisionStump, double> train(const SampleWeights& weights) const;

 private:
  const Dataset* data_;
  std::vector<std::vector<std::size_t>> order_;  // per feature: indices sorted by value
};

std::pair<DecisionStump, double> train_stump(const Dataset& data, const SampleWeights& weights);

double clamp_epsilon(double epsilon);

// Vote weight 0.5*ln((1-e)/e) with e clamped. Requires epsilon in [0, 0.5).
double compute_alpha(double epsilon);

struct UpdateResult {
  SampleWeights weights;
  double z = 0.0;  // normalizer
};

// Exponential reweighting: w_i <- w_i * exp(-alpha * y_i * h_i) / Z.
UpdateResult update_weights(const SampleWeights& weights, double alpha,
                            std::span<const int> predictions, std::span<const int> labels);

// Incremental trainer; one step() per boosting round. Rounds are
// sequentially dependent, so this runs single-threaded; the finished model
// is immutable and safe to share across threads.
class AdaBoostTrainer {
 public:
  explicit AdaBoostTrainer(const Dataset& data);

  const RoundRecord& step();

  const AdaBoostModel& model() const { return model_; }
  AdaBoostModel take_model() { return std::move(model_); }
  const SampleWeights& weights() const { return weights_; }
  // Training-set predictions of the stump added by the last step().
  std::span<const int> last_predictions() const { return last_pred_; }

 private:
  const Dataset* data_;
  StumpTrainer stump_trainer_;
  SampleWeights weights_;
  AdaBoostModel model_;
  std::vector<int> last_pred_;
  std::vector<double> scores_;  // running ensemble score per training row
};

// Runs exactly T rounds, no early stopping. Requires T >= 1 and both
// classes present.
AdaBoostModel train_adaboost(const Dataset& data, std::size_t T);

// f(x) = sum_t alpha_t * h_t(x).
double ensemble_score(const AdaBoostModel& model, std::span<const double> x);

// sign(f(x)) with sign(0) := +1.
int ensemble_predict(const AdaBoostModel& model, std::span<const double> x);

inline int sign_or_positive(double v) { return v < 0.0 ? -1 : +1; }

// exp(-2 * sum_t gamma_t^2) from the round log; an upper bound on the
// ensemble's training error.
double training_error_bound(const AdaBoostModel& model);

// Fraction of dataset rows the voted ensemble misclassifies.
double training_error(const AdaBoostModel& model, const Dataset& data);

}  // namespace adasvm
