#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "adasvm/margins.hpp"
#include "adasvm/rng.hpp"
#include "adasvm/serialization.hpp"
#include "support/fixtures.hpp"

using namespace adasvm;

namespace {

AdaBoostModel single_stump_model(double alpha = 1.0) {
  AdaBoostModel model;
  model.n_features = 1;
  model.stumps = {DecisionStump{0, 0.5, +1}};
  model.alphas = {alpha};
  model.rounds = {RoundRecord{.epsilon = 0.25, .epsilon_clamped = 0.25, .alpha = alpha,
                              .gamma = 0.25, .z = 0.866, .train_error = 0.0}};
  return model;
}

// Noisy labels keep every stump error strictly inside (0, 0.5).
Dataset noisy_dataset(SplitMix64& rng, std::size_t n) {
  Dataset d = testing::stump_separable_dataset(rng, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.next_below(100) < 20) d.labels[i] = -d.labels[i];
  }
  if (d.count_label(+1) == 0 || d.count_label(-1) == 0) d.labels[0] = -d.labels[0];
  return d;
}

}  // namespace

TEST_CASE("margins of a perfect single stump are all one") {
  Dataset d = testing::separable_pair();
  AdaBoostModel model = single_stump_model();
  MarginReport report = normalized_margins(model, d);
  for (double m : report.margins) CHECK(m == 1.0);
  CHECK(report.min_margin == 1.0);
}

TEST_CASE("a misclassified point has margin minus one") {
  Dataset d = testing::separable_pair(/*flipped=*/true);  // stump predicts both wrong
  AdaBoostModel model = single_stump_model();
  MarginReport report = normalized_margins(model, d);
  CHECK(report.margins[0] == -1.0);
  CHECK(report.margins[1] == -1.0);
}

TEST_CASE("two equal stumps agree or cancel") {
  Dataset d = testing::separable_pair();
  AdaBoostModel model;
  model.n_features = 1;
  model.stumps = {DecisionStump{0, 0.5, +1}, DecisionStump{0, 0.5, +1}};
  model.alphas = {0.7, 0.7};
  MarginReport agree = normalized_margins(model, d);
  CHECK(agree.margins[0] == 1.0);
  CHECK(agree.margins[1] == 1.0);

  model.stumps[1].polarity = -1;  // now they disagree everywhere
  MarginReport cancel = normalized_margins(model, d);
  CHECK(cancel.margins[0] == 0.0);
  CHECK(cancel.margins[1] == 0.0);
}

TEST_CASE("margin cdf endpoints and the zero-threshold coincidence") {
  SplitMix64 rng(21);
  Dataset d = noisy_dataset(rng, 60);
  AdaBoostModel model = train_adaboost(d, 10);
  MarginReport report = normalized_margins(model, d);

  CHECK(margin_cdf(report, 1.0) == 1.0);
  CHECK(margin_cdf(report, -1.0 - 1e-9) == 0.0);

  // no margin is exactly zero here, so cdf(0) equals the training error
  bool any_zero = false;
  for (double m : report.margins) any_zero |= m == 0.0;
  if (!any_zero) {
    CHECK(margin_cdf(report, 0.0) == doctest::Approx(training_error(model, d)).epsilon(1e-12));
  }

  // non-decreasing over the grid
  for (std::size_t i = 1; i < report.cdf.size(); ++i) {
    CHECK(report.cdf[i].second >= report.cdf[i - 1].second);
  }
}

TEST_CASE("schapire_bound closed-form values") {
  const std::vector<double> eps{0.25};
  CHECK(schapire_bound(eps, 0.0) == doctest::Approx(0.8660254037844386).epsilon(1e-12));

  const std::vector<double> nearly_half{0.5 - 1e-12};
  CHECK(schapire_bound(nearly_half, 0.0) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(schapire_bound(std::vector<double>{0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(schapire_bound(std::vector<double>{0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(schapire_bound(eps, 1.0), std::invalid_argument);
}

TEST_CASE("schapire_bound at theta zero equals the product of normalizers") {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 8; ++trial) {
    Dataset d = noisy_dataset(rng, 50 + rng.next_below(50));
    AdaBoostModel model = train_adaboost(d, 12);
    std::vector<double> eps;
    double z_product = 1.0;
    bool clamped = false;
    for (const auto& r : model.rounds) {
      eps.push_back(r.epsilon);
      z_product *= r.z;
      clamped |= r.clamped;
    }
    if (clamped) continue;
    CHECK(schapire_bound(eps, 0.0) == doctest::Approx(z_product).epsilon(1e-9));
  }
}

TEST_CASE("margin cdf stays under the schapire bound") {
  SplitMix64 rng(34);
  int models_checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Dataset d = noisy_dataset(rng, 80);
    AdaBoostModel model = train_adaboost(d, 15);
    std::vector<double> eps;
    bool clamped = false;
    for (const auto& r : model.rounds) {
      eps.push_back(r.epsilon);
      clamped |= r.clamped;
    }
    if (clamped) continue;
    ++models_checked;
    MarginReport report = normalized_margins(model, d);
    for (double theta = 0.0; theta <= 0.5 + 1e-12; theta += 0.05) {
      CHECK(margin_cdf(report, theta) <= schapire_bound(eps, theta) + 1e-9);
    }
  }
  CHECK(models_checked > 0);
}

TEST_CASE("simplified_bound direct evaluation") {
  // sqrt(0.6^0.9 * 1.4^1.1), gamma 0.2, theta 0.1: below one as the
  // theorem needs for theta < gamma
  const double base = simplified_bound(0.2, 0.1, 1);
  CHECK(base == doctest::Approx(0.9561774169618016).epsilon(1e-12));
  CHECK(base < 1.0);
  CHECK(base ==
        doctest::Approx(std::sqrt(std::pow(0.6, 0.9) * std::pow(1.4, 1.1))).epsilon(1e-12));

  // the bound degrades as theta approaches gamma
  CHECK(simplified_bound(0.25, 0.25, 1) >= simplified_bound(0.25, 0.20, 1));

  CHECK(simplified_bound(0.3, 0.1, 0) == 1.0);  // empty product

  // exponential decay in T for theta < gamma
  CHECK(simplified_bound(0.2, 0.1, 50) == doctest::Approx(std::pow(base, 50)).epsilon(1e-9));

  CHECK_THROWS_AS(simplified_bound(0.0, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(simplified_bound(0.6, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(simplified_bound(0.2, -0.1, 1), std::invalid_argument);

  // gamma = 0.5: the base collapses to zero for theta < 1
  CHECK(simplified_bound(0.5, 0.0, 3) == 0.0);
}

TEST_CASE("all normalized margins live in the unit interval") {
  SplitMix64 rng(35);
  for (int trial = 0; trial < 6; ++trial) {
    Dataset d = testing::random_grid_dataset(rng, 30, 3);
    AdaBoostModel model = train_adaboost(d, 9);
    MarginReport report = normalized_margins(model, d);
    for (double m : report.margins) {
      CHECK(m >= -1.0);
      CHECK(m <= 1.0);
    }
  }
}

TEST_CASE("margin report exports") {
  SplitMix64 rng(36);
  Dataset d = noisy_dataset(rng, 40);
  AdaBoostModel model = train_adaboost(d, 8);
  MarginReport report = normalized_margins(model, d);

  const std::string tsv = margin_report_to_tsv(report);
  CHECK(tsv.rfind("sample\tmargin\n", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 41);  // header + one per sample

  const std::string json = margin_report_to_json(report, model);
  CHECK(json.find("\"min_margin\"") != std::string::npos);
  CHECK(json.find("\"cdf\"") != std::string::npos);
}

TEST_CASE("normalized_margins requires positive alpha mass") {
  Dataset d = testing::separable_pair();
  AdaBoostModel model = single_stump_model(0.0);
  CHECK_THROWS_AS(normalized_margins(model, d), std::invalid_argument);
}
