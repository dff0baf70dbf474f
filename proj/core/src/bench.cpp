#include "adasvm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>

#include "adasvm/serialization.hpp"
#include "json.hpp"

namespace adasvm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

void validate_common(const ExperimentConfig& config) {
  if (config.learners.empty()) throw std::invalid_argument("no learner counts configured");
  for (std::size_t t : config.learners) {
    if (t == 0) throw std::invalid_argument("learner counts must be positive");
  }
  if (config.folds < 2) throw std::invalid_argument("folds must be at least 2");
  if (config.runs < 1) throw std::invalid_argument("runs must be at least 1");
  if (!(config.c > 0.0)) throw std::invalid_argument("C must be positive");
  if (!(config.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

// Per-(T, method) accuracy % and train+predict seconds for one
// train/test split. AdaBoost is trained once to the largest T; smaller
// T values are prefixes of the same deterministic round sequence, so the
// snapshot equals a separate shorter run. The SVM of the hybrid is
// solved per T on a column prefix of the stump-output matrix.
struct SplitOutcome {
  std::vector<double> ada_acc, ada_seconds;
  std::vector<double> hyb_acc, hyb_seconds;
};

SplitOutcome evaluate_split(const Dataset& train, const Dataset& test,
                            const std::vector<std::size_t>& t_values,
                            const ExperimentConfig& config, bool want_hybrid) {
  const std::size_t t_max = t_values.back();
  const std::size_t n_train = train.size();
  const std::size_t n_test = test.size();

  SplitOutcome out;
  out.ada_acc.resize(t_values.size());
  out.ada_seconds.resize(t_values.size());

  Matrix z_train(n_train, t_max);
  Matrix z_test(n_test, t_max);
  std::vector<double> test_scores(n_test, 0.0);

  const auto start = Clock::now();
  AdaBoostTrainer trainer(train);
  std::size_t snapshot = 0;
  for (std::size_t t = 1; t <= t_max; ++t) {
    const RoundRecord& record = trainer.step();
    const DecisionStump& stump = trainer.model().stumps.back();

    auto train_pred = trainer.last_predictions();
    for (std::size_t i = 0; i < n_train; ++i) {
      z_train(i, t - 1) = static_cast<double>(train_pred[i]);
    }
    for (std::size_t i = 0; i < n_test; ++i) {
      const int p = stump.predict(test.features.row(i));
      z_test(i, t - 1) = static_cast<double>(p);
      test_scores[i] += record.alpha * static_cast<double>(p);
    }

    if (snapshot < t_values.size() && t == t_values[snapshot]) {
      std::size_t correct = 0;
      for (std::size_t i = 0; i < n_test; ++i) {
        if (sign_or_positive(test_scores[i]) == test.labels[i]) ++correct;
      }
      out.ada_acc[snapshot] = 100.0 * static_cast<double>(correct) / static_cast<double>(n_test);
      out.ada_seconds[snapshot] = seconds_since(start);
      ++snapshot;
    }
  }

  if (want_hybrid) {
    out.hyb_acc.resize(t_values.size());
    out.hyb_seconds.resize(t_values.size());
    MatrixView full = MatrixView::of(z_train);
    for (std::size_t k = 0; k < t_values.size(); ++k) {
      const std::size_t t = t_values[k];
      const auto svm_start = Clock::now();
      SvmModel svm = solve_soft_margin(full.prefix_cols(t), train.labels, config.c, config.tol);
      std::size_t correct = 0;
      for (std::size_t i = 0; i < n_test; ++i) {
        double score = svm.bias;
        for (std::size_t c = 0; c < t; ++c) score += svm.beta[c] * z_test(i, c);
        if (sign_or_positive(score) == test.labels[i]) ++correct;
      }
      out.hyb_acc[k] = 100.0 * static_cast<double>(correct) / static_cast<double>(n_test);
      out.hyb_seconds[k] = out.ada_seconds[k] + seconds_since(svm_start);
    }
  }
  return out;
}

struct CellAccumulator {
  std::vector<double> accuracies;     // one per test evaluation
  std::vector<double> run_seconds;    // one per run (folds summed within a run)
  double pending_run_seconds = 0.0;

  void add_split(double acc, double seconds) {
    accuracies.push_back(acc);
    pending_run_seconds += seconds;
  }
  void finish_run() {
    run_seconds.push_back(pending_run_seconds);
    pending_run_seconds = 0.0;
  }
};

CellResult make_cell(const std::string& dataset, const std::string& method, double param,
                     const CellAccumulator& acc, TimeMode time_mode) {
  CellResult cell;
  cell.dataset = dataset;
  cell.method = method;
  cell.param = param;
  cell.acc_mean = mean(acc.accuracies);
  cell.acc_std = sample_std(acc.accuracies);
  cell.time_mean_s = time_mode == TimeMode::none ? 0.0 : mean(acc.run_seconds);
  return cell;
}

void sort_cells(std::vector<CellResult>& cells) {
  std::sort(cells.begin(), cells.end(), [](const CellResult& a, const CellResult& b) {
    if (a.dataset != b.dataset) return a.dataset < b.dataset;
    if (a.method != b.method) return a.method < b.method;
    return a.param < b.param;
  });
}

std::string format_param(SweepKind kind, double param) {
  char buf[32];
  if (kind == SweepKind::learners) {
    std::snprintf(buf, sizeof(buf), "%.0f", param);
  } else {
    std::snprintf(buf, sizeof(buf), "%.2f", param);
  }
  return buf;
}

double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

}  // namespace

ExperimentResult run_learner_sweep(const Dataset& data, const ExperimentConfig& config) {
  validate(data);
  validate_common(config);

  const auto t_values = sorted_unique(config.learners);
  const bool want_ada = config.method != Method::hybrid;
  const bool want_hyb = config.method != Method::adaboost;

  std::vector<CellAccumulator> ada_cells(t_values.size());
  std::vector<CellAccumulator> hyb_cells(t_values.size());

  ExperimentResult result;
  result.kind = SweepKind::learners;
  result.dataset = data.name;
  result.folds = config.folds;
  result.runs = config.runs;
  result.c = config.c;

  for (std::size_t r = 0; r < config.runs; ++r) {
    const std::uint64_t run_seed = config.seed + r;
    result.seeds.push_back(run_seed);
    FoldPlan plan = stratified_kfold(data, static_cast<int>(config.folds), run_seed);
    for (std::size_t f = 0; f < config.folds; ++f) {
      Dataset train = data.subset(plan.train_indices(static_cast<int>(f)));
      Dataset test = data.subset(plan.test_indices(static_cast<int>(f)));
      SplitOutcome outcome = evaluate_split(train, test, t_values, config, want_hyb);
      for (std::size_t k = 0; k < t_values.size(); ++k) {
        if (want_ada) ada_cells[k].add_split(outcome.ada_acc[k], outcome.ada_seconds[k]);
        if (want_hyb) hyb_cells[k].add_split(outcome.hyb_acc[k], outcome.hyb_seconds[k]);
      }
    }
    for (auto& cell : ada_cells) cell.finish_run();
    for (auto& cell : hyb_cells) cell.finish_run();
  }

  for (std::size_t k = 0; k < t_values.size(); ++k) {
    const double param = static_cast<double>(t_values[k]);
    if (want_ada) {
      result.cells.push_back(
          make_cell(data.name, "adaboost", param, ada_cells[k], config.time_mode));
    }
    if (want_hyb) {
      result.cells.push_back(
          make_cell(data.name, "hybrid", param, hyb_cells[k], config.time_mode));
    }
  }
  sort_cells(result.cells);
  return result;
}

ExperimentResult run_fraction_sweep(const Dataset& data, const ExperimentConfig& config) {
  validate(data);
  validate_common(config);
  if (config.fractions.empty()) throw std::invalid_argument("no fractions configured");
  for (double f : config.fractions) {
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("fractions must lie in (0, 1)");
  }
  if (sorted_unique(config.learners).size() != 1) {
    throw std::invalid_argument("fraction sweep uses a single learner count");
  }

  const std::vector<std::size_t> t_values{config.learners.front()};
  const bool want_ada = config.method != Method::hybrid;
  const bool want_hyb = config.method != Method::adaboost;

  std::vector<double> fractions = config.fractions;
  std::sort(fractions.begin(), fractions.end());
  fractions.erase(std::unique(fractions.begin(), fractions.end()), fractions.end());

  ExperimentResult result;
  result.kind = SweepKind::fraction;
  result.dataset = data.name;
  result.folds = config.folds;
  result.runs = config.runs;
  result.c = config.c;

  std::vector<CellAccumulator> ada_cells(fractions.size());
  std::vector<CellAccumulator> hyb_cells(fractions.size());

  for (std::size_t r = 0; r < config.runs; ++r) {
    const std::uint64_t run_seed = config.seed + r;
    result.seeds.push_back(run_seed);
    for (std::size_t k = 0; k < fractions.size(); ++k) {
      SplitResult split = fraction_split(data, fractions[k], run_seed);
      SplitOutcome outcome =
          evaluate_split(split.train, split.test, t_values, config, want_hyb);
      if (want_ada) ada_cells[k].add_split(outcome.ada_acc[0], outcome.ada_seconds[0]);
      if (want_hyb) hyb_cells[k].add_split(outcome.hyb_acc[0], outcome.hyb_seconds[0]);
    }
    for (auto& cell : ada_cells) cell.finish_run();
    for (auto& cell : hyb_cells) cell.finish_run();
  }

  for (std::size_t k = 0; k < fractions.size(); ++k) {
    if (want_ada) {
      result.cells.push_back(
          make_cell(data.name, "adaboost", fractions[k], ada_cells[k], config.time_mode));
    }
    if (want_hyb) {
      result.cells.push_back(
          make_cell(data.name, "hybrid", fractions[k], hyb_cells[k], config.time_mode));
    }
  }
  sort_cells(result.cells);
  return result;
}

std::string report_to_tsv(const ExperimentResult& result) {
  std::string out = "dataset\tmethod\tparam\tacc_mean\tacc_std\ttime_mean_s\n";
  char buf[128];
  for (const auto& cell : result.cells) {
    out += cell.dataset;
    out += '\t';
    out += cell.method;
    out += '\t';
    out += format_param(result.kind, cell.param);
    std::snprintf(buf, sizeof(buf), "\t%.2f\t%.2f\t%.3f\n", cell.acc_mean, cell.acc_std,
                  cell.time_mean_s);
    out += buf;
  }
  return out;
}

std::string report_to_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["dataset"] = result.dataset;
  j["sweep"] = result.kind == SweepKind::learners ? "learners" : "fraction";
  j["folds"] = result.folds;
  j["runs"] = result.runs;
  j["c"] = result.c;
  j["seeds"] = result.seeds;
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& cell : result.cells) {
    nlohmann::ordered_json c;
    c["dataset"] = cell.dataset;
    c["method"] = cell.method;
    if (result.kind == SweepKind::learners) {
      c["param"] = static_cast<std::uint64_t>(cell.param);
    } else {
      c["param"] = round_to(cell.param, 2);
    }
    c["acc_mean"] = round_to(cell.acc_mean, 2);
    c["acc_std"] = round_to(cell.acc_std, 2);
    c["time_mean_s"] = round_to(cell.time_mean_s, 3);
    j["cells"].push_back(std::move(c));
  }
  return j.dump(2) + "\n";
}

void emit_report(const ExperimentResult& result, OutFormat format, const std::string& path) {
  write_file(path, format == OutFormat::tsv ? report_to_tsv(result) : report_to_json(result));
}

}  // namespace adasvm
