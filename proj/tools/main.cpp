// Benchmark harness CLI: cross-validation sweeps, training-fraction
// sweeps, single-model train/eval and margin diagnostics.

#include <cstdio>
#include <exception>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "adasvm/bench.hpp"
#include "adasvm/margins.hpp"
#include "adasvm/serialization.hpp"

namespace {

using namespace adasvm;

struct CommonFlags {
  std::string data_path;
  std::string format = "libsvm";
  std::string method = "both";
  std::vector<std::size_t> learners;
  double c = 1.0;
  std::size_t folds = 10;
  std::size_t runs = 5;
  std::uint64_t seed = 0;
  std::vector<double> fractions;
  std::string out_path;
  std::string out_format = "tsv";
  double tol = kDefaultSvmTol;
  std::string time_mode = "wall";
};

DataFormat parse_format(const std::string& s) {
  if (s == "libsvm") return DataFormat::libsvm;
  if (s == "csv") return DataFormat::csv;
  throw CLI::ValidationError("--format must be libsvm or csv");
}

Method parse_method(const std::string& s) {
  if (s == "adaboost") return Method::adaboost;
  if (s == "hybrid") return Method::hybrid;
  if (s == "both") return Method::both;
  throw CLI::ValidationError("--method must be adaboost, hybrid or both");
}

OutFormat parse_out_format(const std::string& s) {
  if (s == "tsv") return OutFormat::tsv;
  if (s == "json") return OutFormat::json;
  throw CLI::ValidationError("--out-format must be tsv or json");
}

TimeMode parse_time_mode(const std::string& s) {
  if (s == "wall") return TimeMode::wall;
  if (s == "none") return TimeMode::none;
  throw CLI::ValidationError("--time-mode must be wall or none");
}

ExperimentConfig to_config(const CommonFlags& flags) {
  ExperimentConfig config;
  config.data_path = flags.data_path;
  config.format = parse_format(flags.format);
  config.method = parse_method(flags.method);
  config.learners = flags.learners;
  config.c = flags.c;
  config.folds = flags.folds;
  config.runs = flags.runs;
  config.seed = flags.seed;
  config.fractions = flags.fractions;
  config.out_path = flags.out_path;
  config.out_format = parse_out_format(flags.out_format);
  config.tol = flags.tol;
  config.time_mode = parse_time_mode(flags.time_mode);
  return config;
}

void add_data_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--data", flags.data_path, "dataset file")->required();
  cmd->add_option("--format", flags.format, "dataset format: libsvm or csv")
      ->default_val("libsvm");
}

void add_sweep_flags(CLI::App* cmd, CommonFlags& flags) {
  add_data_flags(cmd, flags);
  cmd->add_option("--method", flags.method, "adaboost, hybrid or both")->default_val("both");
  cmd->add_option("--c", flags.c, "soft-margin penalty for the hybrid")->default_val(1.0);
  cmd->add_option("--folds", flags.folds, "cross-validation folds")->default_val(10);
  cmd->add_option("--runs", flags.runs, "repetitions; run r uses seed+r")->default_val(5);
  cmd->add_option("--seed", flags.seed, "base seed")->default_val(0);
  cmd->add_option("--out", flags.out_path, "report path")->required();
  cmd->add_option("--out-format", flags.out_format, "tsv or json")->default_val("tsv");
  cmd->add_option("--tol", flags.tol, "SVM KKT tolerance")->default_val(kDefaultSvmTol);
  cmd->add_option("--time-mode", flags.time_mode,
                  "wall (measure) or none (zeros, byte-reproducible reports)")
      ->default_val("wall");
}

int run_sweep_learners(const CommonFlags& flags) {
  ExperimentConfig config = to_config(flags);
  Dataset data = load_dataset(config.data_path, config.format);
  ExperimentResult result = run_learner_sweep(data, config);
  emit_report(result, config.out_format, config.out_path);
  std::printf("wrote %s (%zu cells)\n", config.out_path.c_str(), result.cells.size());
  return 0;
}

int run_sweep_fraction(const CommonFlags& flags) {
  ExperimentConfig config = to_config(flags);
  Dataset data = load_dataset(config.data_path, config.format);
  ExperimentResult result = run_fraction_sweep(data, config);
  emit_report(result, config.out_format, config.out_path);
  std::printf("wrote %s (%zu cells)\n", config.out_path.c_str(), result.cells.size());
  return 0;
}

int run_train(const CommonFlags& flags) {
  if (flags.learners.size() != 1) {
    throw CLI::ValidationError("train needs exactly one --learners value");
  }
  Dataset data = load_dataset(flags.data_path, parse_format(flags.format));
  const Method method = parse_method(flags.method);
  std::string json;
  if (method == Method::adaboost) {
    json = to_json(train_adaboost(data, flags.learners.front()));
  } else if (method == Method::hybrid) {
    HybridOptions options;
    options.learners = flags.learners.front();
    options.c = flags.c;
    options.tol = flags.tol;
    json = to_json(train_hybrid(data, options));
  } else {
    throw CLI::ValidationError("train needs --method adaboost or hybrid");
  }
  write_file(flags.out_path, json);
  std::printf("wrote %s\n", flags.out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AdaBoost decision-stump ensembles, the stump-feature SVM hybrid, "
               "and margin diagnostics"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string model_path;

  auto* sweep_learners = app.add_subcommand(
      "sweep-learners", "cross-validated accuracy vs number of weak learners");
  add_sweep_flags(sweep_learners, flags);
  sweep_learners->add_option("--learners", flags.learners, "comma-separated learner counts")
      ->required()
      ->delimiter(',');

  auto* sweep_fraction = app.add_subcommand(
      "sweep-fraction", "accuracy vs training fraction at a fixed learner count");
  add_sweep_flags(sweep_fraction, flags);
  sweep_fraction->add_option("--learners", flags.learners, "single learner count")
      ->required()
      ->delimiter(',');
  sweep_fraction->add_option("--fractions", flags.fractions, "comma-separated fractions in (0,1)")
      ->required()
      ->delimiter(',');

  auto* train = app.add_subcommand("train", "train one model on the whole dataset");
  add_data_flags(train, flags);
  train->add_option("--method", flags.method, "adaboost or hybrid")->required();
  train->add_option("--learners", flags.learners, "learner count")->required()->delimiter(',');
  train->add_option("--c", flags.c, "soft-margin penalty (hybrid)")->default_val(1.0);
  train->add_option("--tol", flags.tol, "SVM KKT tolerance")->default_val(kDefaultSvmTol);
  train->add_option("--out", flags.out_path, "model JSON path")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a saved model on a dataset");
  add_data_flags(eval, flags);
  eval->add_option("--model", model_path, "model JSON path")->required();

  auto* margins_cmd =
      app.add_subcommand("margins", "train AdaBoost and export margin diagnostics");
  add_data_flags(margins_cmd, flags);
  margins_cmd->add_option("--learners", flags.learners, "learner count")
      ->required()
      ->delimiter(',');
  margins_cmd->add_option("--out", flags.out_path, "report path")->required();
  margins_cmd->add_option("--out-format", flags.out_format, "tsv or json")->default_val("tsv");

  auto* make_monk1 = app.add_subcommand(
      "make-monk1", "write the monk1 truth table (432 samples, 6 attributes)");
  make_monk1->add_option("--out", flags.out_path, "output path")->required();
  make_monk1->add_option("--format", flags.format, "libsvm or csv")->default_val("libsvm");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_learners->parsed()) return run_sweep_learners(flags);
    if (sweep_fraction->parsed()) return run_sweep_fraction(flags);
    if (train->parsed()) return run_train(flags);
    if (eval->parsed()) {
      Dataset data = load_dataset(flags.data_path, parse_format(flags.format));
      AnyModel model = model_from_json(read_file(model_path));
      std::size_t correct = 0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        auto x = data.features.row(i);
        const int predicted =
            std::holds_alternative<AdaBoostModel>(model)
                ? ensemble_predict(std::get<AdaBoostModel>(model), x)
                : hybrid_predict(std::get<HybridModel>(model), x);
        if (predicted == data.labels[i]) ++correct;
      }
      std::printf("accuracy=%.2f%% (%zu/%zu)\n",
                  100.0 * static_cast<double>(correct) / static_cast<double>(data.size()),
                  correct, data.size());
      return 0;
    }
    if (margins_cmd->parsed()) {
      if (flags.learners.size() != 1) {
        throw CLI::ValidationError("margins needs exactly one --learners value");
      }
      Dataset data = load_dataset(flags.data_path, parse_format(flags.format));
      AdaBoostModel model = train_adaboost(data, flags.learners.front());
      MarginReport report = normalized_margins(model, data);
      const std::string text = parse_out_format(flags.out_format) == OutFormat::tsv
                                   ? margin_report_to_tsv(report)
                                   : margin_report_to_json(report, model);
      write_file(flags.out_path, text);
      std::printf("wrote %s (min margin %.6f)\n", flags.out_path.c_str(), report.min_margin);
      return 0;
    }
    if (make_monk1->parsed()) {
      Dataset data = adasvm::make_monk1();
      write_file(flags.out_path, parse_format(flags.format) == DataFormat::libsvm
                                     ? serialize_libsvm(data)
                                     : serialize_csv(data));
      std::printf("wrote %s (%zu samples)\n", flags.out_path.c_str(), data.size());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
