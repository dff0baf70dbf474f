#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "adasvm/dataset.hpp"
#include "adasvm/pipeline.hpp"

namespace adasvm {

enum class Method { adaboost, hybrid, both };
enum class OutFormat { tsv, json };

// `wall` records real train+predict seconds; `none` writes zeros so that
// repeated runs of the same config produce byte-identical files.
enum class TimeMode { wall, none };

struct ExperimentConfig {
  std::string data_path;
  DataFormat format = DataFormat::libsvm;
  Method method = Method::both;
  std::vector<std::size_t> learners;
  double c = 1.0;
  std::size_t folds = 10;
  std::size_t runs = 5;
  std::uint64_t seed = 0;
  std::vector<double> fractions;
  std::string out_path;
  OutFormat out_format = OutFormat::tsv;
  double tol = kDefaultSvmTol;
  TimeMode time_mode = TimeMode::wall;
};

enum class SweepKind { learners, fraction };

// One table cell: mean/std of accuracy (%) over all test evaluations and
// the mean train+predict seconds per run.
struct CellResult {
  std::string dataset;
  std::string method;
  double param = 0.0;  // learner count or training fraction
  double acc_mean = 0.0;
  double acc_std = 0.0;
  double time_mean_s = 0.0;
};

struct ExperimentResult {
  SweepKind kind = SweepKind::learners;
  std::string dataset;
  std::vector<CellResult> cells;       // sorted by (dataset, method, param)
  std::vector<std::uint64_t> seeds;    // one per run
  std::size_t folds = 0;
  std::size_t runs = 0;
  double c = 1.0;
};

// Repeated stratified k-fold cross-validation over every configured
// learner count. Run r uses fold seed config.seed + r; a cell averages
// exactly runs x folds test evaluations.
ExperimentResult run_learner_sweep(const Dataset& data, const ExperimentConfig& config);

// Per fraction: one fraction_split per run seed, train and test once.
// Uses a single learner count (the one configured value).
ExperimentResult run_fraction_sweep(const Dataset& data, const ExperimentConfig& config);

std::string report_to_tsv(const ExperimentResult& result);
std::string report_to_json(const ExperimentResult& result);

// Writes the report; stable column order, deterministic bytes for a
// fixed result.
void emit_report(const ExperimentResult& result, OutFormat format, const std::string& path);

}  // namespace adasvm
