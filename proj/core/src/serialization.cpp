#include "adasvm/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace adasvm {

namespace {

using json = nlohmann::ordered_json;

json stumps_to_json(const std::vector<DecisionStump>& stumps, const std::vector<double>& alphas) {
  json arr = json::array();
  for (std::size_t t = 0; t < stumps.size(); ++t) {
    arr.push_back({{"feature", stumps[t].feature},
                   {"threshold", stumps[t].threshold},
                   {"polarity", stumps[t].polarity},
                   {"alpha", alphas[t]}});
  }
  return arr;
}

json rounds_to_json(const std::vector<RoundRecord>& rounds) {
  json arr = json::array();
  for (const auto& r : rounds) {
    arr.push_back({{"epsilon", r.epsilon},
                   {"epsilon_clamped", r.epsilon_clamped},
                   {"alpha", r.alpha},
                   {"gamma", r.gamma},
                   {"z", r.z},
                   {"train_error", r.train_error},
                   {"clamped", r.clamped}});
  }
  return arr;
}

std::vector<RoundRecord> rounds_from_json(const json& arr) {
  std::vector<RoundRecord> rounds;
  for (const auto& e : arr) {
    RoundRecord r;
    r.epsilon = e.at("epsilon").get<double>();
    r.epsilon_clamped = e.at("epsilon_clamped").get<double>();
    r.alpha = e.at("alpha").get<double>();
    r.gamma = e.at("gamma").get<double>();
    r.z = e.at("z").get<double>();
    r.train_error = e.at("train_error").get<double>();
    r.clamped = e.at("clamped").get<bool>();
    rounds.push_back(r);
  }
  return rounds;
}

json adaboost_to_json_obj(const AdaBoostModel& model) {
  json j;
  j["version"] = "adaboost-v1";
  j["n_features"] = model.n_features;
  j["stumps"] = stumps_to_json(model.stumps, model.alphas);
  j["rounds"] = rounds_to_json(model.rounds);
  return j;
}

AdaBoostModel adaboost_from_json_obj(const json& j) {
  if (j.at("version").get<std::string>() != "adaboost-v1") {
    throw std::runtime_error("expected an adaboost-v1 model");
  }
  AdaBoostModel model;
  model.n_features = j.at("n_features").get<std::size_t>();
  for (const auto& e : j.at("stumps")) {
    model.stumps.push_back(DecisionStump{e.at("feature").get<int>(),
                                         e.at("threshold").get<double>(),
                                         e.at("polarity").get<int>()});
    model.alphas.push_back(e.at("alpha").get<double>());
  }
  model.rounds = rounds_from_json(j.at("rounds"));
  if (model.stumps.empty()) throw std::runtime_error("model has no stumps");
  return model;
}

json svm_to_json_obj(const SvmModel& model) {
  json j;
  j["version"] = "svm-v1";
  j["beta"] = model.beta;
  j["bias"] = model.bias;
  // +inf marks a hard-margin model; JSON has no inf literal.
  if (std::isfinite(model.c_value)) {
    j["c_value"] = model.c_value;
  } else {
    j["c_value"] = "inf";
  }
  j["converged"] = model.converged;
  j["report"] = {{"primal_objective", model.report.primal_objective},
                 {"dual_objective", model.report.dual_objective},
                 {"duality_gap", model.report.duality_gap},
                 {"max_kkt_violation", model.report.max_kkt_violation},
                 {"iterations", model.report.iterations}};
  return j;
}

SvmModel svm_from_json_obj(const json& j) {
  if (j.at("version").get<std::string>() != "svm-v1") {
    throw std::runtime_error("expected an svm-v1 model");
  }
  SvmModel model;
  model.beta = j.at("beta").get<std::vector<double>>();
  model.bias = j.at("bias").get<double>();
  const auto& c = j.at("c_value");
  model.c_value =
      c.is_string() ? std::numeric_limits<double>::infinity() : c.get<double>();
  model.converged = j.at("converged").get<bool>();
  const auto& r = j.at("report");
  model.report.primal_objective = r.at("primal_objective").get<double>();
  model.report.dual_objective = r.at("dual_objective").get<double>();
  model.report.duality_gap = r.at("duality_gap").get<double>();
  model.report.max_kkt_violation = r.at("max_kkt_violation").get<double>();
  model.report.iterations = r.at("iterations").get<std::uint64_t>();
  return model;
}

json hybrid_to_json_obj(const HybridModel& model) {
  AdaBoostModel boost;
  boost.stumps = model.feature_map.stumps;
  boost.alphas.assign(model.feature_map.stumps.size(), 0.0);
  for (std::size_t t = 0; t < model.provenance.rounds.size() && t < boost.alphas.size(); ++t) {
    boost.alphas[t] = model.provenance.rounds[t].alpha;
  }
  boost.rounds = model.provenance.rounds;
  boost.n_features = model.feature_map.input_features;

  json j;
  j["version"] = "hybrid-v1";
  j["adaboost"] = adaboost_to_json_obj(boost);
  j["svm"] = svm_to_json_obj(model.svm);
  j["provenance"] = {
      {"learners", model.provenance.learners},
      {"c", model.provenance.c},
      {"requested_mode",
       model.provenance.requested_mode == MarginMode::soft ? "soft" : "hard_then_soft"},
      {"used_hard_margin", model.provenance.used_hard_margin},
      {"svm_converged", model.provenance.svm_converged}};
  return j;
}

HybridModel hybrid_from_json_obj(const json& j) {
  if (j.at("version").get<std::string>() != "hybrid-v1") {
    throw std::runtime_error("expected a hybrid-v1 model");
  }
  HybridModel model;
  AdaBoostModel boost = adaboost_from_json_obj(j.at("adaboost"));
  model.feature_map = FeatureMap{std::move(boost.stumps), boost.n_features};
  model.svm = svm_from_json_obj(j.at("svm"));
  const auto& p = j.at("provenance");
  model.provenance.learners = p.at("learners").get<std::size_t>();
  model.provenance.c = p.at("c").get<double>();
  model.provenance.requested_mode = p.at("requested_mode").get<std::string>() == "soft"
                                        ? MarginMode::soft
                                        : MarginMode::hard_then_soft;
  model.provenance.used_hard_margin = p.at("used_hard_margin").get<bool>();
  model.provenance.svm_converged = p.at("svm_converged").get<bool>();
  model.provenance.rounds = boost.rounds;
  if (model.svm.beta.size() != model.feature_map.stumps.size()) {
    throw std::runtime_error("beta length does not match the stump count");
  }
  return model;
}

}  // namespace

std::string to_json(const AdaBoostModel& model) { return adaboost_to_json_obj(model).dump(2) + "\n"; }
std::string to_json(const SvmModel& model) { return svm_to_json_obj(model).dump(2) + "\n"; }
std::string to_json(const HybridModel& model) { return hybrid_to_json_obj(model).dump(2) + "\n"; }

std::string to_json(const FoldPlan& plan) {
  json j;
  j["k"] = plan.k;
  j["seed"] = plan.seed;
  j["assignments"] = plan.assignments;
  return j.dump(2) + "\n";
}

AdaBoostModel adaboost_from_json(const std::string& text) {
  return adaboost_from_json_obj(json::parse(text));
}
SvmModel svm_from_json(const std::string& text) { return svm_from_json_obj(json::parse(text)); }
HybridModel hybrid_from_json(const std::string& text) {
  return hybrid_from_json_obj(json::parse(text));
}

AnyModel model_from_json(const std::string& text) {
  json j = json::parse(text);
  const std::string version = j.at("version").get<std::string>();
  if (version == "adaboost-v1") return adaboost_from_json_obj(j);
  if (version == "hybrid-v1") return hybrid_from_json_obj(j);
  throw std::runtime_error("unknown model version '" + version + "'");
}

std::string margin_report_to_tsv(const MarginReport& report) {
  std::string out = "sample\tmargin\n";
  char buf[64];
  for (std::size_t i = 0; i < report.margins.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu\t%.9f\n", i, report.margins[i]);
    out += buf;
  }
  return out;
}

std::string margin_report_to_json(const MarginReport& report, const AdaBoostModel& model) {
  json j;
  j["min_margin"] = report.min_margin;
  j["cdf"] = json::array();
  for (auto [theta, p] : report.cdf) {
    j["cdf"].push_back({{"theta", theta}, {"p", p}});
  }

  bool all_unclamped = !model.rounds.empty();
  std::vector<double> epsilons;
  for (const auto& r : model.rounds) {
    if (r.clamped) all_unclamped = false;
    epsilons.push_back(r.epsilon);
  }
  // The bound needs every epsilon strictly inside (0, 0.5); clamped
  // rounds have no finite bound value, so the curve is omitted.
  if (all_unclamped) {
    j["schapire_bound"] = json::array();
    for (auto [theta, p] : report.cdf) {
      j["schapire_bound"].push_back({{"theta", theta}, {"bound", schapire_bound(epsilons, theta)}});
    }
  } else {
    j["schapire_bound"] = nullptr;
  }
  j["margins"] = report.margins;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace adasvm
