#pragma once

#include <string>
#include <variant>

#include "adasvm/adaboost.hpp"
#include "adasvm/dataset.hpp"
#include "adasvm/margins.hpp"
#include "adasvm/pipeline.hpp"
#include "adasvm/svm.hpp"

namespace adasvm {

// JSON model formats carry a version field: "adaboost-v1", "svm-v1",
// "hybrid-v1" (the hybrid embeds the other two).

std::string to_json(const AdaBoostModel& model);
std::string to_json(const SvmModel& model);
std::string to_json(const HybridModel& model);
std::string to_json(const FoldPlan& plan);

AdaBoostModel adaboost_from_json(const std::string& text);
SvmModel svm_from_json(const std::string& text);
HybridModel hybrid_from_json(const std::string& text);

using AnyModel = std::variant<AdaBoostModel, HybridModel>;

// Dispatches on the version field; errors on unknown versions.
AnyModel model_from_json(const std::string& text);

std::string margin_report_to_tsv(const MarginReport& report);
// cdf table, min margin and, when every round is unclamped, the
// Schapire bound curve over the same theta grid.
std::string margin_report_to_json(const MarginReport& report, const AdaBoostModel& model);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace adasvm
