#pragma once

#include <string>

#include "champrec/evaluation.hpp"
#include "champrec/scoring.hpp"

namespace champrec {

/// Rounds to six decimal places for serialization.
double round6(double x);

/// `{"recommendations": [...], "metadata": {...}}` with the record fields
/// named as in the published response contract.
std::string recommend_result_json(const RecommendResult& result, int indent = -1);

std::string eval_report_json(const EvalReport& report, int indent = -1);

/// `{"error": {"code": ..., "message": ...}}`
std::string error_json(std::string_view code, std::string_view message);

} // namespace champrec
