#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "champrec/scoring.hpp"

namespace champrec {

/// Exit codes: 0 success, 1 validation error, 2 source error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fixed-width text table with the columns Champion, Type, Final, Win proxy,
/// Fit, Mastery, Guardrail, Similarity.
std::string recommendation_table(const std::vector<Recommendation>& recs);

} // namespace champrec
