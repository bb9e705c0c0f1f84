#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "champrec/data_model.hpp"
#include "champrec/schema.hpp"

namespace champrec {

struct StrengthScore {
    std::string champion;
    double raw = 0.0;
    double scaled = 0.5;
};

struct RoleAggregate {
    std::string champion;
    Role role = Role::Unknown;
    double n = 0.0;
    double mean_row_score = 0.0;
    double win_rate = 0.0;
    double row_score_sd = 0.0;
};

struct ShrinkageConfig {
    double K = 10.0;
    double beta = 1.0;
    double lambda = 0.5;
    std::map<Role, double> role_baseline;
};

/// Weighted sum of sign-adjusted z-scores; `weights` and `normalized` are
/// aligned.
double strength_raw(std::span<const double> normalized, std::span<const double> weights);

/// Rank-scales raw strengths across the population.
std::vector<StrengthScore> strength_scores(const std::vector<std::string>& champions,
                                           std::span<const double> raw);

/// Shrunken skill plus win-rate edge minus a stability penalty.
double role_aware_score(const RoleAggregate& agg, const ShrinkageConfig& cfg);

/// Posterior mean of a Beta(alpha0, beta0)-Binomial win rate.
double beta_binomial_mean(double wins, double games, double alpha0 = 1.0, double beta0 = 1.0);

/// Per-role feature emphasis over `schema`, summing to one. Emphasized
/// features share the weight equally; Unknown falls back to the schema's
/// strength weights.
Vec role_feature_weights(Role role, const FeatureSchema& schema);

/// Mean population win rate per role; roles with no rows get 0.5.
std::map<Role, double> role_baselines(const std::vector<ChampionVector>& population);

/// True when every population row carries a role, a win rate (or wins), and
/// a game count.
bool role_mode_available(const std::vector<ChampionVector>& population);

} // namespace champrec
