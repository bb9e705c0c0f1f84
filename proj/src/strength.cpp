#include "champrec/strength.hpp"

#include <cmath>

#include "champrec/error.hpp"
#include "champrec/robust.hpp"

namespace champrec {

double strength_raw(std::span<const double> normalized, std::span<const double> weights) {
    if (normalized.size() != weights.size()) {
        throw Error(ErrorCode::InvalidArgument, "strength vector and weights differ in length");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * normalized[j];
    return s;
}

std::vector<StrengthScore> strength_scores(const std::vector<std::string>& champions,
                                           std::span<const double> raw) {
    if (champions.size() != raw.size()) {
        throw Error(ErrorCode::InvalidArgument, "champion list and strengths differ in length");
    }
    std::vector<StrengthScore> out;
    if (raw.empty()) return out;
    auto scaled = rank_scale(raw);
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out.push_back({champions[i], raw[i], scaled[i]});
    return out;
}

double role_aware_score(const RoleAggregate& agg, const ShrinkageConfig& cfg) {
    if (!(agg.n >= 1.0)) throw Error(ErrorCode::InvalidArgument, "role aggregate needs n >= 1");
    auto it = cfg.role_baseline.find(agg.role);
    if (it == cfg.role_baseline.end()) {
        throw Error(ErrorCode::MissingBaseline,
                    "no win-rate baseline for role " + std::string(to_string(agg.role)));
    }
    double shrink = agg.n / (agg.n + cfg.K);
    double skill = shrink * agg.mean_row_score;
    double edge = shrink * (agg.win_rate - it->second);
    double penalty = cfg.lambda * agg.row_score_sd / std::sqrt(agg.n);
    return skill + cfg.beta * edge - penalty;
}

double beta_binomial_mean(double wins, double games, double alpha0, double beta0) {
    if (wins < 0 || games < 0 || wins > games) {
        throw Error(ErrorCode::InvalidCounts, "wins must lie in [0, games]");
    }
    if (!(alpha0 > 0) || !(beta0 > 0)) {
        throw Error(ErrorCode::InvalidArgument, "beta prior parameters must be positive");
    }
    return (alpha0 + wins) / (alpha0 + beta0 + games);
}

Vec role_feature_weights(Role role, const FeatureSchema& schema) {
    static const std::map<Role, std::vector<std::string>> emphasis{
        {Role::Top,
         {"damagePerMinute", "cs_per_min", "deaths_per_min", "damageDealtToBuildings",
          "totalDamageTaken"}},
        {Role::Jungle,
         {"killParticipation", "damageDealtToObjectives", "visionScorePerMinute", "deaths_per_min"}},
        {Role::Middle,
         {"damagePerMinute", "goldPerMinute", "cs_per_min", "laneMinionsFirst10Minutes",
          "killParticipation"}},
        {Role::Bottom,
         {"damagePerMinute", "goldPerMinute", "cs_per_min", "laneMinionsFirst10Minutes",
          "deaths_per_min"}},
        {Role::Utility,
         {"visionScorePerMinute", "totalTimeCCDealt", "killParticipation",
          "damageDealtToObjectives"}},
    };

    Vec w(schema.size(), 0.0);
    if (auto it = emphasis.find(role); it != emphasis.end()) {
        std::size_t hits = 0;
        for (const auto& name : it->second) {
            if (auto idx = schema.index_of(name)) {
                w[*idx] = 1.0;
                ++hits;
            }
        }
        if (hits > 0) {
            for (auto& v : w) v /= static_cast<double>(hits);
            return w;
        }
    }
    for (std::size_t j = 0; j < schema.size(); ++j) w[j] = schema[j].strength_weight;
    return w;
}

namespace {

std::optional<double> effective_win_rate(const ChampionVector& c) {
    if (c.win_rate) return c.win_rate;
    if (c.wins && c.games && *c.games > 0) return *c.wins / *c.games;
    return std::nullopt;
}

} // namespace

std::map<Role, double> role_baselines(const std::vector<ChampionVector>& population) {
    std::map<Role, double> sum, count;
    for (const auto& c : population) {
        if (auto p = effective_win_rate(c)) {
            sum[c.role] += *p;
            count[c.role] += 1.0;
        }
    }
    std::map<Role, double> out;
    for (Role r : kPlayableRoles) out[r] = count[r] > 0 ? sum[r] / count[r] : 0.5;
    out[Role::Unknown] = count[Role::Unknown] > 0 ? sum[Role::Unknown] / count[Role::Unknown] : 0.5;
    return out;
}

bool role_mode_available(const std::vector<ChampionVector>& population) {
    if (population.empty()) return false;
    for (const auto& c : population) {
        if (c.role == Role::Unknown || !c.games || *c.games < 1.0) return false;
        if (!c.win_rate && !c.wins) return false;
    }
    return true;
}

} // namespace champrec
