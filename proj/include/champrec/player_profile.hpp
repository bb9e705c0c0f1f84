#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "champrec/data_model.hpp"

namespace champrec {

inline constexpr double kDefaultRho = 0.18;
inline constexpr double kDefaultWeightFloor = 0.05;

struct PlayerVectors {
    Vec u_game;
    Vec u_pool;
    std::vector<double> recency_weights;
    std::map<std::string, double> recency_mass;
    double rho = kDefaultRho;
};

/// Softmax recency weights exp(-rho (T - i)); the last game is heaviest.
std::vector<double> recency_weights(std::size_t count, double rho);
std::vector<double> uniform_weights(std::size_t count);

/// Weighted sum of the history rows.
Vec recent_game_vector(std::span<const Vec> rows, std::span<const double> weights);

/// Log-points, level, and log-games blend used to weight the champion pool.
double pool_weight_raw(const MasteryRecord& record);

/// One played champion's mean row vector and its pool weight source.
struct PoolMember {
    std::string champion;
    Vec mean_row;
    MasteryRecord mastery;
};

/// Mastery-weighted mean of per-champion row means. Weights are rank-scaled
/// across the members and floored at `floor`.
Vec pool_vector(std::span<const PoolMember> members, double floor = kDefaultWeightFloor);

/// Groups rows by champion (first-appearance order) and averages them.
std::vector<PoolMember> pool_members(std::span<const std::string> champions,
                                     std::span<const Vec> rows,
                                     const std::map<std::string, MasteryRecord>& mastery);

/// Total recency weight landing on each champion.
std::map<std::string, double> recency_mass(std::span<const std::string> champions,
                                           std::span<const double> weights);

} // namespace champrec
