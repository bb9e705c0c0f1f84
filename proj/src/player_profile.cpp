#include "champrec/player_profile.hpp"

#include <cmath>

#include "champrec/error.hpp"
#include "champrec/robust.hpp"

namespace champrec {

std::vector<double> recency_weights(std::size_t count, double rho) {
    if (count == 0) throw Error(ErrorCode::EmptyHistory, "recency weights need at least one game");
    if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "recency decay must be positive");
    std::vector<double> w(count);
    double total = 0.0;
    // Exponents are <= 0, so the newest game contributes exp(0) and nothing overflows.
    for (std::size_t i = 0; i < count; ++i) {
        w[i] = std::exp(-rho * static_cast<double>(count - 1 - i));
        total += w[i];
    }
    for (auto& v : w) v /= total;
    return w;
}

std::vector<double> uniform_weights(std::size_t count) {
    if (count == 0) throw Error(ErrorCode::EmptyHistory, "recency weights need at least one game");
    return std::vector<double>(count, 1.0 / static_cast<double>(count));
}

Vec recent_game_vector(std::span<const Vec> rows, std::span<const double> weights) {
    if (rows.empty()) throw Error(ErrorCode::EmptyHistory, "player history is empty");
    if (rows.size() != weights.size()) {
        throw Error(ErrorCode::InvalidArgument, "history rows and recency weights differ in length");
    }
    Vec u(rows.front().size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) u[j] += weights[i] * rows[i][j];
    }
    return u;
}

double pool_weight_raw(const MasteryRecord& record) {
    return 0.60 * std::log1p(record.points) + 0.20 * record.level + 0.20 * std::log1p(record.games);
}

std::vector<PoolMember> pool_members(std::span<const std::string> champions,
                                     std::span<const Vec> rows,
                                     const std::map<std::string, MasteryRecord>& mastery) {
    if (champions.size() != rows.size()) {
        throw Error(ErrorCode::InvalidArgument, "champion labels and rows differ in length");
    }
    std::vector<PoolMember> members;
    std::map<std::string, std::size_t> slot;
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto [it, inserted] = slot.emplace(champions[i], members.size());
        if (inserted) {
            PoolMember m;
            m.champion = champions[i];
            m.mean_row.assign(rows[i].size(), 0.0);
            if (auto mit = mastery.find(champions[i]); mit != mastery.end()) m.mastery = mit->second;
            else m.mastery.champion = champions[i];
            members.push_back(std::move(m));
            counts.push_back(0);
        }
        auto& mean = members[it->second].mean_row;
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += rows[i][j];
        ++counts[it->second];
    }
    for (std::size_t m = 0; m < members.size(); ++m) {
        for (auto& v : members[m].mean_row) v /= static_cast<double>(counts[m]);
    }
    return members;
}

Vec pool_vector(std::span<const PoolMember> members, double floor) {
    if (members.empty()) throw Error(ErrorCode::EmptyHistory, "no played champions for the pool vector");
    std::vector<double> raw;
    raw.reserve(members.size());
    for (const auto& m : members) raw.push_back(pool_weight_raw(m.mastery));
    auto omega = rank_scale(raw);

    Vec u(members.front().mean_row.size(), 0.0);
    double total = 0.0;
    for (std::size_t c = 0; c < members.size(); ++c) {
        double w = std::max(omega[c], floor);
        total += w;
        for (std::size_t j = 0; j < u.size(); ++j) u[j] += w * members[c].mean_row[j];
    }
    for (auto& v : u) v /= total;
    return u;
}

std::map<std::string, double> recency_mass(std::span<const std::string> champions,
                                           std::span<const double> weights) {
    if (champions.size() != weights.size()) {
        throw Error(ErrorCode::InvalidArgument, "champion labels and weights differ in length");
    }
    std::map<std::string, double> mass;
    for (std::size_t i = 0; i < champions.size(); ++i) mass[champions[i]] += weights[i];
    return mass;
}

} // namespace champrec
