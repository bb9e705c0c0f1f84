#include "champrec/fit.hpp"

#include <algorithm>
#include <cmath>

#include "champrec/error.hpp"
#include "champrec/robust.hpp"

namespace champrec {

Vec column_sd(std::span<const Vec> rows) {
    if (rows.empty()) return {};
    const std::size_t d = rows.front().size();
    const double n = static_cast<double>(rows.size());
    Vec mean(d, 0.0), sd(d, 0.0);
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < d; ++j) mean[j] += r[j];
    }
    for (auto& m : mean) m /= n;
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < d; ++j) sd[j] += (r[j] - mean[j]) * (r[j] - mean[j]);
    }
    for (auto& s : sd) s = std::sqrt(s / n);
    return sd;
}

AttentionWeights attention_weights(std::span<const double> sigma, std::span<const double> u_game,
                                   double alpha) {
    if (sigma.size() != u_game.size()) {
        throw Error(ErrorCode::InvalidArgument, "feature dispersion and player vector differ in length");
    }
    if (sigma.empty()) throw Error(ErrorCode::EmptyInput, "attention over zero features");
    AttentionWeights out;
    out.alpha = alpha;
    out.sigma.assign(sigma.begin(), sigma.end());
    out.weights.resize(sigma.size());
    double total = 0.0;
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        out.weights[j] = sigma[j] * (1.0 + alpha * std::abs(u_game[j]));
        total += out.weights[j];
    }
    if (!(total > 0.0)) {
        out.degenerate = true;
        std::fill(out.weights.begin(), out.weights.end(), 1.0 / static_cast<double>(sigma.size()));
        return out;
    }
    for (auto& w : out.weights) w /= total;
    return out;
}

AttentionWeights attention_weights(std::span<const Vec> population, std::span<const double> u_game,
                                   double alpha) {
    auto sigma = column_sd(population);
    return attention_weights(std::span<const double>(sigma), u_game, alpha);
}

double weighted_cosine(std::span<const double> a, std::span<const double> b,
                       std::span<const double> w) {
    if (a.size() != b.size() || a.size() != w.size()) {
        throw Error(ErrorCode::InvalidArgument, "cosine operands differ in length");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        dot += w[j] * a[j] * b[j];
        na += w[j] * a[j] * a[j];
        nb += w[j] * b[j] * b[j];
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    if (na < kZeroNorm || nb < kZeroNorm) return 0.0;
    return std::clamp(dot / (na * nb), -1.0, 1.0);
}

double cosine(std::span<const double> a, std::span<const double> b) {
    Vec ones(a.size(), 1.0);
    return weighted_cosine(a, b, ones);
}

double fit_raw(std::span<const double> u_game, std::span<const double> u_pool,
               std::span<const double> candidate, std::span<const double> w, FitBlend blend) {
    return blend.game * weighted_cosine(u_game, candidate, w) +
           blend.pool * weighted_cosine(u_pool, candidate, w);
}

FitScores fit_scores(std::span<const Vec> candidates, std::span<const double> u_game,
                     std::span<const double> u_pool, std::span<const double> w, FitBlend blend) {
    FitScores out;
    if (candidates.empty()) return out;
    out.raw.reserve(candidates.size());
    for (const auto& x : candidates) out.raw.push_back(fit_raw(u_game, u_pool, x, w, blend));
    out.scaled = rank_scale(out.raw);
    return out;
}

} // namespace champrec
