#include "champrec/mastery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "champrec/error.hpp"
#include "champrec/fit.hpp"
#include "champrec/robust.hpp"

namespace champrec {

double direct_mastery_raw(double points, double level, double games, double recency_mass) {
    return 0.55 * std::log1p(points) + 0.15 * level + 0.20 * std::log1p(games) + 0.10 * recency_mass;
}

double direct_performance_raw(double mean_row_score, std::optional<double> mean_win) {
    return 0.65 * mean_row_score + 0.35 * (mean_win.value_or(0.5) - 0.5);
}

double indirect_familiarity(std::span<const double> candidate,
                            std::span<const MasteredChampion> mastered, std::size_t topk) {
    if (mastered.empty() || topk == 0) return 0.0;
    std::vector<double> sims;
    sims.reserve(mastered.size());
    for (const auto& m : mastered) sims.push_back(m.eta * std::max(0.0, cosine(candidate, m.vector)));
    std::size_t k = std::min(topk, sims.size());
    std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(k), sims.end(),
                      std::greater<>());
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) total += sims[i];
    return total / static_cast<double>(k);
}

MasteryResult mastery_signals(std::span<const Vec> candidates,
                              std::span<const CandidateEvidence> evidence,
                              const MasteryOptions& options) {
    if (candidates.size() != evidence.size()) {
        throw Error(ErrorCode::InvalidArgument, "candidates and mastery evidence differ in length");
    }
    MasteryResult out;
    const std::size_t n = candidates.size();
    out.signals.resize(n);
    if (n == 0) return out;

    std::vector<double> direct_raw(n);
    std::vector<double> perf_raw(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto& ev = evidence[c];
        auto& s = out.signals[c];
        s.direct_raw = direct_mastery_raw(ev.mastery.points, ev.mastery.level, ev.mastery.games,
                                          ev.recency_mass);
        s.perf_raw = direct_performance_raw(ev.mean_row_score, ev.mean_win);
        s.mean_row_score = ev.mean_row_score;
        s.mean_win = ev.mean_win;
        direct_raw[c] = s.direct_raw;
        perf_raw[c] = s.perf_raw;
        if (s.direct_raw > 0.0) out.mastered.push_back(c);
    }
    auto direct = rank_scale(direct_raw);
    auto perf = rank_scale(perf_raw);

    std::vector<MasteredChampion> mastered;
    if (!out.mastered.empty()) {
        std::vector<double> mastered_raw;
        for (auto c : out.mastered) mastered_raw.push_back(direct_raw[c]);
        auto eta = rank_scale(mastered_raw);
        for (std::size_t i = 0; i < out.mastered.size(); ++i) {
            double e = std::max(eta[i], options.weight_floor);
            out.eta.push_back(e);
            mastered.push_back({candidates[out.mastered[i]], e});
        }
    }

    std::vector<double> indirect_raw(n);
    for (std::size_t c = 0; c < n; ++c) {
        indirect_raw[c] = indirect_familiarity(candidates[c], mastered, options.topk);
    }
    auto indirect = rank_scale(indirect_raw);

    for (std::size_t c = 0; c < n; ++c) {
        auto& s = out.signals[c];
        s.direct = direct[c];
        s.perf = perf[c];
        s.indirect_raw = indirect_raw[c];
        s.indirect = indirect[c];
        s.combined = kDirectBlend * s.direct + kIndirectBlend * s.indirect;
    }
    return out;
}

} // namespace champrec
