#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "champrec/data_model.hpp"

namespace champrec {

inline constexpr std::size_t kDefaultTopK = 3;
inline constexpr double kDirectBlend = 0.70;
inline constexpr double kIndirectBlend = 0.30;

double direct_mastery_raw(double points, double level, double games, double recency_mass);

/// Absent win labels count as 0.5, so the win-edge term vanishes.
double direct_performance_raw(double mean_row_score, std::optional<double> mean_win);

struct MasteredChampion {
    Vec vector;
    double eta = 1.0;
};

/// Mean of the top-k values of eta_m * max(0, cos(x_c, x_m)). Empty input
/// gives 0.
double indirect_familiarity(std::span<const double> candidate,
                            std::span<const MasteredChampion> mastered, std::size_t topk);

/// What the player's record says about one candidate.
struct CandidateEvidence {
    MasteryRecord mastery;       // points/level/games; zeros when unknown
    double recency_mass = 0.0;   // A_c
    double mean_row_score = 0.0; // R_c over the player's rows on c
    std::optional<double> mean_win;
    bool played = false;         // at least one history row on c
};

struct MasterySignals {
    double direct_raw = 0.0;
    double direct = 0.5;
    double perf_raw = 0.0;
    double perf = 0.5;
    double indirect_raw = 0.0;
    double indirect = 0.5;
    double combined = 0.5;
    double mean_row_score = 0.0;
    std::optional<double> mean_win;
};

struct MasteryOptions {
    std::size_t topk = kDefaultTopK;
    double weight_floor = 0.05;
};

struct MasteryResult {
    std::vector<MasterySignals> signals; // aligned with candidates
    std::vector<std::size_t> mastered;   // candidate indices with direct_raw > 0
    std::vector<double> eta;             // aligned with `mastered`
};

/// Direct, performance, and indirect signals rank-scaled across candidates,
/// plus the 0.70/0.30 combination.
MasteryResult mastery_signals(std::span<const Vec> candidates,
                              std::span<const CandidateEvidence> evidence,
                              const MasteryOptions& options = {});

} // namespace champrec
