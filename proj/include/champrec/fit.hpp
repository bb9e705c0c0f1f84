#pragma once

#include <span>
#include <vector>

#include "champrec/data_model.hpp"

namespace champrec {

inline constexpr double kDefaultAlpha = 0.75;
inline constexpr double kGameBlend = 0.55;
inline constexpr double kPoolBlend = 0.45;
/// Weighted norms below this are treated as zero vectors.
inline constexpr double kZeroNorm = 1e-12;

struct AttentionWeights {
    Vec weights;
    Vec sigma;
    double alpha = kDefaultAlpha;
    bool degenerate = false; // every sigma was zero; weights are uniform
};

/// Population standard deviation (divide by n) of each column.
Vec column_sd(std::span<const Vec> rows);

/// q_j = sigma_j (1 + alpha |u_game_j|), normalized to sum to one.
AttentionWeights attention_weights(std::span<const double> sigma, std::span<const double> u_game,
                                   double alpha = kDefaultAlpha);
AttentionWeights attention_weights(std::span<const Vec> population, std::span<const double> u_game,
                                   double alpha = kDefaultAlpha);

/// Cosine under a diagonal feature weighting. Returns 0 if either weighted
/// norm vanishes.
double weighted_cosine(std::span<const double> a, std::span<const double> b,
                       std::span<const double> w);
double cosine(std::span<const double> a, std::span<const double> b);

struct FitBlend {
    double game = kGameBlend;
    double pool = kPoolBlend;
};

double fit_raw(std::span<const double> u_game, std::span<const double> u_pool,
               std::span<const double> candidate, std::span<const double> w,
               FitBlend blend = {});

struct FitScores {
    std::vector<double> raw;
    std::vector<double> scaled;
};

/// Raw fit per candidate, rank-scaled across candidates.
FitScores fit_scores(std::span<const Vec> candidates, std::span<const double> u_game,
                     std::span<const double> u_pool, std::span<const double> w,
                     FitBlend blend = {});

} // namespace champrec
