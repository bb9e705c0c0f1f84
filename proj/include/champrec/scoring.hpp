#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "champrec/archetype.hpp"
#include "champrec/config.hpp"
#include "champrec/data_model.hpp"
#include "champrec/robust.hpp"

namespace champrec {

// ---------------------------------------------------------------------------
// Score arithmetic

double confidence(double player_games);

/// Fallback utility for champions the player has little data on.
double fallback_utility(double strength, double fit);

double performance_proxy(double gamma, double perf, double strength, double fit);

double base_score(double win, double fit, double mastery, const ScoreWeights& weights = {});

struct Multipliers {
    double support = 0.0;     // T
    double support_mul = 1.0; // H
    double archetype_mul = 1.0; // A
};

Multipliers support_and_multipliers(double fit, double direct_mastery, double indirect_mastery,
                                    double guardrail, double player_games);

double final_score(double base, double support_mul, double archetype_mul);

// ---------------------------------------------------------------------------
// Records

enum class RecommendationType { ComfortOrKnown, Discovery };

std::string_view to_string(RecommendationType type);

struct Recommendation {
    std::string champion;
    RecommendationType type = RecommendationType::Discovery;
    std::string archetype_name;
    double final_score = 0.0;
    double win_score = 0.0;
    double fit_score = 0.0;
    double mastery_score = 0.0;
    double archetype_guardrail = 0.0;
    double population_strength_score = 0.0;
    double direct_mastery_score = 0.0;
    double indirect_mastery_score = 0.0;
    double player_games = 0.0;
    double similarity_raw = 0.0;

    // Diagnostics not in the public record.
    double performance_score = 0.0; // P_d
    double base = 0.0;              // Q
    Multipliers multipliers;
};

struct RecommendMetadata {
    std::size_t games = 0;
    std::map<std::string, std::size_t> role_mix;
    std::vector<std::string> top_archetypes;
    ScoreWeights weights_used;
    double alpha = kDefaultAlpha;
    double rho = kDefaultRho;
    bool role_mode = false;
    std::size_t candidates = 0;
    std::vector<std::string> warnings;
};

struct RecommendResult {
    std::vector<Recommendation> recommendations;
    RecommendMetadata metadata;
};

// ---------------------------------------------------------------------------
// Pipeline

/// Everything derived from the population table alone: normalization,
/// strength, feature dispersion, and archetypes. Immutable once built and
/// shared by every player request.
struct PopulationModel {
    FeatureSchema schema;                 // full (archetype) schema
    std::vector<std::size_t> ranking_idx; // features with positive strength weight
    Vec strength_weights;                 // aligned with ranking_idx
    NormalizationStats stats;
    std::vector<std::string> champions;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Vec> full_vectors;    // normalized, full schema
    std::vector<Vec> ranking_vectors; // normalized, ranking features
    std::vector<double> strength_raw;
    std::vector<double> strength;
    bool role_mode = false;
    Vec sigma; // per ranking feature
    ArchetypeModel archetypes;

    static PopulationModel build(const std::vector<ChampionVector>& population,
                                 const FeatureSchema& schema, const EngineConfig& config);

    [[nodiscard]] Vec project_ranking(std::span<const double> full) const;
};

/// Scores and sorts every candidate (final score descending, then champion
/// name ascending).
RecommendResult score_candidates(const PopulationModel& model,
                                 const std::vector<PlayerMatchRow>& history,
                                 const std::vector<MasteryRecord>& mastery,
                                 const EngineConfig& config);

/// Top-N of `score_candidates` over a freshly built population model.
RecommendResult recommend(const DataBundle& bundle, const EngineConfig& config, std::size_t top_n);
RecommendResult recommend(const PopulationModel& model, const DataBundle& bundle,
                          const EngineConfig& config, std::size_t top_n);

/// Lambda weights with the fit share (and the mastery share, once both
/// mastery signals are dropped) removed and the rest renormalized
/// proportionally.
ScoreWeights renormalized_weights(const ScoreWeights& weights, const Ablation& ablation);

/// Recomputes the final score from a record's own fields.
double recompute_final(const Recommendation& rec, const ScoreWeights& weights);

} // namespace champrec
