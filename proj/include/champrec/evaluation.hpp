#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "champrec/config.hpp"
#include "champrec/data_model.hpp"
#include "champrec/scoring.hpp"

namespace champrec {

struct RankingMetrics {
    std::map<std::size_t, double> hit_at_k;
    double mrr = 0.0;
    std::size_t steps = 0;   // N
    std::size_t skipped = 0; // next champion not rankable
};

struct Calibration {
    double a = 0.0;
    double b = 0.0;
    double log_loss = 0.0;
    std::size_t n = 0;
    std::size_t iterations = 0;
};

struct CalibrationOptions {
    std::size_t max_iters = 100;
    double tolerance = 1e-8;
    double ridge = 1e-6;
    std::size_t min_points = 10;
};

/// Maximum-likelihood fit of P(win) = sigmoid(a + b R) by damped Newton steps.
Calibration fit_calibration(std::span<const double> scores, const std::vector<bool>& outcomes,
                            const CalibrationOptions& options = {});

struct EvalOptions {
    std::vector<std::size_t> ks{1, 3, 5, 10};
    std::size_t min_prefix = 5;
    std::uint64_t seed = 7;
};

struct Ranked {
    std::string champion;
    double score = 0.0;
};

/// A ranking procedure evaluated on history prefixes. Receives the rows
/// 1..t and the mastery records with games counted on that prefix; returns
/// candidates best first.
using PrefixRanker = std::function<std::vector<Ranked>(
    const std::vector<PlayerMatchRow>& prefix, const std::vector<MasteryRecord>& mastery,
    std::size_t t)>;

struct StepOutcome {
    std::size_t t = 0;
    std::string next_champion;
    std::size_t rank = 0; // 1-based
    std::size_t candidates = 0;
    double score = 0.0; // ranker score of the chosen champion
    std::optional<bool> win;
};

struct TemporalResult {
    RankingMetrics metrics;
    std::vector<StepOutcome> steps;
};

/// History truncated to rows 1..t with mastery games recounted on the prefix
/// where they were derived from history.
std::vector<MasteryRecord> prefix_mastery(const std::vector<PlayerMatchRow>& prefix,
                                          const std::vector<MasteryRecord>& mastery);

/// Next-champion recovery: for each t, rank with matches 1..t and locate
/// c_{t+1}. Steps whose next champion is not a candidate are skipped.
TemporalResult evaluate_ranker(const DataBundle& bundle, const std::vector<std::string>& candidates,
                               const EvalOptions& options, const PrefixRanker& ranker);

RankingMetrics metrics_from_ranks(std::span<const std::size_t> ranks, std::span<const std::size_t> ks,
                                  std::size_t skipped);

/// Full model ranking on the prefix 1..t.
std::vector<Recommendation> prefix_ranking(const PopulationModel& model, const DataBundle& bundle,
                                           const EngineConfig& config, std::size_t t);

TemporalResult temporal_eval(const PopulationModel& model, const DataBundle& bundle,
                             const EngineConfig& config, const EvalOptions& options);

inline constexpr const char* kBaselineNames[] = {
    "most_played", "highest_mastery", "most_recent",
    "population_strength", "plain_cosine", "random",
};

inline constexpr const char* kAblationNames[] = {
    "no_population_strength", "no_fit", "no_direct_mastery", "no_indirect_familiarity",
    "no_archetype_guardrail", "ordinary_z", "uniform_recency", "unweighted_cosine",
};

PrefixRanker baseline_ranker(const std::string& name, const PopulationModel& model,
                             const EngineConfig& config, std::uint64_t seed);

std::map<std::string, RankingMetrics> run_baselines(const PopulationModel& model,
                                                    const DataBundle& bundle,
                                                    const EngineConfig& config,
                                                    const EvalOptions& options);

Ablation ablation_by_name(const std::string& name);

std::map<std::string, RankingMetrics> run_ablations(const DataBundle& bundle,
                                                    const EngineConfig& config,
                                                    const EvalOptions& options);

struct EvalReport {
    RankingMetrics model;
    std::optional<Calibration> calibration;
    std::string calibration_error;
    std::map<std::string, RankingMetrics> baselines;
    std::map<std::string, RankingMetrics> ablations;
    EvalOptions options;
};

/// Temporal evaluation, calibration on prefix scores, baselines, ablations.
EvalReport run_evaluation(const DataBundle& bundle, const EngineConfig& config,
                          const EvalOptions& options);

} // namespace champrec
