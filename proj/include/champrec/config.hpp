#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "champrec/archetype.hpp"
#include "champrec/fit.hpp"
#include "champrec/mastery.hpp"
#include "champrec/player_profile.hpp"
#include "champrec/strength.hpp"

namespace champrec {

struct ScoreWeights {
    double win = 0.50;
    double fit = 0.25;
    double mastery = 0.25;

    /// Each weight nonnegative and the sum equal to one within `tolerance`.
    void validate(double tolerance = 1e-9) const;
    [[nodiscard]] ScoreWeights normalized() const;
};

/// Component switches for ablation runs. All off is the full model.
struct Ablation {
    bool drop_strength = false;
    bool drop_fit = false;
    bool drop_direct_mastery = false;
    bool drop_indirect = false;
    bool drop_guardrail = false;
    bool ordinary_z = false;
    bool uniform_recency = false;
    bool unweighted_cosine = false;

    [[nodiscard]] bool any() const;
};

struct EngineConfig {
    ScoreWeights weights;
    double alpha = kDefaultAlpha;
    FitBlend fit_blend;
    double rho = kDefaultRho;
    ShrinkageConfig shrinkage;
    double prior_alpha0 = 1.0;
    double prior_beta0 = 1.0;
    MasteryOptions mastery;
    ArchetypeOptions archetype;
    Ablation ablation;

    void validate() const;
};

/// Reads a JSON config. Keys may be nested (`{"fit": {"alpha": 0.5}}`) or
/// dotted (`{"fit.alpha": 0.5}`); unknown keys are rejected.
EngineConfig load_config(const std::string& path);
EngineConfig config_from_json_text(const std::string& text);

} // namespace champrec
