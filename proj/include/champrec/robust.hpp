#pragma once

#include <optional>
#include <span>
#include <vector>

#include "champrec/data_model.hpp"
#include "champrec/schema.hpp"

namespace champrec {

/// Scales a median-absolute-deviation ratio to standard-deviation units under
/// a Gaussian reference.
inline constexpr double kMadConsistency = 0.67448975;
inline constexpr double kClip = 3.0;

double log1p_transform(double x);

/// Median/MAD z-scores clipped to [-3, 3]. Absent inputs and zero or
/// undefined MAD give 0.
std::vector<double> robust_z(std::span<const std::optional<double>> values);
std::vector<double> robust_z(std::span<const double> values);

double sign_adjust(double z, Direction direction);

/// Average-rank percentile: (r - 1) / (n - 1) with ties sharing their mean
/// rank. A single element or an all-tied list maps to 0.5.
std::vector<double> rank_scale(std::span<const double> values);

double median(std::vector<double> values);

enum class ScaleMode { Robust, Ordinary };

struct FeatureStats {
    double center = 0.0; // median (robust) or mean (ordinary)
    double scale = 0.0;  // MAD (robust) or standard deviation (ordinary)
    bool defined = false;
};

/// Per-feature location/scale fitted on the population table and shared by
/// champion vectors and player rows.
struct NormalizationStats {
    ScaleMode mode = ScaleMode::Robust;
    std::vector<FeatureStats> features;

    static NormalizationStats fit(const std::vector<ChampionVector>& population,
                                  const FeatureSchema& schema,
                                  ScaleMode mode = ScaleMode::Robust);

    /// Skew transform, z-score, clip, then sign correction.
    [[nodiscard]] double normalize(const FeatureSchema& schema, std::size_t feature,
                                   std::optional<double> raw) const;
    [[nodiscard]] Vec normalize(const FeatureSchema& schema,
                                std::span<const std::optional<double>> raw) const;
};

/// Fills `normalized` on every champion vector and history row.
void normalize_bundle(DataBundle& bundle, const NormalizationStats& stats);

} // namespace champrec
