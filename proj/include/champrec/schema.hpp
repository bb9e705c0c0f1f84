#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace champrec {

enum class Direction { Positive, Negative };

struct FeatureSpec {
    std::string name;
    double strength_weight = 0.0;
    Direction direction = Direction::Positive;
    bool skewed = false;

    bool operator==(const FeatureSpec&) const = default;
};

/// Ordered feature list. Vectors throughout the engine are laid out in
/// schema order.
class FeatureSchema {
public:
    FeatureSchema() = default;
    explicit FeatureSchema(std::vector<FeatureSpec> entries);

    /// The ten ranking features with their strength weights.
    static FeatureSchema recommendation_default();
    /// Ranking features plus the two durability columns used for clustering.
    /// The extra columns carry zero strength weight.
    static FeatureSchema archetype_default();

    [[nodiscard]] const std::vector<FeatureSpec>& entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] const FeatureSpec& operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const;
    [[nodiscard]] std::vector<std::string> names() const;

    /// Positions of `sub`'s features inside this schema. Throws if `sub`
    /// names a feature this schema lacks.
    [[nodiscard]] std::vector<std::size_t> subset_indices(const FeatureSchema& sub) const;

    /// Strength weights in [0,1] that sum to one.
    void validate() const;

    bool operator==(const FeatureSchema&) const = default;

private:
    std::vector<FeatureSpec> entries_;
};

/// Sparse event counts that get a log1p transform when they appear in a schema.
const std::vector<std::string>& skewed_feature_names();

bool is_skewed_feature(const std::string& name);

} // namespace champrec
