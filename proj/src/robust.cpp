#include "champrec/robust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "champrec/error.hpp"

namespace champrec {

namespace {

FeatureStats robust_stats(std::vector<double> present) {
    FeatureStats s;
    if (present.empty()) return s;
    s.center = median(present);
    for (auto& v : present) v = std::abs(v - s.center);
    s.scale = median(std::move(present));
    s.defined = true;
    return s;
}

FeatureStats ordinary_stats(const std::vector<double>& present) {
    FeatureStats s;
    if (present.empty()) return s;
    double n = static_cast<double>(present.size());
    s.center = std::accumulate(present.begin(), present.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : present) ss += (v - s.center) * (v - s.center);
    s.scale = std::sqrt(ss / n);
    s.defined = true;
    return s;
}

double standardize(const FeatureStats& s, ScaleMode mode, double x) {
    if (!s.defined || !(s.scale > 0.0)) return 0.0;
    double factor = mode == ScaleMode::Robust ? kMadConsistency : 1.0;
    return std::clamp(factor * (x - s.center) / s.scale, -kClip, kClip);
}

} // namespace

double log1p_transform(double x) {
    if (x < 0.0) throw Error(ErrorCode::NegativeInput, "log1p transform of a negative count");
    return std::log1p(x);
}

double median(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "median of an empty list");
    auto n = values.size();
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    double hi = *mid;
    if (n % 2 == 1) return hi;
    double lo = *std::max_element(values.begin(), mid);
    return 0.5 * (lo + hi);
}

std::vector<double> robust_z(std::span<const std::optional<double>> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "robust z of an empty list");
    std::vector<double> present;
    for (const auto& v : values) {
        if (v) present.push_back(*v);
    }
    auto stats = robust_stats(std::move(present));
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) out[i] = standardize(stats, ScaleMode::Robust, *values[i]);
    }
    return out;
}

std::vector<double> robust_z(std::span<const double> values) {
    std::vector<std::optional<double>> wrapped(values.begin(), values.end());
    return robust_z(std::span<const std::optional<double>>(wrapped));
}

double sign_adjust(double z, Direction direction) {
    return direction == Direction::Negative ? -z : z;
}

std::vector<double> rank_scale(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "rank scale of an empty list");
    const std::size_t n = values.size();
    std::vector<double> out(n, 0.5);
    if (n == 1) return out;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    const double denom = static_cast<double>(n - 1);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        if (i == 0 && j == n - 1) return out; // fully tied
        // Ranks i+1..j+1 share their mean.
        double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) out[order[k]] = (avg_rank - 1.0) / denom;
        i = j + 1;
    }
    return out;
}

NormalizationStats NormalizationStats::fit(const std::vector<ChampionVector>& population,
                                           const FeatureSchema& schema, ScaleMode mode) {
    NormalizationStats stats;
    stats.mode = mode;
    stats.features.resize(schema.size());
    for (std::size_t j = 0; j < schema.size(); ++j) {
        std::vector<double> present;
        for (const auto& c : population) {
            if (j < c.raw.size() && c.raw[j]) {
                present.push_back(schema[j].skewed ? log1p_transform(*c.raw[j]) : *c.raw[j]);
            }
        }
        stats.features[j] = mode == ScaleMode::Robust ? robust_stats(std::move(present))
                                                      : ordinary_stats(present);
    }
    return stats;
}

double NormalizationStats::normalize(const FeatureSchema& schema, std::size_t feature,
                                     std::optional<double> raw) const {
    if (!raw) return 0.0;
    double x = schema[feature].skewed ? log1p_transform(*raw) : *raw;
    return sign_adjust(standardize(features[feature], mode, x), schema[feature].direction);
}

Vec NormalizationStats::normalize(const FeatureSchema& schema,
                                  std::span<const std::optional<double>> raw) const {
    Vec out(schema.size(), 0.0);
    for (std::size_t j = 0; j < schema.size() && j < raw.size(); ++j) {
        out[j] = normalize(schema, j, raw[j]);
    }
    return out;
}

void normalize_bundle(DataBundle& bundle, const NormalizationStats& stats) {
    for (auto& c : bundle.population) c.normalized = stats.normalize(bundle.schema, c.raw);
    for (auto& r : bundle.history) r.normalized = stats.normalize(bundle.schema, r.features);
}

} // namespace champrec
