#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "champrec/data_model.hpp"
#include "champrec/schema.hpp"

namespace champrec {

/// Archetype labels in tie-break priority order (highest first).
inline constexpr std::string_view kArchetypeLabels[] = {
    "frontline tank", "utility support", "artillery control",
    "scaling carry",  "siege splitpush", "skirmish bruiser",
};

struct ArchetypeOptions {
    std::size_t k = 6;
    std::size_t restarts = 10;
    std::uint64_t seed = 42;
    std::size_t max_iters = 100;
};

struct LloydResult {
    std::vector<std::size_t> assignments;
    std::vector<Vec> centroids;
    double inertia = 0.0;
    /// Inertia after every centroid update; non-increasing.
    std::vector<double> trace;
    std::size_t iterations = 0;
};

struct ArchetypeModel {
    std::size_t k = 0;
    std::vector<std::size_t> assignments; // aligned with the fitted points
    std::vector<Vec> centroids;
    double inertia = 0.0;
    std::vector<std::string> labels; // per cluster
    std::uint64_t seed = 0;
    std::size_t restarts = 0;
    std::vector<double> restart_inertia;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double inertia(std::span<const Vec> points, std::span<const std::size_t> assignments,
               std::span<const Vec> centroids);
std::size_t distinct_count(std::span<const Vec> points);

/// k-means++ seeding: first centroid uniform, then D^2 sampling.
std::vector<Vec> kmeans_pp_seed(std::span<const Vec> points, std::size_t k, std::mt19937_64& rng);

/// Lloyd iterations from the given centroids until assignments stop changing
/// or `max_iters` is reached. Empty clusters take the point farthest from its
/// centroid.
LloydResult lloyd(std::span<const Vec> points, std::vector<Vec> centroids, std::size_t max_iters);

/// Best of `restarts` seeded runs. Each restart draws from its own stream
/// derived from (seed, restart), so a larger restart count only adds runs.
ArchetypeModel kmeans_fit(std::span<const Vec> points, std::size_t k,
                          const ArchetypeOptions& options);

/// The six style dimensions a centroid is judged on, in label order:
/// tankiness, utility, damage, farm, siege, teamfight.
std::vector<double> style_dimensions(std::span<const double> centroid, const FeatureSchema& schema);

/// Deterministic label per centroid: the label of the largest style dimension,
/// ties broken by label priority. A centroid whose dimensions are all equal
/// gets the lowest-priority label.
std::vector<std::string> label_centroids(std::span<const Vec> centroids, const FeatureSchema& schema);

/// Fits clusters on normalized champion vectors and labels them. `k` is
/// capped at the number of distinct points.
ArchetypeModel fit_archetypes(std::span<const Vec> points, const FeatureSchema& schema,
                              const ArchetypeOptions& options);

/// A champion the player has some standing on, with its recency mass and
/// rank-scaled direct mastery.
struct SupportMember {
    std::size_t point = 0; // index into the clustered points
    double recency_mass = 0.0;
    double direct_mastery = 0.0;
};

/// Per-cluster support 0.5 A_c + 0.5 M_d summed over members, rank-scaled
/// across clusters.
std::vector<double> archetype_support(const ArchetypeModel& model,
                                      std::span<const SupportMember> members);

/// Raw (pre-rank-scale) support per cluster.
std::vector<double> archetype_support_raw(const ArchetypeModel& model,
                                          std::span<const SupportMember> members);

double guardrail(double support, double direct_mastery, double indirect_mastery);

} // namespace champrec
