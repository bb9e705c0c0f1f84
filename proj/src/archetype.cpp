#include "champrec/archetype.hpp"

#include <algorithm>
#include <limits>

#include "champrec/error.hpp"
#include "champrec/robust.hpp"

namespace champrec {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) d += (a[j] - b[j]) * (a[j] - b[j]);
    return d;
}

double inertia(std::span<const Vec> points, std::span<const std::size_t> assignments,
               std::span<const Vec> centroids) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        total += squared_distance(points[i], centroids[assignments[i]]);
    }
    return total;
}

std::size_t distinct_count(std::span<const Vec> points) {
    std::vector<Vec> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

std::vector<Vec> kmeans_pp_seed(std::span<const Vec> points, std::size_t k, std::mt19937_64& rng) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k-means needs k >= 1");
    if (distinct_count(points) < k) {
        throw Error(ErrorCode::TooFewPoints, "fewer distinct points than clusters");
    }
    const std::size_t n = points.size();
    std::vector<Vec> centroids;
    centroids.reserve(k);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    centroids.push_back(points[pick(rng)]);

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points[i], centroids.front());
    while (centroids.size() < k) {
        double total = 0.0;
        for (double d : d2) total += d;
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng);
        std::size_t chosen = n;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d2[i] <= 0.0) continue;
            cumulative += d2[i];
            chosen = i;
            if (cumulative >= target) break;
        }
        centroids.push_back(points[chosen]);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points[i], centroids.back()));
        }
    }
    return centroids;
}

namespace {

std::size_t nearest(std::span<const double> p, const std::vector<Vec>& centroids) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        double d = squared_distance(p, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

void repair_empty(std::span<const Vec> points, std::vector<std::size_t>& assign,
                  std::vector<Vec>& centroids) {
    const std::size_t k = centroids.size();
    std::vector<std::size_t> sizes(k, 0);
    for (auto a : assign) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] > 0) continue;
        std::size_t far = points.size();
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (sizes[assign[i]] < 2) continue;
            double d = squared_distance(points[i], centroids[assign[i]]);
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        if (far == points.size()) break; // every cluster is a singleton already
        --sizes[assign[far]];
        assign[far] = c;
        ++sizes[c];
        centroids[c] = points[far];
    }
}

void update_centroids(std::span<const Vec> points, const std::vector<std::size_t>& assign,
                      std::vector<Vec>& centroids) {
    const std::size_t k = centroids.size();
    const std::size_t d = points.front().size();
    std::vector<Vec> sums(k, Vec(d, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) sums[assign[i]][j] += points[i][j];
        ++sizes[assign[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) centroids[c][j] = sums[c][j] / static_cast<double>(sizes[c]);
    }
}

} // namespace

LloydResult lloyd(std::span<const Vec> points, std::vector<Vec> centroids, std::size_t max_iters) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "k-means over zero points");
    if (centroids.empty()) throw Error(ErrorCode::InvalidArgument, "k-means needs k >= 1");
    LloydResult out;
    std::vector<std::size_t> assign(points.size(), 0);
    std::vector<std::size_t> previous;
    for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iters, 1); ++iter) {
        for (std::size_t i = 0; i < points.size(); ++i) assign[i] = nearest(points[i], centroids);
        if (assign == previous) break;
        repair_empty(points, assign, centroids);
        update_centroids(points, assign, centroids);
        out.trace.push_back(inertia(points, assign, centroids));
        out.iterations = iter + 1;
        previous = assign;
    }
    out.inertia = inertia(points, assign, centroids);
    out.assignments = std::move(assign);
    out.centroids = std::move(centroids);
    return out;
}

ArchetypeModel kmeans_fit(std::span<const Vec> points, std::size_t k, const ArchetypeOptions& options) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "k-means over zero points");
    ArchetypeModel model;
    model.k = k;
    model.seed = options.seed;
    model.restarts = std::max<std::size_t>(options.restarts, 1);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < model.restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                          static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        auto run = lloyd(points, kmeans_pp_seed(points, k, rng), options.max_iters);
        model.restart_inertia.push_back(run.inertia);
        if (run.inertia < best) {
            best = run.inertia;
            model.assignments = std::move(run.assignments);
            model.centroids = std::move(run.centroids);
            model.inertia = run.inertia;
        }
    }
    return model;
}

std::vector<double> style_dimensions(std::span<const double> centroid, const FeatureSchema& schema) {
    auto mean_of = [&](std::initializer_list<const char*> names) {
        double total = 0.0;
        std::size_t hits = 0;
        for (const char* name : names) {
            if (auto idx = schema.index_of(name); idx && *idx < centroid.size()) {
                total += centroid[*idx];
                ++hits;
            }
        }
        return hits ? total / static_cast<double>(hits) : 0.0;
    };
    return {
        mean_of({"totalDamageTaken", "damageSelfMitigated"}),
        mean_of({"visionScorePerMinute", "totalTimeCCDealt"}),
        mean_of({"damagePerMinute"}),
        mean_of({"cs_per_min", "laneMinionsFirst10Minutes"}),
        mean_of({"damageDealtToBuildings"}),
        mean_of({"killParticipation"}),
    };
}

std::vector<std::string> label_centroids(std::span<const Vec> centroids, const FeatureSchema& schema) {
    std::vector<std::string> labels;
    labels.reserve(centroids.size());
    for (const auto& c : centroids) {
        auto dims = style_dimensions(c, schema);
        auto [lo, hi] = std::minmax_element(dims.begin(), dims.end());
        if (*lo == *hi) {
            labels.emplace_back(std::end(kArchetypeLabels)[-1]);
            continue;
        }
        // max_element keeps the first maximum, which is the higher-priority label.
        auto best = static_cast<std::size_t>(std::max_element(dims.begin(), dims.end()) - dims.begin());
        labels.emplace_back(kArchetypeLabels[best]);
    }
    return labels;
}

ArchetypeModel fit_archetypes(std::span<const Vec> points, const FeatureSchema& schema,
                              const ArchetypeOptions& options) {
    std::size_t k = std::min(options.k, distinct_count(points));
    if (k == 0) throw Error(ErrorCode::TooFewPoints, "no points to cluster");
    auto model = kmeans_fit(points, k, options);
    model.labels = label_centroids(model.centroids, schema);
    return model;
}

std::vector<double> archetype_support_raw(const ArchetypeModel& model,
                                          std::span<const SupportMember> members) {
    std::vector<double> raw(model.centroids.size(), 0.0);
    for (const auto& m : members) {
        if (m.point >= model.assignments.size()) {
            throw Error(ErrorCode::InvalidArgument, "support member outside the clustered points");
        }
        raw[model.assignments[m.point]] += 0.5 * m.recency_mass + 0.5 * m.direct_mastery;
    }
    return raw;
}

std::vector<double> archetype_support(const ArchetypeModel& model,
                                      std::span<const SupportMember> members) {
    auto raw = archetype_support_raw(model, members);
    if (raw.empty()) return raw;
    return rank_scale(raw);
}

double guardrail(double support, double direct_mastery, double indirect_mastery) {
    return 0.55 * support + 0.45 * std::max(direct_mastery, indirect_mastery);
}

} // namespace champrec
