#include "champrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

#include "champrec/error.hpp"
#include "champrec/fit.hpp"
#include "champrec/player_profile.hpp"

namespace champrec {

namespace {

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double negative_log_likelihood(std::span<const double> x, const std::vector<bool>& y, double a, double b) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double eta = a + b * x[i];
        total += softplus(eta) - (y[i] ? eta : 0.0);
    }
    return total;
}

/// Best first; equal scores fall back to champion name.
std::vector<Ranked> rank_descending(const std::vector<std::string>& champions,
                                    const std::vector<double>& scores) {
    std::vector<Ranked> out;
    out.reserve(champions.size());
    for (std::size_t i = 0; i < champions.size(); ++i) out.push_back({champions[i], scores[i]});
    std::sort(out.begin(), out.end(), [](const Ranked& x, const Ranked& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.champion < y.champion;
    });
    return out;
}

} // namespace

Calibration fit_calibration(std::span<const double> scores, const std::vector<bool>& outcomes,
                            const CalibrationOptions& options) {
    if (scores.size() != outcomes.size()) {
        throw Error(ErrorCode::InvalidArgument, "scores and outcomes differ in length");
    }
    if (scores.size() < options.min_points) {
        throw Error(ErrorCode::InsufficientData, "calibration needs at least " +
                                                     std::to_string(options.min_points) + " labeled points");
    }
    std::size_t wins = static_cast<std::size_t>(std::count(outcomes.begin(), outcomes.end(), true));
    if (wins == 0 || wins == outcomes.size()) {
        throw Error(ErrorCode::DegenerateLabels, "calibration needs both wins and losses");
    }

    const double ridge = options.ridge;
    auto objective = [&](double a, double b) {
        return negative_log_likelihood(scores, outcomes, a, b) + 0.5 * ridge * (a * a + b * b);
    };

    Calibration out;
    out.n = scores.size();
    double a = 0.0, b = 0.0;
    double current = objective(a, b);
    for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
        double ga = ridge * a, gb = ridge * b;
        double haa = ridge, hab = 0.0, hbb = ridge;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            double x = scores[i];
            double p = sigmoid(a + b * x);
            double r = p - (outcomes[i] ? 1.0 : 0.0);
            double v = p * (1.0 - p);
            ga += r;
            gb += r * x;
            haa += v;
            hab += v * x;
            hbb += v * x * x;
        }
        double det = haa * hbb - hab * hab;
        if (!(det > 0.0)) break;
        double da = (hbb * ga - hab * gb) / det;
        double db = (haa * gb - hab * ga) / det;

        // Step halving keeps the objective from increasing.
        double step = 1.0;
        double next = objective(a - da, b - db);
        while (next > current && step > 1e-10) {
            step *= 0.5;
            next = objective(a - step * da, b - step * db);
        }
        a -= step * da;
        b -= step * db;
        current = next;
        out.iterations = iter + 1;
        if (std::max(std::abs(step * da), std::abs(step * db)) < options.tolerance) break;
    }
    out.a = a;
    out.b = b;
    out.log_loss = negative_log_likelihood(scores, outcomes, a, b) / static_cast<double>(scores.size());
    return out;
}

std::vector<MasteryRecord> prefix_mastery(const std::vector<PlayerMatchRow>& prefix,
                                          const std::vector<MasteryRecord>& mastery) {
    auto counts = champion_counts(prefix);
    std::vector<MasteryRecord> out = mastery;
    for (auto& m : out) {
        if (m.games_from_column) continue;
        auto it = counts.find(m.champion);
        m.games = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    }
    return out;
}

RankingMetrics metrics_from_ranks(std::span<const std::size_t> ranks, std::span<const std::size_t> ks,
                                  std::size_t skipped) {
    RankingMetrics m;
    m.steps = ranks.size();
    m.skipped = skipped;
    for (auto k : ks) m.hit_at_k[k] = 0.0;
    if (ranks.empty()) return m;
    const double n = static_cast<double>(ranks.size());
    for (auto k : ks) {
        auto hits = std::count_if(ranks.begin(), ranks.end(), [k](std::size_t r) { return r <= k; });
        m.hit_at_k[k] = static_cast<double>(hits) / n;
    }
    double rr = 0.0;
    for (auto r : ranks) rr += 1.0 / static_cast<double>(r);
    m.mrr = rr / n;
    return m;
}

TemporalResult evaluate_ranker(const DataBundle& bundle, const std::vector<std::string>& candidates,
                               const EvalOptions& options, const PrefixRanker& ranker) {
    const std::size_t total = bundle.history.size();
    const std::size_t start = std::max<std::size_t>(options.min_prefix, 1);
    if (total < 2 || start > total - 1) {
        throw Error(ErrorCode::HistoryTooShort,
                    "history of " + std::to_string(total) + " game(s) leaves no evaluation step (min prefix " +
                        std::to_string(start) + ")");
    }
    if (options.ks.empty()) throw Error(ErrorCode::InvalidArgument, "no cutoffs K requested");

    std::set<std::string> rankable(candidates.begin(), candidates.end());
    TemporalResult result;
    std::vector<std::size_t> ranks;
    std::size_t skipped = 0;
    for (std::size_t t = start; t < total; ++t) {
        const auto& next = bundle.history[t];
        if (!rankable.count(next.champion)) {
            ++skipped;
            continue;
        }
        std::vector<PlayerMatchRow> prefix(bundle.history.begin(),
                                           bundle.history.begin() + static_cast<std::ptrdiff_t>(t));
        auto ranked = ranker(prefix, prefix_mastery(prefix, bundle.mastery), t);
        auto it = std::find_if(ranked.begin(), ranked.end(),
                               [&](const Ranked& r) { return r.champion == next.champion; });
        if (it == ranked.end()) {
            ++skipped;
            continue;
        }
        StepOutcome step;
        step.t = t;
        step.next_champion = next.champion;
        step.rank = static_cast<std::size_t>(it - ranked.begin()) + 1;
        step.candidates = ranked.size();
        step.score = it->score;
        step.win = next.win;
        ranks.push_back(step.rank);
        result.steps.push_back(std::move(step));
    }
    result.metrics = metrics_from_ranks(ranks, options.ks, skipped);
    return result;
}

std::vector<Recommendation> prefix_ranking(const PopulationModel& model, const DataBundle& bundle,
                                           const EngineConfig& config, std::size_t t) {
    if (t == 0 || t > bundle.history.size()) {
        throw Error(ErrorCode::InvalidArgument, "prefix length out of range");
    }
    std::vector<PlayerMatchRow> prefix(bundle.history.begin(),
                                       bundle.history.begin() + static_cast<std::ptrdiff_t>(t));
    auto mastery = prefix_mastery(prefix, bundle.mastery);
    return score_candidates(model, prefix, mastery, config).recommendations;
}

namespace {

PrefixRanker model_ranker(const PopulationModel& model, const EngineConfig& config) {
    return [&model, config](const std::vector<PlayerMatchRow>& prefix,
                            const std::vector<MasteryRecord>& mastery, std::size_t) {
        auto recs = score_candidates(model, prefix, mastery, config).recommendations;
        std::vector<Ranked> out;
        out.reserve(recs.size());
        for (const auto& r : recs) out.push_back({r.champion, r.final_score});
        return out;
    };
}

} // namespace

TemporalResult temporal_eval(const PopulationModel& model, const DataBundle& bundle,
                             const EngineConfig& config, const EvalOptions& options) {
    return evaluate_ranker(bundle, model.champions, options, model_ranker(model, config));
}

PrefixRanker baseline_ranker(const std::string& name, const PopulationModel& model,
                             const EngineConfig& config, std::uint64_t seed) {
    const auto& champions = model.champions;

    if (name == "most_played") {
        return [&champions](const auto& prefix, const auto&, std::size_t) {
            auto counts = champion_counts(prefix);
            std::vector<double> s;
            for (const auto& c : champions) s.push_back(counts.count(c) ? static_cast<double>(counts[c]) : 0.0);
            return rank_descending(champions, s);
        };
    }
    if (name == "highest_mastery") {
        return [&champions](const auto&, const std::vector<MasteryRecord>& mastery, std::size_t) {
            std::unordered_map<std::string, const MasteryRecord*> by_name;
            for (const auto& m : mastery) by_name[m.champion] = &m;
            std::vector<Ranked> out;
            std::vector<std::pair<double, int>> keys;
            for (const auto& c : champions) {
                auto it = by_name.find(c);
                keys.emplace_back(it == by_name.end() ? 0.0 : it->second->points,
                                  it == by_name.end() ? 0 : it->second->level);
            }
            std::vector<std::size_t> order(champions.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                if (keys[x] != keys[y]) return keys[x] > keys[y];
                return champions[x] < champions[y];
            });
            for (auto i : order) out.push_back({champions[i], keys[i].first});
            return out;
        };
    }
    if (name == "most_recent") {
        return [&champions](const std::vector<PlayerMatchRow>& prefix, const auto&, std::size_t) {
            std::unordered_map<std::string, double> last;
            for (const auto& r : prefix) last[r.champion] = static_cast<double>(r.index);
            std::vector<double> s;
            for (const auto& c : champions) s.push_back(last.count(c) ? last[c] : 0.0);
            return rank_descending(champions, s);
        };
    }
    if (name == "population_strength") {
        return [&model](const auto&, const auto&, std::size_t) {
            return rank_descending(model.champions, model.strength_raw);
        };
    }
    if (name == "plain_cosine") {
        return [&model, rho = config.rho](const std::vector<PlayerMatchRow>& prefix, const auto&,
                                          std::size_t) {
            std::vector<Vec> rows;
            for (const auto& r : prefix) {
                rows.push_back(model.project_ranking(model.stats.normalize(model.schema, r.features)));
            }
            auto u_game = recent_game_vector(rows, recency_weights(rows.size(), rho));
            std::vector<double> s;
            for (const auto& x : model.ranking_vectors) s.push_back(cosine(u_game, x));
            return rank_descending(model.champions, s);
        };
    }
    if (name == "random") {
        return [&champions, seed](const auto&, const auto&, std::size_t t) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(t)};
            std::mt19937_64 rng(seq);
            std::vector<Ranked> out;
            for (const auto& c : champions) out.push_back({c, 0.0});
            std::shuffle(out.begin(), out.end(), rng);
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i].score = static_cast<double>(out.size() - i);
            }
            return out;
        };
    }
    throw Error(ErrorCode::InvalidArgument, "unknown baseline '" + name + "'");
}

std::map<std::string, RankingMetrics> run_baselines(const PopulationModel& model,
                                                    const DataBundle& bundle,
                                                    const EngineConfig& config,
                                                    const EvalOptions& options) {
    std::map<std::string, RankingMetrics> out;
    for (const char* name : kBaselineNames) {
        auto ranker = baseline_ranker(name, model, config, options.seed);
        out[name] = evaluate_ranker(bundle, model.champions, options, ranker).metrics;
    }
    return out;
}

Ablation ablation_by_name(const std::string& name) {
    Ablation a;
    if (name == "no_population_strength") a.drop_strength = true;
    else if (name == "no_fit") a.drop_fit = true;
    else if (name == "no_direct_mastery") a.drop_direct_mastery = true;
    else if (name == "no_indirect_familiarity") a.drop_indirect = true;
    else if (name == "no_archetype_guardrail") a.drop_guardrail = true;
    else if (name == "ordinary_z") a.ordinary_z = true;
    else if (name == "uniform_recency") a.uniform_recency = true;
    else if (name == "unweighted_cosine") a.unweighted_cosine = true;
    else throw Error(ErrorCode::InvalidArgument, "unknown ablation '" + name + "'");
    return a;
}

std::map<std::string, RankingMetrics> run_ablations(const DataBundle& bundle,
                                                    const EngineConfig& config,
                                                    const EvalOptions& options) {
    EngineConfig base = config;
    base.ablation = {};
    auto robust_model = PopulationModel::build(bundle.population, bundle.schema, base);

    std::map<std::string, RankingMetrics> out;
    for (const char* name : kAblationNames) {
        EngineConfig variant = base;
        variant.ablation = ablation_by_name(name);
        if (variant.ablation.ordinary_z) {
            auto model = PopulationModel::build(bundle.population, bundle.schema, variant);
            out[name] = temporal_eval(model, bundle, variant, options).metrics;
        } else {
            out[name] = temporal_eval(robust_model, bundle, variant, options).metrics;
        }
    }
    return out;
}

EvalReport run_evaluation(const DataBundle& bundle, const EngineConfig& config,
                          const EvalOptions& options) {
    EvalReport report;
    report.options = options;
    auto model = PopulationModel::build(bundle.population, bundle.schema, config);
    auto temporal = temporal_eval(model, bundle, config, options);
    report.model = temporal.metrics;

    std::vector<double> scores;
    std::vector<bool> outcomes;
    for (const auto& step : temporal.steps) {
        if (!step.win) continue;
        scores.push_back(step.score);
        outcomes.push_back(*step.win);
    }
    try {
        report.calibration = fit_calibration(scores, outcomes);
    } catch (const Error& e) {
        report.calibration_error = std::string(to_string(e.code())) + ": " + e.what();
    }

    report.baselines = run_baselines(model, bundle, config, options);
    report.ablations = run_ablations(bundle, config, options);
    return report;
}

} // namespace champrec
