#include "champrec/scoring.hpp"

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <set>

#include "champrec/error.hpp"
#include "champrec/fit.hpp"
#include "champrec/mastery.hpp"
#include "champrec/player_profile.hpp"
#include "champrec/strength.hpp"

namespace champrec {

double confidence(double player_games) {
    if (player_games < 0) throw Error(ErrorCode::NegativeCount, "game count must be >= 0");
    return player_games / (player_games + 3.0);
}

double fallback_utility(double strength, double fit) { return 0.55 * strength + 0.45 * fit; }

double performance_proxy(double gamma, double perf, double strength, double fit) {
    return gamma * perf + (1.0 - gamma) * fallback_utility(strength, fit);
}

double base_score(double win, double fit, double mastery, const ScoreWeights& weights) {
    return weights.win * win + weights.fit * fit + weights.mastery * mastery;
}

Multipliers support_and_multipliers(double fit, double direct_mastery, double indirect_mastery,
                                    double guardrail_score, double player_games) {
    Multipliers m;
    m.support = 0.60 * fit + 0.40 * std::max(direct_mastery, indirect_mastery);
    m.support_mul = 0.82 + 0.18 * m.support;
    m.archetype_mul = player_games > 0 ? 0.90 + 0.10 * guardrail_score : 0.72 + 0.28 * guardrail_score;
    return m;
}

double final_score(double base, double support_mul, double archetype_mul) {
    return base * support_mul * archetype_mul;
}

double recompute_final(const Recommendation& rec, const ScoreWeights& weights) {
    double q = base_score(rec.win_score, rec.fit_score, rec.mastery_score, weights);
    auto m = support_and_multipliers(rec.fit_score, rec.direct_mastery_score,
                                     rec.indirect_mastery_score, rec.archetype_guardrail,
                                     rec.player_games);
    return final_score(q, m.support_mul, m.archetype_mul);
}

std::string_view to_string(RecommendationType type) {
    return type == RecommendationType::ComfortOrKnown ? "comfort_or_known" : "discovery";
}

ScoreWeights renormalized_weights(const ScoreWeights& weights, const Ablation& ablation) {
    ScoreWeights out = weights;
    bool changed = false;
    if (ablation.drop_fit) {
        out.fit = 0.0;
        changed = true;
    }
    if (ablation.drop_direct_mastery && ablation.drop_indirect) {
        out.mastery = 0.0;
        changed = true;
    }
    return changed ? out.normalized() : out;
}

// ---------------------------------------------------------------------------

PopulationModel PopulationModel::build(const std::vector<ChampionVector>& population,
                                       const FeatureSchema& schema, const EngineConfig& config) {
    if (population.empty()) throw Error(ErrorCode::EmptyTable, "population table has no rows");
    schema.validate();

    PopulationModel m;
    m.schema = schema;
    for (std::size_t j = 0; j < schema.size(); ++j) {
        if (schema[j].strength_weight > 0.0) {
            m.ranking_idx.push_back(j);
            m.strength_weights.push_back(schema[j].strength_weight);
        }
    }
    m.stats = NormalizationStats::fit(population, schema,
                                      config.ablation.ordinary_z ? ScaleMode::Ordinary
                                                                 : ScaleMode::Robust);
    for (const auto& c : population) {
        if (c.raw.size() != schema.size()) {
            throw Error(ErrorCode::InvalidArgument, "population row for '" + c.champion +
                                                        "' does not match the feature schema");
        }
        m.index.emplace(c.champion, m.champions.size());
        m.champions.push_back(c.champion);
        m.full_vectors.push_back(m.stats.normalize(schema, c.raw));
        m.ranking_vectors.push_back(m.project_ranking(m.full_vectors.back()));
    }

    m.role_mode = role_mode_available(population);
    if (m.role_mode) {
        ShrinkageConfig shrink = config.shrinkage;
        if (shrink.role_baseline.empty()) shrink.role_baseline = role_baselines(population);
        for (std::size_t i = 0; i < population.size(); ++i) {
            const auto& c = population[i];
            RoleAggregate agg;
            agg.champion = c.champion;
            agg.role = c.role;
            agg.n = *c.games;
            auto w = role_feature_weights(c.role, schema);
            agg.mean_row_score = champrec::strength_raw(m.full_vectors[i], w);
            agg.win_rate = c.win_rate ? *c.win_rate
                                      : beta_binomial_mean(*c.wins, *c.games, config.prior_alpha0,
                                                           config.prior_beta0);
            agg.row_score_sd = c.row_score_sd.value_or(0.0);
            m.strength_raw.push_back(role_aware_score(agg, shrink));
        }
    } else {
        for (const auto& x : m.ranking_vectors) m.strength_raw.push_back(champrec::strength_raw(x, m.strength_weights));
    }
    m.strength = rank_scale(m.strength_raw);
    m.sigma = column_sd(m.ranking_vectors);
    m.archetypes = fit_archetypes(m.full_vectors, schema, config.archetype);
    return m;
}

Vec PopulationModel::project_ranking(std::span<const double> full) const {
    Vec out;
    out.reserve(ranking_idx.size());
    for (auto j : ranking_idx) out.push_back(full[j]);
    return out;
}

namespace {

struct Part {
    double weight;
    std::optional<double> value;
};

/// Weighted blend over the parts that are present, renormalizing their
/// weights. When nothing is dropped the weights already sum to one.
double blend(std::initializer_list<Part> parts) {
    double num = 0.0, den = 0.0;
    bool dropped = false;
    for (const auto& p : parts) {
        if (p.value) {
            num += p.weight * *p.value;
            den += p.weight;
        } else {
            dropped = true;
        }
    }
    if (!(den > 0.0)) return 0.0;
    return dropped ? num / den : num;
}

std::optional<double> when(bool keep, double v) {
    return keep ? std::optional<double>(v) : std::nullopt;
}

struct ChampionHistory {
    double games = 0.0;
    double row_score_sum = 0.0;
    double wins = 0.0;
    double labeled = 0.0;
};

} // namespace

RecommendResult score_candidates(const PopulationModel& model,
                                 const std::vector<PlayerMatchRow>& history,
                                 const std::vector<MasteryRecord>& mastery,
                                 const EngineConfig& config) {
    config.validate();
    if (history.empty()) throw Error(ErrorCode::EmptyHistory, "player history is empty");
    const Ablation& ab = config.ablation;
    const std::size_t n = model.champions.size();

    // Player rows in the shared normalization.
    std::vector<std::string> row_champions;
    std::vector<Vec> rows;
    row_champions.reserve(history.size());
    rows.reserve(history.size());
    for (const auto& r : history) {
        if (r.features.size() != model.schema.size()) {
            throw Error(ErrorCode::InvalidArgument, "history row does not match the feature schema");
        }
        row_champions.push_back(r.champion);
        rows.push_back(model.project_ranking(model.stats.normalize(model.schema, r.features)));
    }

    auto counts = champion_counts(history);
    std::map<std::string, MasteryRecord> mastery_by_name;
    for (const auto& m : mastery) mastery_by_name.emplace(m.champion, m);
    for (const auto& [name, count] : counts) {
        if (!mastery_by_name.count(name)) {
            MasteryRecord m;
            m.champion = name;
            m.games = static_cast<double>(count);
            mastery_by_name.emplace(name, m);
        }
    }

    auto a = ab.uniform_recency ? uniform_weights(rows.size()) : recency_weights(rows.size(), config.rho);
    Vec u_game = recent_game_vector(rows, a);
    auto members = pool_members(row_champions, rows, mastery_by_name);
    Vec u_pool = pool_vector(members, config.mastery.weight_floor);
    auto mass = recency_mass(row_champions, a);

    Vec w = ab.unweighted_cosine
                ? Vec(model.ranking_idx.size(), 1.0 / static_cast<double>(model.ranking_idx.size()))
                : attention_weights(std::span<const double>(model.sigma), u_game, config.alpha).weights;
    auto fit = fit_scores(model.ranking_vectors, u_game, u_pool, w, config.fit_blend);

    std::map<std::string, ChampionHistory> per_champion;
    for (std::size_t i = 0; i < history.size(); ++i) {
        auto& h = per_champion[history[i].champion];
        h.games += 1.0;
        h.row_score_sum += strength_raw(rows[i], model.strength_weights);
        if (history[i].win) {
            h.labeled += 1.0;
            h.wins += *history[i].win ? 1.0 : 0.0;
        }
    }

    std::vector<CandidateEvidence> evidence(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto& name = model.champions[c];
        auto& ev = evidence[c];
        if (auto it = mastery_by_name.find(name); it != mastery_by_name.end()) ev.mastery = it->second;
        else ev.mastery.champion = name;
        if (auto it = mass.find(name); it != mass.end()) ev.recency_mass = it->second;
        if (auto it = per_champion.find(name); it != per_champion.end()) {
            ev.played = true;
            ev.mean_row_score = it->second.row_score_sum / it->second.games;
            if (it->second.labeled > 0) ev.mean_win = it->second.wins / it->second.labeled;
        }
    }
    auto mastery_result = mastery_signals(model.ranking_vectors, evidence, config.mastery);

    std::vector<SupportMember> support_members;
    for (auto c : mastery_result.mastered) {
        support_members.push_back({c, evidence[c].recency_mass, mastery_result.signals[c].direct});
    }
    auto support_raw = archetype_support_raw(model.archetypes, support_members);
    auto support = archetype_support(model.archetypes, support_members);

    const ScoreWeights weights = renormalized_weights(config.weights, ab);
    RecommendResult result;
    result.recommendations.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto& sig = mastery_result.signals[c];
        const double s = model.strength[c];
        const double f = fit.scaled[c];
        const double md = sig.direct;
        const double mi = sig.indirect;
        const double games = static_cast<double>(counts.count(model.champions[c]) ? counts.at(model.champions[c]) : 0);

        std::optional<double> peak;
        if (!ab.drop_direct_mastery && !ab.drop_indirect) peak = std::max(md, mi);
        else if (!ab.drop_direct_mastery) peak = md;
        else if (!ab.drop_indirect) peak = mi;

        const double b = support[model.archetypes.assignments[c]];
        const double m = blend({{kDirectBlend, when(!ab.drop_direct_mastery, md)},
                                {kIndirectBlend, when(!ab.drop_indirect, mi)}});
        const double g = blend({{0.55, b}, {0.45, peak}});
        const double gamma = confidence(games);
        const double u = blend({{0.55, when(!ab.drop_strength, s)}, {0.45, when(!ab.drop_fit, f)}});
        const double win = gamma * sig.perf + (1.0 - gamma) * u;

        Recommendation rec;
        rec.champion = model.champions[c];
        rec.type = games > 0 ? RecommendationType::ComfortOrKnown : RecommendationType::Discovery;
        rec.archetype_name = model.archetypes.labels[model.archetypes.assignments[c]];
        rec.win_score = win;
        rec.fit_score = f;
        rec.mastery_score = m;
        rec.archetype_guardrail = g;
        rec.population_strength_score = s;
        rec.direct_mastery_score = md;
        rec.indirect_mastery_score = mi;
        rec.player_games = games;
        rec.similarity_raw = fit.raw[c];
        rec.performance_score = sig.perf;
        rec.base = base_score(win, f, m, weights);

        rec.multipliers.support = blend({{0.60, when(!ab.drop_fit, f)}, {0.40, peak}});
        rec.multipliers.support_mul = 0.82 + 0.18 * rec.multipliers.support;
        rec.multipliers.archetype_mul = ab.drop_guardrail ? 1.0
                                        : games > 0       ? 0.90 + 0.10 * g
                                                          : 0.72 + 0.28 * g;
        rec.final_score = final_score(rec.base, rec.multipliers.support_mul, rec.multipliers.archetype_mul);
        result.recommendations.push_back(std::move(rec));
    }
    std::sort(result.recommendations.begin(), result.recommendations.end(),
              [](const Recommendation& x, const Recommendation& y) {
                  if (x.final_score != y.final_score) return x.final_score > y.final_score;
                  return x.champion < y.champion;
              });

    auto& meta = result.metadata;
    meta.games = history.size();
    for (const auto& r : history) {
        if (r.role != Role::Unknown) ++meta.role_mix[std::string(to_string(r.role))];
    }
    std::vector<std::size_t> clusters(support_raw.size());
    std::iota(clusters.begin(), clusters.end(), 0);
    std::stable_sort(clusters.begin(), clusters.end(),
                     [&](std::size_t x, std::size_t y) { return support_raw[x] > support_raw[y]; });
    for (auto k : clusters) {
        if (support_raw[k] <= 0.0 || meta.top_archetypes.size() == 3) break;
        const auto& label = model.archetypes.labels[k];
        if (std::find(meta.top_archetypes.begin(), meta.top_archetypes.end(), label) ==
            meta.top_archetypes.end()) {
            meta.top_archetypes.push_back(label);
        }
    }
    meta.weights_used = weights;
    meta.alpha = config.alpha;
    meta.rho = config.rho;
    meta.role_mode = model.role_mode;
    meta.candidates = n;

    std::size_t unknown = 0;
    for (const auto& [name, count] : counts) unknown += model.index.count(name) ? 0 : 1;
    if (unknown > 0) {
        meta.warnings.push_back(std::to_string(unknown) +
                                " played champion(s) are missing from the population table");
    }
    if (model.role_mode) meta.warnings.emplace_back("role-aware population strength in use");
    bool any_points = std::any_of(mastery.begin(), mastery.end(),
                                  [](const MasteryRecord& r) { return r.points > 0 || r.level > 0; });
    if (!any_points) meta.warnings.emplace_back("no mastery points or levels recorded");
    return result;
}

RecommendResult recommend(const PopulationModel& model, const DataBundle& bundle,
                          const EngineConfig& config, std::size_t top_n) {
    if (top_n < 1) throw Error(ErrorCode::InvalidArgument, "topN must be >= 1");
    auto result = score_candidates(model, bundle.history, bundle.mastery, config);
    if (result.recommendations.size() > top_n) result.recommendations.resize(top_n);
    return result;
}

RecommendResult recommend(const DataBundle& bundle, const EngineConfig& config, std::size_t top_n) {
    if (top_n < 1) throw Error(ErrorCode::InvalidArgument, "topN must be >= 1");
    auto model = PopulationModel::build(bundle.population, bundle.schema, config);
    return recommend(model, bundle, config, top_n);
}

} // namespace champrec
