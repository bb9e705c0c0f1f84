// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "champrec/cli.hpp"
#include "champrec/error.hpp"
#include "champrec/evaluation.hpp"
#include "champrec/fit.hpp"
#include "champrec/json_io.hpp"
#include "champrec/robust.hpp"
#include "champrec/scoring.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace champrec;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(const char* name, const std::function<Outcome()>& check) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s  %-28s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome malphite_base() {
    double q = base_score(0.741, 0.994, 0.874);
    return {std::abs(q - 0.8375) < 1e-4, fmt("Q=%.6f", q)};
}

Outcome boundedness() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::exponential_distribution<double> e(1.0);
    std::uniform_int_distribution<int> games(0, 40);
    std::size_t violations = 0;
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double a = e(rng), b = e(rng), c = e(rng);
        ScoreWeights w{a / (a + b + c), b / (a + b + c), c / (a + b + c)};
        double s = u(rng), f = u(rng), md = u(rng), mi = u(rng), pd = u(rng), g = u(rng);
        double gc = (i % 4 == 0) ? 0.0 : games(rng);
        double m = kDirectBlend * md + kIndirectBlend * mi;
        double win = performance_proxy(confidence(gc), pd, s, f);
        auto mult = support_and_multipliers(f, md, mi, g, gc);
        double r = final_score(base_score(win, f, m, w), mult.support_mul, mult.archetype_mul);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        if (!(r >= 0.0 && r <= 1.0)) ++violations;
    }
    return {violations == 0, fmt("violations=%zu range=[%.4f, %.4f]", violations, lo, hi)};
}

Outcome cosine_invariance() {
    std::mt19937_64 rng(202);
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> pos(0.01, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        std::size_t d = 2 + i % 11;
        Vec a(d), b(d), w(d), la(d), mb(d);
        for (std::size_t j = 0; j < d; ++j) {
            a[j] = n(rng);
            b[j] = n(rng);
            w[j] = pos(rng);
        }
        double lambda = pos(rng), mu = pos(rng);
        for (std::size_t j = 0; j < d; ++j) {
            la[j] = lambda * a[j];
            mb[j] = mu * b[j];
        }
        double base = weighted_cosine(a, b, w);
        double scaled = weighted_cosine(la, mb, w);
        worst = std::max(worst, std::abs(scaled - base));
        worst = std::max(worst, std::abs(base - oracle::wcos(a, b, w)));
    }
    return {worst < 1e-10, fmt("max deviation=%.3g", worst)};
}

Outcome robust_golden() {
    std::vector<double> v{1, 2, 3, 4, 100};
    const double expected[] = {-1.3490, -0.6745, 0.0, 0.6745, 3.0};
    auto z = robust_z(std::span<const double>(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(z[i] - expected[i]));
    std::vector<double> flat(6, 4.2);
    bool zeros = true;
    for (double x : robust_z(std::span<const double>(flat))) zeros &= x == 0.0;
    std::vector<double> tied(5, 1.5);
    bool half = true;
    for (double x : rank_scale(std::span<const double>(tied))) half &= x == 0.5;
    return {worst < 1e-3 && zeros && half,
            fmt("max golden error=%.2g constant->zeros=%d ties->0.5=%d", worst, zeros, half)};
}

Outcome kmeans_oracle() {
    std::mt19937_64 rng(303);
    std::normal_distribution<double> n;
    std::uniform_int_distribution<int> size(4, 8);
    std::uniform_real_distribution<double> offset(1.0, 6.0);
    ArchetypeOptions opt;
    opt.k = 2;
    opt.restarts = 10;
    int optimal = 0;
    bool monotone = true;
    for (int inst = 0; inst < 100; ++inst) {
        std::size_t count = static_cast<std::size_t>(size(rng));
        double dx = offset(rng);
        std::vector<Vec> pts;
        for (std::size_t i = 0; i < count; ++i) {
            double shift = (i % 2) ? dx : 0.0;
            pts.push_back({shift + n(rng), n(rng)});
        }
        opt.seed = 1000 + static_cast<std::uint64_t>(inst);
        auto fitted = kmeans_fit(pts, 2, opt);
        double best = oracle::best_bipartition(pts);
        if (std::abs(fitted.inertia - best) <= 1e-9 * std::max(1.0, best)) ++optimal;

        for (std::size_t r = 0; r < opt.restarts; ++r) {
            std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                              static_cast<std::uint32_t>(r)};
            std::mt19937_64 stream(seq);
            auto run = lloyd(pts, kmeans_pp_seed(pts, 2, stream), opt.max_iters);
            if (run.inertia != fitted.restart_inertia.at(r)) monotone = false;
            for (std::size_t s = 1; s < run.trace.size(); ++s) {
                if (run.trace[s] > run.trace[s - 1] + 1e-12) monotone = false;
            }
        }
    }
    return {optimal >= 95 && monotone, fmt("optimal=%d/100 lloyd monotone=%d", optimal, monotone)};
}

Outcome temporal() {
    auto pop = synth::population(10, 41);
    auto rows = synth::constant_history(pop[4], 20, 41);
    std::vector<MasteryRecord> mastery{{pop[4].champion, 30000, 6, 0, false}};
    auto bundle = assemble_bundle(FeatureSchema::archetype_default(), pop, rows, mastery);
    EngineConfig config;
    auto model = PopulationModel::build(bundle.population, bundle.schema, config);
    EvalOptions opts;
    auto r = temporal_eval(model, bundle, config, opts);

    bool isolated = true;
    for (std::size_t t = opts.min_prefix; t < bundle.history.size(); ++t) {
        auto full = prefix_ranking(model, bundle, config, t);
        DataBundle cut = bundle;
        cut.history.resize(t);
        auto truncated = prefix_ranking(model, cut, config, t);
        if (full.size() != truncated.size()) isolated = false;
        for (std::size_t i = 0; isolated && i < full.size(); ++i) {
            isolated = full[i].champion == truncated[i].champion && full[i].final_score == truncated[i].final_score;
        }
    }
    double hit1 = r.metrics.hit_at_k.at(1);
    bool pass = hit1 == 1.0 && r.metrics.mrr == 1.0 && isolated;
    return {pass, fmt("steps=%zu Hit@1=%.3f MRR=%.3f no-look-ahead=%d", r.metrics.steps, hit1, r.metrics.mrr,
                      isolated)};
}

Outcome calibration() {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x;
    std::vector<bool> y;
    for (int i = 0; i < 10000; ++i) {
        double r = u(rng);
        x.push_back(r);
        y.push_back(u(rng) < 1.0 / (1.0 + std::exp(-(-1.0 + 2.0 * r))));
    }
    auto fit = fit_calibration(x, y);
    std::vector<bool> shuffled = y;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto null = fit_calibration(x, shuffled);
    bool pass = std::abs(fit.a + 1.0) <= 0.15 && std::abs(fit.b - 2.0) <= 0.15 && std::abs(null.b) < 0.1;
    return {pass, fmt("a=%.3f b=%.3f null b=%.3f", fit.a, fit.b, null.b)};
}

Outcome decomposition() {
    auto bundle = synth::bundle(50, 60, 7, 1234);
    auto result = recommend(bundle, EngineConfig{}, 50);
    const auto& w = result.metadata.weights_used;
    double worst = 0.0;
    for (const auto& r : result.recommendations) {
        double gamma = r.player_games / (r.player_games + 3.0);
        double win = gamma * r.performance_score +
                     (1.0 - gamma) * (0.55 * r.population_strength_score + 0.45 * r.fit_score);
        double q = w.win * win + w.fit * r.fit_score + w.mastery * r.mastery_score;
        double t = 0.6 * r.fit_score + 0.4 * std::max(r.direct_mastery_score, r.indirect_mastery_score);
        double h = 0.82 + 0.18 * t;
        double a = r.player_games > 0 ? 0.9 + 0.1 * r.archetype_guardrail : 0.72 + 0.28 * r.archetype_guardrail;
        worst = std::max({worst, std::abs(q * h * a - r.final_score), std::abs(win - r.win_score)});
    }
    const char* fields[] = {"championName",          "recommendation_type",   "archetype_name",
                            "final_score",           "win_score",             "fit_score",
                            "mastery_score",         "archetype_guardrail",   "population_strength_score",
                            "direct_mastery_score",  "indirect_mastery_score", "player_games",
                            "similarity_raw"};
    auto doc = nlohmann::json::parse(recommend_result_json(result));
    std::size_t missing = 0;
    for (const auto& rec : doc.at("recommendations")) {
        for (const char* f : fields) missing += rec.contains(f) ? 0 : 1;
    }
    bool pass = result.recommendations.size() == 50 && worst < 1e-9 && missing == 0;
    return {pass, fmt("records=%zu max residual=%.3g missing fields=%zu", result.recommendations.size(), worst,
                      missing)};
}

Outcome completeness() {
    auto bundle = synth::bundle(30, 40, 6, 505);
    EvalOptions opts;
    opts.ks = {1, 3, 5, 10};
    auto report = run_evaluation(bundle, EngineConfig{}, opts);
    auto doc = nlohmann::json::parse(eval_report_json(report));
    auto populated = [&](const nlohmann::json& group) {
        for (const auto& [name, m] : group.items()) {
            if (!m.contains("mrr") || !m["mrr"].is_number()) return false;
            if (!m.contains("hit_at_k") || m["hit_at_k"].size() != opts.ks.size()) return false;
        }
        return true;
    };
    std::size_t nb = doc.at("baselines").size(), na = doc.at("ablations").size();
    bool pass = nb == 6 && na == 8 && populated(doc["baselines"]) && populated(doc["ablations"]);
    return {pass, fmt("baselines=%zu ablations=%zu", nb, na)};
}

Outcome table_columns() {
    std::string dir = CHAMPREC_SAMPLE_DIR;
    std::ostringstream out, err;
    int code = run_cli({"recommend", "--population-csv", dir + "/population.csv", "--player-csv",
                        dir + "/DivineRaccoon_NA1/history.csv", "--mastery-csv",
                        dir + "/DivineRaccoon_NA1/mastery.csv", "--format", "table", "--top-n", "5"},
                       out, err);
    std::string header = out.str().substr(0, out.str().find('\n'));
    std::vector<std::string> cols;
    std::regex sep("\\s{2,}");
    for (std::sregex_token_iterator it(header.begin(), header.end(), sep, -1), end; it != end; ++it) {
        if (it->length() > 0) cols.push_back(*it);
    }
    const std::vector<std::string> expected{"Champion", "Type",      "Final",     "Win proxy",
                                            "Fit",      "Mastery",   "Guardrail", "Similarity"};
    bool pass = code == 0 && cols == expected;
    std::string joined;
    for (const auto& c : cols) joined += (joined.empty() ? "" : "|") + c;
    return {pass, fmt("exit=%d columns=%s", code, joined.c_str())};
}

} // namespace

int main() {
    run("malphite-base-score", malphite_base);
    run("boundedness-fuzz", boundedness);
    run("weighted-cosine-invariance", cosine_invariance);
    run("robust-z-golden", robust_golden);
    run("kmeans-exhaustive-oracle", kmeans_oracle);
    run("temporal-harness", temporal);
    run("calibration-recovery", calibration);
    run("decomposition-audit", decomposition);
    run("baseline-ablation-report", completeness);
    run("cli-table-columns", table_columns);
    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
