#include "champrec/json_io.hpp"

#include <cmath>

#include <json.hpp>

namespace champrec {

using json = nlohmann::ordered_json;

double round6(double x) {
    double r = std::round(x * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r; // no "-0.0"
}

namespace {

json recommendation_json(const Recommendation& r) {
    return json{
        {"championName", r.champion},
        {"recommendation_type", std::string(to_string(r.type))},
        {"archetype_name", r.archetype_name},
        {"final_score", round6(r.final_score)},
        {"win_score", round6(r.win_score)},
        {"fit_score", round6(r.fit_score)},
        {"mastery_score", round6(r.mastery_score)},
        {"archetype_guardrail", round6(r.archetype_guardrail)},
        {"population_strength_score", round6(r.population_strength_score)},
        {"direct_mastery_score", round6(r.direct_mastery_score)},
        {"indirect_mastery_score", round6(r.indirect_mastery_score)},
        {"player_games", r.player_games},
        {"similarity_raw", round6(r.similarity_raw)},
    };
}

json weights_json(const ScoreWeights& w) {
    return json{{"lambda_W", round6(w.win)}, {"lambda_F", round6(w.fit)}, {"lambda_M", round6(w.mastery)}};
}

json metadata_json(const RecommendMetadata& m) {
    json roles = json::object();
    for (const auto& [role, n] : m.role_mix) roles[role] = n;
    return json{
        {"games", m.games},
        {"role_mix", roles},
        {"top_archetypes", m.top_archetypes},
        {"weights_used", weights_json(m.weights_used)},
        {"alpha", round6(m.alpha)},
        {"rho", round6(m.rho)},
        {"role_mode", m.role_mode},
        {"candidates", m.candidates},
        {"warnings", m.warnings},
    };
}

json metrics_json(const RankingMetrics& m) {
    json hits = json::object();
    for (const auto& [k, v] : m.hit_at_k) hits[std::to_string(k)] = round6(v);
    return json{{"hit_at_k", hits}, {"mrr", round6(m.mrr)}, {"N", m.steps}, {"skipped", m.skipped}};
}

} // namespace

std::string recommend_result_json(const RecommendResult& result, int indent) {
    json recs = json::array();
    for (const auto& r : result.recommendations) recs.push_back(recommendation_json(r));
    json doc{{"recommendations", recs}, {"metadata", metadata_json(result.metadata)}};
    return doc.dump(indent);
}

std::string eval_report_json(const EvalReport& report, int indent) {
    json doc = metrics_json(report.model);
    doc["ks"] = report.options.ks;
    doc["min_prefix"] = report.options.min_prefix;
    doc["seed"] = report.options.seed;
    if (report.calibration) {
        const auto& c = *report.calibration;
        doc["calibration"] = json{{"a", round6(c.a)},
                                  {"b", round6(c.b)},
                                  {"log_loss", round6(c.log_loss)},
                                  {"n", c.n},
                                  {"iterations", c.iterations}};
    } else {
        doc["calibration"] = nullptr;
        doc["calibration_error"] = report.calibration_error;
    }
    json baselines = json::object();
    for (const auto& [name, m] : report.baselines) baselines[name] = metrics_json(m);
    json ablations = json::object();
    for (const auto& [name, m] : report.ablations) ablations[name] = metrics_json(m);
    doc["baselines"] = baselines;
    doc["ablations"] = ablations;
    return doc.dump(indent);
}

std::string error_json(std::string_view code, std::string_view message) {
    return json{{"error", {{"code", std::string(code)}, {"message", std::string(message)}}}}.dump();
}

} // namespace champrec
