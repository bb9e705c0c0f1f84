#include "champrec/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "champrec/error.hpp"

namespace champrec {

void ScoreWeights::validate(double tolerance) const {
    for (double w : {win, fit, mastery}) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::InvalidWeights, "score weights must be nonnegative");
        }
    }
    if (std::abs(win + fit + mastery - 1.0) > tolerance) {
        throw Error(ErrorCode::InvalidWeights, "score weights must sum to 1");
    }
}

ScoreWeights ScoreWeights::normalized() const {
    double total = win + fit + mastery;
    if (!(total > 0.0)) throw Error(ErrorCode::InvalidWeights, "score weights sum to zero");
    return {win / total, fit / total, mastery / total};
}

bool Ablation::any() const {
    return drop_strength || drop_fit || drop_direct_mastery || drop_indirect || drop_guardrail ||
           ordinary_z || uniform_recency || unweighted_cosine;
}

void EngineConfig::validate() const {
    weights.validate();
    auto require = [](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::InvalidArgument, std::string("invalid config: ") + what);
    };
    require(alpha >= 0.0, "fit.alpha must be >= 0");
    require(fit_blend.game >= 0.0 && fit_blend.pool >= 0.0 && fit_blend.game + fit_blend.pool > 0.0,
            "fit blend weights must be nonnegative and not both zero");
    require(rho > 0.0, "player.rho must be > 0");
    require(shrinkage.K > 0.0, "shrinkage.K must be > 0");
    require(shrinkage.lambda >= 0.0, "shrinkage.lambda must be >= 0");
    require(prior_alpha0 > 0.0 && prior_beta0 > 0.0, "prior parameters must be > 0");
    require(mastery.topk >= 1, "mastery.topk must be >= 1");
    require(mastery.weight_floor >= 0.0 && mastery.weight_floor <= 1.0,
            "mastery.weight_floor must lie in [0,1]");
    require(archetype.k >= 1, "archetype.k must be >= 1");
    require(archetype.restarts >= 1, "archetype.restarts must be >= 1");
    require(archetype.max_iters >= 1, "archetype.max_iters must be >= 1");
}

namespace {

void flatten(const nlohmann::json& node, const std::string& prefix,
             std::vector<std::pair<std::string, nlohmann::json>>& out) {
    for (const auto& item : node.items()) {
        std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
        if (item.value().is_object()) flatten(item.value(), key, out);
        else out.emplace_back(key, item.value());
    }
}

} // namespace

EngineConfig config_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed config: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");

    EngineConfig cfg;
    auto real = [](double& slot) {
        return [&slot](const nlohmann::json& v) { slot = v.get<double>(); };
    };
    auto count = [](std::size_t& slot) {
        return [&slot](const nlohmann::json& v) {
            auto x = v.get<long long>();
            if (x < 0) throw Error(ErrorCode::InvalidArgument, "config count must be >= 0");
            slot = static_cast<std::size_t>(x);
        };
    };
    auto flag = [](bool& slot) {
        return [&slot](const nlohmann::json& v) { slot = v.get<bool>(); };
    };
    const std::map<std::string, std::function<void(const nlohmann::json&)>> setters{
        {"weights.lambda_W", real(cfg.weights.win)},
        {"weights.lambda_F", real(cfg.weights.fit)},
        {"weights.lambda_M", real(cfg.weights.mastery)},
        {"fit.alpha", real(cfg.alpha)},
        {"fit.game_weight", real(cfg.fit_blend.game)},
        {"fit.pool_weight", real(cfg.fit_blend.pool)},
        {"player.rho", real(cfg.rho)},
        {"shrinkage.K", real(cfg.shrinkage.K)},
        {"shrinkage.beta", real(cfg.shrinkage.beta)},
        {"shrinkage.lambda", real(cfg.shrinkage.lambda)},
        {"prior.alpha0", real(cfg.prior_alpha0)},
        {"prior.beta0", real(cfg.prior_beta0)},
        {"mastery.topk", count(cfg.mastery.topk)},
        {"mastery.weight_floor", real(cfg.mastery.weight_floor)},
        {"archetype.k", count(cfg.archetype.k)},
        {"archetype.restarts", count(cfg.archetype.restarts)},
        {"archetype.max_iters", count(cfg.archetype.max_iters)},
        {"archetype.seed",
         [&cfg](const nlohmann::json& v) { cfg.archetype.seed = v.get<std::uint64_t>(); }},
        {"ablation.drop_strength", flag(cfg.ablation.drop_strength)},
        {"ablation.drop_fit", flag(cfg.ablation.drop_fit)},
        {"ablation.drop_direct_mastery", flag(cfg.ablation.drop_direct_mastery)},
        {"ablation.drop_indirect", flag(cfg.ablation.drop_indirect)},
        {"ablation.drop_guardrail", flag(cfg.ablation.drop_guardrail)},
        {"ablation.ordinary_z", flag(cfg.ablation.ordinary_z)},
        {"ablation.uniform_recency", flag(cfg.ablation.uniform_recency)},
        {"ablation.unweighted_cosine", flag(cfg.ablation.unweighted_cosine)},
    };

    std::vector<std::pair<std::string, nlohmann::json>> entries;
    flatten(doc, "", entries);
    for (const auto& [key, value] : entries) {
        auto it = setters.find(key);
        if (it == setters.end()) throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
        try {
            it->second(value);
        } catch (const nlohmann::json::exception&) {
            throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' has the wrong type");
        }
    }
    cfg.validate();
    return cfg;
}

EngineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

} // namespace champrec
