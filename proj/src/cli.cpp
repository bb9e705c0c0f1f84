#include "champrec/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "champrec/error.hpp"
#include "champrec/evaluation.hpp"
#include "champrec/json_io.hpp"
#include "champrec/service.hpp"

namespace champrec {

std::string recommendation_table(const std::vector<Recommendation>& recs) {
    std::size_t name_w = 8;
    for (const auto& r : recs) name_w = std::max(name_w, r.champion.size());
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-*s  %-16s  %7s  %9s  %7s  %7s  %9s  %10s\n", static_cast<int>(name_w),
                  "Champion", "Type", "Final", "Win proxy", "Fit", "Mastery", "Guardrail", "Similarity");
    os << line;
    for (const auto& r : recs) {
        std::snprintf(line, sizeof line, "%-*s  %-16s  %7.3f  %9.3f  %7.3f  %7.3f  %9.3f  %10.3f\n",
                      static_cast<int>(name_w), r.champion.c_str(), std::string(to_string(r.type)).c_str(),
                      r.final_score, r.win_score, r.fit_score, r.mastery_score, r.archetype_guardrail,
                      r.similarity_raw);
        os << line;
    }
    return os.str();
}

namespace {

struct InputFlags {
    std::string player_csv;
    std::string mastery_csv;
    std::string population_csv;
    std::string config_path;
    std::string weights;
    bool normalize_weights = false;
    std::optional<double> alpha;
    std::optional<double> rho;
    std::optional<std::uint64_t> seed;
};

void add_input_flags(CLI::App* cmd, InputFlags& f) {
    cmd->add_option("--player-csv", f.player_csv, "Player match history CSV");
    cmd->add_option("--mastery-csv", f.mastery_csv, "Champion mastery CSV");
    cmd->add_option("--population-csv", f.population_csv, "Population champion table CSV");
    cmd->add_option("--config", f.config_path, "JSON engine config");
    cmd->add_option("--weights", f.weights, "lambda_W,lambda_F,lambda_M");
    cmd->add_flag("--normalize-weights", f.normalize_weights, "Rescale --weights to sum to 1 instead of rejecting");
    cmd->add_option("--alpha", f.alpha, "Attention strength");
    cmd->add_option("--rho", f.rho, "Recency decay");
    cmd->add_option("--seed", f.seed, "Seed for clustering and the random baseline");
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        auto v = coerce_number(cell);
        if (!v) throw Error(ErrorCode::InvalidArgument, std::string("bad number in ") + what + ": '" + cell + "'");
        out.push_back(*v);
    }
    return out;
}

EngineConfig build_config(const InputFlags& f) {
    EngineConfig cfg = f.config_path.empty() ? EngineConfig{} : load_config(f.config_path);
    if (!f.weights.empty()) {
        auto w = parse_number_list(f.weights, "--weights");
        if (w.size() != 3) throw Error(ErrorCode::InvalidWeights, "--weights takes three values w,f,m");
        ScoreWeights weights{w[0], w[1], w[2]};
        if (f.normalize_weights) {
            for (double x : w) {
                if (x < 0) throw Error(ErrorCode::InvalidWeights, "score weights must be nonnegative");
            }
            weights = weights.normalized();
        } else {
            weights.validate(1e-6);
            weights = weights.normalized();
        }
        cfg.weights = weights;
    }
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.rho) cfg.rho = *f.rho;
    if (f.seed) cfg.archetype.seed = *f.seed;
    cfg.validate();
    return cfg;
}

TableSource pick_source(const std::string& path, const char* flag, const char* table_env, bool required) {
    if (!path.empty()) return CsvFileSource{path};
    if (auto remote = http_source_from_env(table_env)) return *remote;
    if (required) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string("SourceUnavailable: ") + flag + " is required (or set TABLE_SOURCE_URL and " +
                        table_env + ")");
    }
    return CsvFileSource{};
}

DataBundle load_inputs(const InputFlags& f) {
    auto schema = FeatureSchema::archetype_default();
    auto population_src = pick_source(f.population_csv, "--population-csv", "POPULATION_TABLE", true);
    auto player_src = pick_source(f.player_csv, "--player-csv", "PLAYER_TABLE", true);
    auto population = load_population(population_src, schema);
    auto history = load_history(player_src, schema);
    std::vector<MasteryRecord> mastery;
    if (!f.mastery_csv.empty()) {
        mastery = load_mastery(CsvFileSource{f.mastery_csv});
    } else if (auto remote = http_source_from_env("MASTERY_TABLE")) {
        mastery = load_mastery(TableSource{*remote});
    }
    return assemble_bundle(std::move(schema), std::move(population), std::move(history), std::move(mastery));
}

int exit_code(ErrorCode code) { return code == ErrorCode::SourceUnavailable ? 2 : 1; }

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interpretable champion recommender", "champrec"};
    app.require_subcommand(1);

    InputFlags rec_flags;
    std::size_t top_n = 30;
    std::string format = "json";
    auto* rec = app.add_subcommand("recommend", "Rank champions for one player");
    add_input_flags(rec, rec_flags);
    rec->add_option("--top-n", top_n, "Number of recommendations")->check(CLI::PositiveNumber);
    rec->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));

    InputFlags eval_flags;
    std::string ks_text = "1,3,5,10";
    std::size_t min_prefix = 5;
    std::string out_path;
    auto* eval = app.add_subcommand("evaluate", "Temporal evaluation, calibration, baselines, ablations");
    add_input_flags(eval, eval_flags);
    eval->add_option("--ks", ks_text, "Comma-separated cutoffs K");
    eval->add_option("--min-prefix", min_prefix, "Smallest prefix evaluated")->check(CLI::PositiveNumber);
    eval->add_option("--out", out_path, "Write the report here instead of stdout");

    ServiceOptions serve_opts;
    std::string bind;
    std::string serve_config;
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--data-dir", serve_opts.data_dir, "Fixture directory");
    serve->add_option("--bind", bind, "host:port (default BIND_ADDR or 127.0.0.1:8080)");
    serve->add_option("--cors-origin", serve_opts.cors_origin, "Allowed browser origin; empty disables CORS");
    serve->add_option("--config", serve_config, "JSON engine config");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (rec->parsed()) {
            auto cfg = build_config(rec_flags);
            auto bundle = load_inputs(rec_flags);
            auto result = recommend(bundle, cfg, top_n);
            if (format == "table") {
                out << recommendation_table(result.recommendations);
            } else {
                out << recommend_result_json(result, 2) << "\n";
            }
            return 0;
        }
        if (eval->parsed()) {
            auto cfg = build_config(eval_flags);
            EvalOptions opts;
            opts.min_prefix = min_prefix;
            opts.ks.clear();
            for (double k : parse_number_list(ks_text, "--ks")) {
                if (k < 1 || k != static_cast<double>(static_cast<std::size_t>(k))) {
                    throw Error(ErrorCode::InvalidArgument, "--ks entries must be positive integers");
                }
                opts.ks.push_back(static_cast<std::size_t>(k));
            }
            if (opts.ks.empty()) throw Error(ErrorCode::InvalidArgument, "--ks is empty");
            if (eval_flags.seed) opts.seed = *eval_flags.seed;
            auto bundle = load_inputs(eval_flags);
            auto text = eval_report_json(run_evaluation(bundle, cfg, opts), 2) + "\n";
            if (out_path.empty()) {
                out << text;
            } else {
                std::ofstream file(out_path);
                if (!file) throw Error(ErrorCode::SourceUnavailable, "cannot write '" + out_path + "'");
                file << text;
            }
            return 0;
        }
        if (serve->parsed()) {
            if (!serve_config.empty()) serve_opts.config = load_config(serve_config);
            if (bind.empty()) {
                const char* env = std::getenv("BIND_ADDR");
                bind = env != nullptr && *env != '\0' ? env : "127.0.0.1:8080";
            }
            std::tie(serve_opts.host, serve_opts.port) = parse_bind_address(bind);
            Service service(serve_opts);
            err << "listening on " << serve_opts.host << ":" << serve_opts.port << "\n";
            return service.listen() ? 0 : 2;
        }
    } catch (const Error& e) {
        err << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "Internal: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace champrec
