#include "champrec/service.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "champrec/error.hpp"
#include "champrec/evaluation.hpp"
#include "champrec/json_io.hpp"

namespace champrec {

namespace fs = std::filesystem;
using nlohmann::json;

std::pair<std::string, int> parse_bind_address(const std::string& text) {
    auto colon = text.rfind(':');
    std::string host = colon == std::string::npos ? "0.0.0.0" : text.substr(0, colon);
    std::string port = colon == std::string::npos ? text : text.substr(colon + 1);
    auto value = coerce_number(port);
    if (!value || *value < 0 || *value > 65535 || *value != std::floor(*value)) {
        throw Error(ErrorCode::InvalidArgument, "bad bind address '" + text + "'");
    }
    if (host.empty()) host = "0.0.0.0";
    return {host, static_cast<int>(*value)};
}

int http_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::PlayerNotFound:
        return 404;
    case ErrorCode::InvalidWeights:
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyHistory:
    case ErrorCode::HistoryTooShort:
        return 422;
    case ErrorCode::SourceUnavailable:
    case ErrorCode::MissingColumn:
    case ErrorCode::EmptyTable:
    case ErrorCode::DuplicateChampion:
    case ErrorCode::NegativeCount:
        return 502;
    default:
        return 500;
    }
}

namespace {

const char* env_or(const char* name, const char* fallback) {
    const char* v = std::getenv(name);
    return v != nullptr && *v != '\0' ? v : fallback;
}

DataBundle load_fixture_player(const fs::path& dir, const FeatureSchema& schema,
                               const std::vector<ChampionVector>& population) {
    auto history = load_history(CsvFileSource{(dir / "history.csv").string()}, schema);
    std::vector<MasteryRecord> mastery;
    if (fs::exists(dir / "mastery.csv")) mastery = load_mastery(CsvFileSource{(dir / "mastery.csv").string()});
    return assemble_bundle(schema, population, std::move(history), std::move(mastery));
}

HttpReply error_reply(ErrorCode code, const std::string& message) {
    return {http_status(code), error_json(to_string(code), message)};
}

json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    try {
        auto doc = json::parse(body);
        if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
        return doc;
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + e.what());
    }
}

std::string required_string(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_string() || it->get<std::string>().empty()) {
        throw Error(ErrorCode::InvalidArgument, std::string(key) + " is required");
    }
    return it->get<std::string>();
}

std::optional<double> optional_number(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw Error(ErrorCode::InvalidArgument, std::string(key) + " must be a number");
    return it->get<double>();
}

/// Request overrides applied to the snapshot config.
EngineConfig request_config(const Snapshot& snapshot, const json& doc) {
    EngineConfig cfg = snapshot.config;
    auto w = optional_number(doc, "lambda_W");
    auto f = optional_number(doc, "lambda_F");
    auto m = optional_number(doc, "lambda_M");
    if (w || f || m) {
        ScoreWeights weights{w.value_or(cfg.weights.win), f.value_or(cfg.weights.fit),
                             m.value_or(cfg.weights.mastery)};
        weights.validate(1e-6);
        cfg.weights = weights.normalized();
    }
    if (auto alpha = optional_number(doc, "alpha")) {
        if (*alpha < 0) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
        cfg.alpha = *alpha;
    }
    if (auto rho = optional_number(doc, "rho")) {
        if (!(*rho > 0)) throw Error(ErrorCode::InvalidArgument, "rho must be > 0");
        cfg.rho = *rho;
    }
    return cfg;
}

std::size_t positive_count(const json& doc, const char* key, std::size_t fallback) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return fallback;
    if (!it->is_number_integer() || it->get<long long>() < 1) {
        throw Error(ErrorCode::InvalidArgument, std::string(key) + " must be a positive integer");
    }
    return static_cast<std::size_t>(it->get<long long>());
}

template <typename F>
HttpReply guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return error_reply(e.code(), e.what());
    } catch (const std::exception& e) {
        return error_reply(ErrorCode::Internal, e.what());
    }
}

} // namespace

std::shared_ptr<const Snapshot> load_snapshot(const ServiceOptions& options) {
    auto snap = std::make_shared<Snapshot>();
    snap->config = options.config;
    snap->data_dir = options.data_dir;
    snap->schema = FeatureSchema::archetype_default();

    if (auto remote = http_source_from_env("POPULATION_TABLE")) {
        snap->population = load_population(TableSource{*remote}, snap->schema);
    } else {
        if (options.data_dir.empty()) {
            throw Error(ErrorCode::SourceUnavailable, "no data directory and no POPULATION_TABLE source");
        }
        snap->population =
            load_population(CsvFileSource{(fs::path(options.data_dir) / "population.csv").string()}, snap->schema);
    }
    snap->model = PopulationModel::build(snap->population, snap->schema, snap->config);

    if (!options.data_dir.empty() && fs::is_directory(options.data_dir)) {
        for (const auto& entry : fs::directory_iterator(options.data_dir)) {
            if (!entry.is_directory() || !fs::exists(entry.path() / "history.csv")) continue;
            snap->players.emplace(entry.path().filename().string(),
                                  load_fixture_player(entry.path(), snap->schema, snap->population));
        }
    }
    return snap;
}

DataBundle resolve_player(const Snapshot& snapshot, const std::string& game_name,
                          const std::string& tag_line) {
    if (auto it = snapshot.players.find(game_name + "_" + tag_line); it != snapshot.players.end()) {
        return it->second;
    }
    auto remote = http_source_from_env("PLAYER_TABLE");
    if (!remote) {
        throw Error(ErrorCode::PlayerNotFound, "no data for player " + game_name + "#" + tag_line);
    }
    remote->filters = {{env_or("PLAYER_FILTER_NAME", "riotIdGameName"), game_name},
                       {env_or("PLAYER_FILTER_TAG", "riotIdTagline"), tag_line}};
    auto table = read_table(TableSource{*remote});
    if (table.rows.empty()) {
        throw Error(ErrorCode::PlayerNotFound, "no matches for player " + game_name + "#" + tag_line);
    }
    auto history = load_history(table, snapshot.schema);
    std::vector<MasteryRecord> mastery;
    if (auto mastery_src = http_source_from_env("MASTERY_TABLE")) {
        mastery_src->filters = remote->filters;
        auto mt = read_table(TableSource{*mastery_src});
        if (!mt.rows.empty()) mastery = load_mastery(mt);
    }
    return assemble_bundle(snapshot.schema, snapshot.population, std::move(history), std::move(mastery));
}

HttpReply handle_recommend(const Snapshot& snapshot, const std::string& body) {
    return guarded([&] {
        auto doc = parse_body(body);
        auto game_name = required_string(doc, "gameName");
        auto tag_line = required_string(doc, "tagLine");
        auto top_n = positive_count(doc, "topN", 30);
        auto cfg = request_config(snapshot, doc);
        auto bundle = resolve_player(snapshot, game_name, tag_line);
        auto result = recommend(snapshot.model, bundle, cfg, top_n);
        return HttpReply{200, recommend_result_json(result)};
    });
}

HttpReply handle_evaluate(const Snapshot& snapshot, const std::string& body) {
    return guarded([&] {
        auto doc = parse_body(body);
        auto game_name = required_string(doc, "gameName");
        auto tag_line = required_string(doc, "tagLine");
        auto cfg = request_config(snapshot, doc);
        EvalOptions opts;
        opts.min_prefix = positive_count(doc, "min_prefix", opts.min_prefix);
        if (auto it = doc.find("ks"); it != doc.end()) {
            if (!it->is_array() || it->empty()) throw Error(ErrorCode::InvalidArgument, "ks must be a list");
            opts.ks.clear();
            for (const auto& k : *it) {
                if (!k.is_number_integer() || k.get<long long>() < 1) {
                    throw Error(ErrorCode::InvalidArgument, "ks entries must be positive integers");
                }
                opts.ks.push_back(static_cast<std::size_t>(k.get<long long>()));
            }
        }
        auto bundle = resolve_player(snapshot, game_name, tag_line);
        return HttpReply{200, eval_report_json(run_evaluation(bundle, cfg, opts))};
    });
}

// ---------------------------------------------------------------------------

struct Service::Impl {
    httplib::Server server;
    std::thread worker;
};

Service::Service(ServiceOptions options)
    : options_(std::move(options)), snapshot_(load_snapshot(options_)), impl_(std::make_unique<Impl>()) {
    install_routes();
}

Service::~Service() { stop(); }

std::shared_ptr<const Snapshot> Service::snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return snapshot_;
}

void Service::reload() {
    auto fresh = load_snapshot(options_);
    std::lock_guard<std::mutex> lock(mutex_);
    snapshot_ = std::move(fresh);
}

void Service::install_routes() {
    auto& srv = impl_->server;
    const std::string origin = options_.cors_origin;

    srv.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        if (origin.empty()) return;
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    });
    srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    srv.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
        auto snap = snapshot();
        json doc{{"status", "ok"},
                 {"champions", snap->model.champions.size()},
                 {"players", snap->players.size()}};
        res.set_content(doc.dump(), "application/json");
    });

    auto reply = [](httplib::Response& res, const HttpReply& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    srv.Post("/recommend", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_recommend(*snapshot(), req.body));
    });
    srv.Post("/evaluate", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_evaluate(*snapshot(), req.body));
    });
    srv.Post("/admin/reload", [this, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, guarded([&] {
                  reload();
                  auto snap = snapshot();
                  return HttpReply{200, json{{"status", "reloaded"},
                                             {"champions", snap->model.champions.size()},
                                             {"players", snap->players.size()}}
                                            .dump()};
              }));
    });
}

bool Service::listen() { return impl_->server.listen(options_.host, options_.port); }

int Service::start_background() {
    int port = impl_->server.bind_to_any_port(options_.host);
    if (port < 0) throw Error(ErrorCode::Internal, "could not bind " + options_.host);
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port;
}

void Service::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

} // namespace champrec
