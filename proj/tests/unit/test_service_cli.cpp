#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "champrec/cli.hpp"
#include "champrec/config.hpp"
#include "champrec/error.hpp"
#include "champrec/service.hpp"

using namespace champrec;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kSample = CHAMPREC_SAMPLE_DIR;
const std::string kPlayer = kSample + "/DivineRaccoon_NA1";

const char* const kFields[] = {
    "championName",          "recommendation_type", "archetype_name",     "final_score",
    "win_score",             "fit_score",           "mastery_score",      "archetype_guardrail",
    "population_strength_score", "direct_mastery_score", "indirect_mastery_score", "player_games",
    "similarity_raw",
};

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> base_args(const char* command) {
    return {command, "--player-csv", kPlayer + "/history.csv", "--mastery-csv", kPlayer + "/mastery.csv",
            "--population-csv", kSample + "/population.csv"};
}

std::shared_ptr<const Snapshot> sample_snapshot() {
    static auto snap = [] {
        ServiceOptions opts;
        opts.data_dir = kSample;
        return load_snapshot(opts);
    }();
    return snap;
}

} // namespace

TEST_CASE("config files accept nested and dotted keys") {
    auto cfg = config_from_json_text(R"({"weights": {"lambda_W": 0.6, "lambda_F": 0.2, "lambda_M": 0.2},
                                         "fit.alpha": 0.5, "archetype": {"k": 4}})");
    CHECK(cfg.weights.win == 0.6);
    CHECK(cfg.alpha == 0.5);
    CHECK(cfg.archetype.k == 4);
    CHECK_THROWS_AS(config_from_json_text(R"({"fit": {"beta": 1}})"), Error);
    CHECK_THROWS_AS(config_from_json_text(R"({"weights": {"lambda_W": 0.9}})"), Error);
    CHECK_THROWS_AS(config_from_json_text("[1,2]"), Error);
}

TEST_CASE("parse_bind_address") {
    CHECK(parse_bind_address("127.0.0.1:9000") == std::pair<std::string, int>{"127.0.0.1", 9000});
    CHECK(parse_bind_address("8080") == std::pair<std::string, int>{"0.0.0.0", 8080});
    CHECK_THROWS_AS(parse_bind_address("host:port"), Error);
}

TEST_CASE("handle_recommend") {
    auto snap = sample_snapshot();
    auto ok = handle_recommend(*snap, R"({"gameName":"DivineRaccoon","tagLine":"NA1","topN":10})");
    REQUIRE(ok.status == 200);
    auto doc = json::parse(ok.body);
    REQUIRE(doc["recommendations"].size() == 10);
    for (const auto& rec : doc["recommendations"]) {
        for (const char* f : kFields) CHECK(rec.contains(f));
    }
    CHECK(doc["metadata"]["games"] == 100);
    CHECK(doc["metadata"]["role_mix"]["Middle"] == 42);
    CHECK(doc["metadata"]["role_mix"]["Top"] == 19);

    auto defaults = json::parse(handle_recommend(*snap, R"({"gameName":"DivineRaccoon","tagLine":"NA1"})").body);
    CHECK(defaults["recommendations"].size() == 30);

    CHECK(handle_recommend(*snap, R"({"gameName":"DivineRaccoon","tagLine":"NA1","topN":0})").status == 422);
    CHECK(handle_recommend(*snap, R"({"gameName":"Nobody","tagLine":"EUW"})").status == 404);
    auto bad_weights = handle_recommend(
        *snap, R"({"gameName":"DivineRaccoon","tagLine":"NA1","lambda_W":0.5,"lambda_F":0.5,"lambda_M":0.5})");
    CHECK(bad_weights.status == 422);
    CHECK(json::parse(bad_weights.body)["error"]["code"] == "InvalidWeights");
    CHECK(handle_recommend(*snap, "{not json").status == 422);

    auto custom = json::parse(handle_recommend(*snap, R"({"gameName":"DivineRaccoon","tagLine":"NA1",
        "lambda_W":0.2,"lambda_F":0.6,"lambda_M":0.2,"alpha":0.3,"rho":0.05})")
                                  .body);
    CHECK(custom["metadata"]["weights_used"]["lambda_F"] == 0.6);
    CHECK(custom["metadata"]["rho"] == 0.05);
}

TEST_CASE("concurrent identical requests return identical bodies") {
    auto snap = sample_snapshot();
    const std::string body = R"({"gameName":"DivineRaccoon","tagLine":"NA1","topN":15})";
    std::vector<std::future<HttpReply>> futures;
    for (int i = 0; i < 4; ++i) {
        futures.push_back(std::async(std::launch::async, [&] { return handle_recommend(*snap, body); }));
    }
    auto first = futures[0].get().body;
    for (std::size_t i = 1; i < futures.size(); ++i) CHECK(futures[i].get().body == first);
}

TEST_CASE("handle_evaluate") {
    auto snap = sample_snapshot();
    auto r = handle_evaluate(*snap, R"({"gameName":"DivineRaccoon","tagLine":"NA1","ks":[1,3]})");
    REQUIRE(r.status == 200);
    auto doc = json::parse(r.body);
    CHECK(doc["hit_at_k"].size() == 2);
    CHECK(doc["baselines"].size() == 6);
    CHECK(doc["ablations"].size() == 8);
}

TEST_CASE("HTTP service routes and snapshot reload") {
    auto dir = fs::temp_directory_path() / "champrec_service_test";
    fs::remove_all(dir);
    fs::create_directories(dir / "DivineRaccoon_NA1");
    fs::copy_file(kSample + "/population.csv", dir / "population.csv");
    fs::copy_file(kPlayer + "/history.csv", dir / "DivineRaccoon_NA1" / "history.csv");

    ServiceOptions opts;
    opts.data_dir = dir.string();
    opts.cors_origin = "http://localhost:5173";
    Service service(opts);
    int port = service.start_background();
    httplib::Client client("127.0.0.1", port);

    auto health = client.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(health->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");

    auto rec = client.Post("/recommend", R"({"gameName":"DivineRaccoon","tagLine":"NA1","topN":5})",
                           "application/json");
    REQUIRE(rec);
    CHECK(rec->status == 200);
    CHECK(json::parse(rec->body)["recommendations"].size() == 5);

    auto missing = client.Post("/recommend", R"({"gameName":"Ghost","tagLine":"NA1"})", "application/json");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    auto before = service.snapshot();
    fs::create_directories(dir / "Ghost_NA1");
    fs::copy_file(kPlayer + "/history.csv", dir / "Ghost_NA1" / "history.csv");
    auto reload = client.Post("/admin/reload", "", "application/json");
    REQUIRE(reload);
    CHECK(reload->status == 200);
    CHECK(service.snapshot() != before);
    CHECK(before->players.size() == 1); // the old snapshot is untouched

    auto found = client.Post("/recommend", R"({"gameName":"Ghost","tagLine":"NA1","topN":3})", "application/json");
    REQUIRE(found);
    CHECK(found->status == 200);

    service.stop();
    fs::remove_all(dir);
}

TEST_CASE("HTTP table source reads CSV and JSON rows") {
    httplib::Server upstream;
    std::string seen_key, seen_query;
    upstream.Get("/rest/v1/population", [&](const httplib::Request& req, httplib::Response& res) {
        seen_key = req.get_header_value("apikey");
        res.set_content("championName,x\nAhri,1\nLux,2\n", "text/csv");
    });
    upstream.Get("/rest/v1/matches", [&](const httplib::Request& req, httplib::Response& res) {
        seen_query = req.get_param_value("riotIdGameName");
        res.set_content(R"([{"championName":"Ahri","x":3}])", "application/json");
    });
    int port = upstream.bind_to_any_port("127.0.0.1");
    std::thread worker([&] { upstream.listen_after_bind(); });
    upstream.wait_until_ready();
    std::string base = "http://127.0.0.1:" + std::to_string(port) + "/rest/v1";

    auto csv = read_table(HttpTableSource{base, "secret", "population", {}});
    CHECK(csv.rows.size() == 2);
    CHECK(seen_key == "secret");

    auto rows = read_table(HttpTableSource{base, "", "matches", {{"riotIdGameName", "Divine Raccoon"}}});
    CHECK(rows.rows.size() == 1);
    CHECK(rows.columns == std::vector<std::string>{"championName", "x"});
    CHECK(seen_query == "eq.Divine Raccoon");

    try {
        read_table(HttpTableSource{base, "", "absent", {}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SourceUnavailable);
    }
    upstream.stop();
    worker.join();

    try {
        read_table(HttpTableSource{base, "", "population", {}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SourceUnavailable);
    }
}

TEST_CASE("cli recommend") {
    auto args = base_args("recommend");
    args.insert(args.end(), {"--top-n", "10", "--format", "table"});
    auto table = cli(args);
    REQUIRE(table.code == 0);
    std::istringstream lines(table.out);
    std::string head;
    std::getline(lines, head);
    for (const char* col : {"Champion", "Type", "Final", "Win proxy", "Fit", "Mastery", "Guardrail", "Similarity"}) {
        CHECK(head.find(col) != std::string::npos);
    }
    int count = 0;
    for (std::string line; std::getline(lines, line);) ++count;
    CHECK(count == 10);

    auto as_json = cli(base_args("recommend"));
    REQUIRE(as_json.code == 0);
    CHECK(json::parse(as_json.out)["recommendations"].size() == 30);

    auto missing = cli({"recommend", "--player-csv", kPlayer + "/history.csv"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("SourceUnavailable") != std::string::npos);

    auto strict = base_args("recommend");
    strict.insert(strict.end(), {"--weights", "1,1,1"});
    CHECK(cli(strict).code == 1);
    strict.push_back("--normalize-weights");
    auto relaxed = cli(strict);
    REQUIRE(relaxed.code == 0);
    CHECK(json::parse(relaxed.out)["metadata"]["weights_used"]["lambda_W"] == doctest::Approx(0.333333));

    auto absent = cli({"recommend", "--player-csv", "/nonexistent.csv", "--population-csv", "/nonexistent.csv"});
    CHECK(absent.code == 2);

    CHECK(cli({"recommend", "--top-n", "0"}).code == 1);
    CHECK(cli({}).code == 1);
}

TEST_CASE("cli evaluate") {
    auto args = base_args("evaluate");
    args.insert(args.end(), {"--ks", "1,3"});
    auto run = cli(args);
    REQUIRE(run.code == 0);
    auto doc = json::parse(run.out);
    CHECK(doc["hit_at_k"].size() == 2);
    CHECK(doc["hit_at_k"].contains("1"));
    CHECK(doc["hit_at_k"].contains("3"));
    CHECK(doc.contains("mrr"));
    CHECK(doc["baselines"].size() == 6);
    CHECK(doc["ablations"].size() == 8);

    auto out = fs::temp_directory_path() / "champrec_eval.json";
    auto to_file = base_args("evaluate");
    to_file.insert(to_file.end(), {"--out", out.string()});
    REQUIRE(cli(to_file).code == 0);
    std::ifstream in(out);
    CHECK(json::parse(in)["baselines"].size() == 6);
    fs::remove(out);

    auto one = fs::temp_directory_path() / "champrec_one_game.csv";
    {
        std::ifstream src(kPlayer + "/history.csv");
        std::ofstream dst(one);
        std::string line;
        std::getline(src, line);
        dst << line << "\n";
        std::getline(src, line);
        dst << line << "\n";
    }
    auto short_run = cli({"evaluate", "--player-csv", one.string(), "--population-csv", kSample + "/population.csv"});
    CHECK(short_run.code == 1);
    CHECK(short_run.err.find("HistoryTooShort") != std::string::npos);
    fs::remove(one);
}
