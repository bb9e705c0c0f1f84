#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "champrec/config.hpp"
#include "champrec/data_model.hpp"
#include "champrec/error.hpp"
#include "champrec/scoring.hpp"

namespace champrec {

struct ServiceOptions {
    /// Holds `population.csv` and one `<gameName>_<tagLine>/` directory per
    /// player with `history.csv` and an optional `mastery.csv`.
    std::string data_dir;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string cors_origin = "*";
    EngineConfig config;
};

/// Parses `host:port` (BIND_ADDR form). A bare port binds 0.0.0.0.
std::pair<std::string, int> parse_bind_address(const std::string& text);

/// Everything a request reads. Built once, never modified afterwards.
struct Snapshot {
    EngineConfig config;
    PopulationModel model;
    FeatureSchema schema;
    std::vector<ChampionVector> population;
    std::map<std::string, DataBundle> players; // keyed by "<gameName>_<tagLine>"
    std::string data_dir;
};

std::shared_ptr<const Snapshot> load_snapshot(const ServiceOptions& options);

struct HttpReply {
    int status = 200;
    std::string body;
};

int http_status(ErrorCode code);

/// Resolves the player from the snapshot or, when TABLE_SOURCE_URL and
/// PLAYER_TABLE are set, from the remote table with the player filters.
DataBundle resolve_player(const Snapshot& snapshot, const std::string& game_name,
                          const std::string& tag_line);

HttpReply handle_recommend(const Snapshot& snapshot, const std::string& body);
HttpReply handle_evaluate(const Snapshot& snapshot, const std::string& body);

class Service {
public:
    explicit Service(ServiceOptions options);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    [[nodiscard]] std::shared_ptr<const Snapshot> snapshot() const;

    /// Loads a fresh snapshot and swaps it in. In-flight requests keep the
    /// one they started with.
    void reload();

    /// Blocks serving on the configured address.
    bool listen();
    /// Binds an ephemeral port, serves on a background thread, returns the port.
    int start_background();
    void stop();

private:
    struct Impl;
    ServiceOptions options_;
    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> snapshot_;
    std::unique_ptr<Impl> impl_;

    void install_routes();
};

} // namespace champrec
