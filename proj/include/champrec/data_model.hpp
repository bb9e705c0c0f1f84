#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "champrec/schema.hpp"

namespace champrec {

using Vec = std::vector<double>;

enum class Role { Top, Jungle, Middle, Bottom, Utility, Unknown };

inline constexpr Role kPlayableRoles[] = {Role::Top, Role::Jungle, Role::Middle, Role::Bottom,
                                          Role::Utility};

std::string_view to_string(Role role);
/// Accepts the match-API position names (TOP, JUNGLE, MIDDLE, BOTTOM, UTILITY)
/// and common aliases, case-insensitively. Anything else maps to Unknown.
Role parse_role(std::string_view text);

/// One champion row of the population table. `raw` and `normalized` are laid
/// out in schema order; absent raw cells stay empty until normalization maps
/// them to zero.
struct ChampionVector {
    std::string champion;
    std::vector<std::optional<double>> raw;
    Vec normalized;

    // Optional role-mode columns.
    Role role = Role::Unknown;
    std::optional<double> win_rate;
    std::optional<double> wins;
    std::optional<double> games;
    std::optional<double> row_score_sd;

    bool operator==(const ChampionVector&) const = default;
};

struct PlayerMatchRow {
    std::size_t index = 0; // 1..T in time order
    std::string champion;
    Role role = Role::Unknown;
    std::optional<bool> win;
    std::vector<std::optional<double>> features;
    Vec normalized;

    bool operator==(const PlayerMatchRow&) const = default;
};

struct MasteryRecord {
    std::string champion;
    double points = 0.0;
    int level = 0;
    double games = 0.0;
    /// False when `games` was filled from the history rather than read from a
    /// games column. Prefix evaluation refills those counts.
    bool games_from_column = false;

    bool operator==(const MasteryRecord&) const = default;
};

struct DataBundle {
    FeatureSchema schema;
    std::vector<ChampionVector> population;
    std::vector<PlayerMatchRow> history;
    std::vector<MasteryRecord> mastery;

    bool operator==(const DataBundle&) const = default;
};

// ---------------------------------------------------------------------------
// Tables and sources

/// A rectangular table of string cells as read from CSV or JSON rows.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
};

struct CsvFileSource {
    std::string path;
};

/// HTTP GET against a PostgREST-style table endpoint:
/// `{base_url}/{table}?col=eq.value...`, returning CSV or a JSON array of rows.
struct HttpTableSource {
    std::string base_url;
    std::string api_key;
    std::string table;
    std::vector<std::pair<std::string, std::string>> filters;
};

using TableSource = std::variant<CsvFileSource, HttpTableSource>;

/// HTTP source configured from TABLE_SOURCE_URL / TABLE_SOURCE_KEY and the
/// given table-name variable. Empty when TABLE_SOURCE_URL is unset.
std::optional<HttpTableSource> http_source_from_env(const char* table_env_var);

Table parse_csv(std::string_view text);
/// Parses a JSON array of flat objects. Column order follows first appearance.
Table parse_json_rows(std::string_view text);
Table read_table(const TableSource& source);

// ---------------------------------------------------------------------------
// Loaders

/// Trims whitespace and parses a finite number; anything else is absent.
std::optional<double> coerce_number(std::string_view cell);

std::vector<ChampionVector> load_population(const Table& table, const FeatureSchema& schema);
std::vector<PlayerMatchRow> load_history(const Table& table, const FeatureSchema& schema);
std::vector<MasteryRecord> load_mastery(const Table& table);

std::vector<ChampionVector> load_population(const TableSource& source, const FeatureSchema& schema);
std::vector<PlayerMatchRow> load_history(const TableSource& source, const FeatureSchema& schema);
std::vector<MasteryRecord> load_mastery(const TableSource& source);

/// Adds zero mastery records for history champions that lack one and fills
/// games counts that did not come from a games column.
DataBundle assemble_bundle(FeatureSchema schema, std::vector<ChampionVector> population,
                           std::vector<PlayerMatchRow> history,
                           std::vector<MasteryRecord> mastery);

/// Observed game count per champion.
std::map<std::string, std::size_t> champion_counts(const std::vector<PlayerMatchRow>& history);

// ---------------------------------------------------------------------------
// CSV writers (inverse of the loaders)

std::string population_to_csv(const DataBundle& bundle);
std::string history_to_csv(const DataBundle& bundle);
std::string mastery_to_csv(const DataBundle& bundle);

} // namespace champrec
