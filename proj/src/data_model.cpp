#include "champrec/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "champrec/error.hpp"

namespace champrec {

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
}

std::string quote_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostringstream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << quote_cell(cells[i]);
    }
    os << '\n';
}

std::size_t require_column(const Table& table, std::string_view name, std::string_view what) {
    auto idx = table.column(name);
    if (!idx) {
        throw Error(ErrorCode::MissingColumn,
                    std::string(what) + " table is missing column '" + std::string(name) + "'");
    }
    return *idx;
}

std::string champion_cell(const std::vector<std::string>& row, std::size_t col, std::size_t line) {
    std::string name(trim(row[col]));
    if (name.empty()) {
        throw Error(ErrorCode::InvalidArgument,
                    "row " + std::to_string(line) + " has an empty championName");
    }
    return name;
}

std::vector<std::optional<std::size_t>> feature_columns(const Table& table,
                                                        const FeatureSchema& schema) {
    std::vector<std::optional<std::size_t>> cols;
    cols.reserve(schema.size());
    for (const auto& e : schema.entries()) cols.push_back(table.column(e.name));
    return cols;
}

std::vector<std::optional<double>> read_features(const std::vector<std::string>& row,
                                                 const std::vector<std::optional<std::size_t>>& cols) {
    std::vector<std::optional<double>> out(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j]) out[j] = coerce_number(row[*cols[j]]);
    }
    return out;
}

std::optional<bool> parse_win(std::string_view cell) {
    auto v = lower(trim(cell));
    if (v == "true" || v == "1" || v == "win" || v == "1.0") return true;
    if (v == "false" || v == "0" || v == "loss" || v == "0.0") return false;
    return std::nullopt;
}

} // namespace

std::string_view to_string(Role role) {
    switch (role) {
    case Role::Top: return "Top";
    case Role::Jungle: return "Jungle";
    case Role::Middle: return "Middle";
    case Role::Bottom: return "Bottom";
    case Role::Utility: return "Utility";
    case Role::Unknown: return "Unknown";
    }
    return "Unknown";
}

Role parse_role(std::string_view text) {
    auto v = lower(trim(text));
    if (v == "top") return Role::Top;
    if (v == "jungle" || v == "jng") return Role::Jungle;
    if (v == "middle" || v == "mid") return Role::Middle;
    if (v == "bottom" || v == "bot" || v == "adc") return Role::Bottom;
    if (v == "utility" || v == "support" || v == "sup") return Role::Utility;
    return Role::Unknown;
}

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    return std::nullopt;
}

Table parse_csv(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        bool blank = record.size() == 1 && trim(record[0]).empty();
        if (!blank) records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_record();
        } else if (c == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n') continue;
            end_record();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw Error(ErrorCode::InvalidArgument, "unterminated quoted CSV field");
    if (field_started || !field.empty() || !record.empty()) end_record();

    Table table;
    if (records.empty()) return table;
    for (auto& h : records.front()) table.columns.emplace_back(trim(h));
    for (std::size_t r = 1; r < records.size(); ++r) {
        auto& row = records[r];
        if (row.size() > table.columns.size()) {
            throw Error(ErrorCode::InvalidArgument,
                        "CSV row " + std::to_string(r + 1) + " has more cells than the header");
        }
        row.resize(table.columns.size());
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::optional<double> coerce_number(std::string_view cell) {
    auto s = trim(cell);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::vector<ChampionVector> load_population(const Table& table, const FeatureSchema& schema) {
    auto name_col = require_column(table, "championName", "population");
    if (table.rows.empty()) throw Error(ErrorCode::EmptyTable, "population table has no rows");

    auto cols = feature_columns(table, schema);
    auto role_col = table.column("teamPosition");
    auto win_rate_col = table.column("winRate");
    auto wins_col = table.column("wins");
    auto games_col = table.column("games");
    auto sd_col = table.column("rowScoreSd");

    std::vector<ChampionVector> out;
    std::set<std::string> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        ChampionVector cv;
        cv.champion = champion_cell(row, name_col, r + 2);
        if (!seen.insert(cv.champion).second) {
            throw Error(ErrorCode::DuplicateChampion,
                        "population table lists '" + cv.champion + "' more than once");
        }
        cv.raw = read_features(row, cols);
        if (role_col) cv.role = parse_role(row[*role_col]);
        if (win_rate_col) cv.win_rate = coerce_number(row[*win_rate_col]);
        if (wins_col) cv.wins = coerce_number(row[*wins_col]);
        if (games_col) cv.games = coerce_number(row[*games_col]);
        if (sd_col) cv.row_score_sd = coerce_number(row[*sd_col]);
        out.push_back(std::move(cv));
    }
    return out;
}

std::vector<PlayerMatchRow> load_history(const Table& table, const FeatureSchema& schema) {
    auto name_col = require_column(table, "championName", "history");
    if (table.rows.empty()) throw Error(ErrorCode::EmptyTable, "history table has no rows");

    auto order_col = table.column("game_order");
    if (!order_col) order_col = table.column("gameCreation");
    auto role_col = table.column("teamPosition");
    auto win_col = table.column("win");
    auto cols = feature_columns(table, schema);

    struct Keyed {
        double key;
        PlayerMatchRow row;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        Keyed k;
        k.key = static_cast<double>(r);
        if (order_col) {
            auto key = coerce_number(row[*order_col]);
            if (!key) {
                throw Error(ErrorCode::InvalidArgument,
                            "history row " + std::to_string(r + 2) + " has no usable ordering key");
            }
            k.key = *key;
        }
        k.row.champion = champion_cell(row, name_col, r + 2);
        if (role_col) k.row.role = parse_role(row[*role_col]);
        if (win_col) k.row.win = parse_win(row[*win_col]);
        k.row.features = read_features(row, cols);
        keyed.push_back(std::move(k));
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const Keyed& a, const Keyed& b) { return a.key < b.key; });

    std::vector<PlayerMatchRow> out;
    out.reserve(keyed.size());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        keyed[i].row.index = i + 1;
        out.push_back(std::move(keyed[i].row));
    }
    return out;
}

std::vector<MasteryRecord> load_mastery(const Table& table) {
    auto name_col = require_column(table, "championName", "mastery");
    auto points_col = require_column(table, "championPoints", "mastery");
    auto level_col = require_column(table, "championLevel", "mastery");
    auto games_col = table.column("games");

    std::vector<MasteryRecord> out;
    std::set<std::string> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        MasteryRecord m;
        m.champion = champion_cell(row, name_col, r + 2);
        if (!seen.insert(m.champion).second) {
            throw Error(ErrorCode::DuplicateChampion,
                        "mastery table lists '" + m.champion + "' more than once");
        }
        double level = coerce_number(row[level_col]).value_or(0.0);
        m.points = coerce_number(row[points_col]).value_or(0.0);
        if (games_col) {
            if (auto g = coerce_number(row[*games_col])) {
                m.games = *g;
                m.games_from_column = true;
            }
        }
        if (m.points < 0 || level < 0 || m.games < 0) {
            throw Error(ErrorCode::NegativeCount,
                        "mastery row for '" + m.champion + "' has a negative count");
        }
        m.level = static_cast<int>(std::floor(level));
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<ChampionVector> load_population(const TableSource& source, const FeatureSchema& schema) {
    return load_population(read_table(source), schema);
}

std::vector<PlayerMatchRow> load_history(const TableSource& source, const FeatureSchema& schema) {
    return load_history(read_table(source), schema);
}

std::vector<MasteryRecord> load_mastery(const TableSource& source) {
    return load_mastery(read_table(source));
}

std::map<std::string, std::size_t> champion_counts(const std::vector<PlayerMatchRow>& history) {
    std::map<std::string, std::size_t> counts;
    for (const auto& row : history) ++counts[row.champion];
    return counts;
}

DataBundle assemble_bundle(FeatureSchema schema, std::vector<ChampionVector> population,
                           std::vector<PlayerMatchRow> history,
                           std::vector<MasteryRecord> mastery) {
    if (population.empty()) throw Error(ErrorCode::EmptyTable, "population table has no rows");
    auto counts = champion_counts(history);

    std::set<std::string> known;
    for (auto& m : mastery) {
        known.insert(m.champion);
        if (!m.games_from_column) {
            auto it = counts.find(m.champion);
            m.games = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        }
    }
    // History order keeps the appended records deterministic.
    for (const auto& row : history) {
        if (known.insert(row.champion).second) {
            MasteryRecord m;
            m.champion = row.champion;
            m.games = static_cast<double>(counts[row.champion]);
            mastery.push_back(std::move(m));
        }
    }
    return DataBundle{std::move(schema), std::move(population), std::move(history), std::move(mastery)};
}

std::string population_to_csv(const DataBundle& bundle) {
    bool roles = false, win_rate = false, wins = false, games = false, sd = false;
    for (const auto& c : bundle.population) {
        roles |= c.role != Role::Unknown;
        win_rate |= c.win_rate.has_value();
        wins |= c.wins.has_value();
        games |= c.games.has_value();
        sd |= c.row_score_sd.has_value();
    }
    std::ostringstream os;
    std::vector<std::string> header{"championName"};
    for (const auto& e : bundle.schema.entries()) header.push_back(e.name);
    if (roles) header.emplace_back("teamPosition");
    if (win_rate) header.emplace_back("winRate");
    if (wins) header.emplace_back("wins");
    if (games) header.emplace_back("games");
    if (sd) header.emplace_back("rowScoreSd");
    write_row(os, header);
    for (const auto& c : bundle.population) {
        std::vector<std::string> cells{c.champion};
        for (const auto& v : c.raw) cells.push_back(format_optional(v));
        if (roles) cells.emplace_back(c.role == Role::Unknown ? "" : to_string(c.role));
        if (win_rate) cells.push_back(format_optional(c.win_rate));
        if (wins) cells.push_back(format_optional(c.wins));
        if (games) cells.push_back(format_optional(c.games));
        if (sd) cells.push_back(format_optional(c.row_score_sd));
        write_row(os, cells);
    }
    return os.str();
}

std::string history_to_csv(const DataBundle& bundle) {
    std::ostringstream os;
    std::vector<std::string> header{"game_order", "championName", "teamPosition", "win"};
    for (const auto& e : bundle.schema.entries()) header.push_back(e.name);
    write_row(os, header);
    for (const auto& r : bundle.history) {
        std::vector<std::string> cells{std::to_string(r.index), r.champion,
                                       r.role == Role::Unknown ? "" : std::string(to_string(r.role)),
                                       r.win ? (*r.win ? "true" : "false") : ""};
        for (const auto& v : r.features) cells.push_back(format_optional(v));
        write_row(os, cells);
    }
    return os.str();
}

std::string mastery_to_csv(const DataBundle& bundle) {
    bool games = std::any_of(bundle.mastery.begin(), bundle.mastery.end(),
                             [](const MasteryRecord& m) { return m.games_from_column; });
    std::ostringstream os;
    std::vector<std::string> header{"championName", "championPoints", "championLevel"};
    if (games) header.emplace_back("games");
    write_row(os, header);
    for (const auto& m : bundle.mastery) {
        std::vector<std::string> cells{m.champion, format_number(m.points), std::to_string(m.level)};
        if (games) cells.push_back(m.games_from_column ? format_number(m.games) : "");
        write_row(os, cells);
    }
    return os.str();
}

} // namespace champrec
