#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "champrec/data_model.hpp"
#include "champrec/error.hpp"

namespace champrec {

namespace {

std::string cell_text(const nlohmann::json& v) {
    if (v.is_null()) return {};
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct SplitUrl {
    std::string origin; // scheme://host[:port]
    std::string path;   // without trailing slash
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorCode::SourceUnavailable, "table source URL lacks a scheme: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    SplitUrl out;
    out.origin = url.substr(0, path_start);
    out.path = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
    return out;
}

Table fetch_http(const HttpTableSource& src) {
    auto url = split_url(src.base_url);
    std::string path = url.path + "/" + src.table;
    char sep = '?';
    for (const auto& [key, value] : src.filters) {
        path += sep;
        path += httplib::detail::encode_query_param(key) + "=eq." +
                httplib::detail::encode_query_param(value);
        sep = '&';
    }

    httplib::Client client(url.origin);
    client.set_connection_timeout(5);
    client.set_read_timeout(30);
    httplib::Headers headers{{"Accept", "application/json, text/csv"}};
    if (!src.api_key.empty()) {
        headers.emplace("apikey", src.api_key);
        headers.emplace("Authorization", "Bearer " + src.api_key);
    }
    auto res = client.Get(path, headers);
    if (!res) {
        throw Error(ErrorCode::SourceUnavailable,
                    "table source unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw Error(ErrorCode::SourceUnavailable, "table source returned HTTP " +
                                                      std::to_string(res->status) + " for " + src.table);
    }
    auto first = res->body.find_first_not_of(" \t\r\n");
    bool json = res->get_header_value("Content-Type").find("json") != std::string::npos ||
                (first != std::string::npos && res->body[first] == '[');
    return json ? parse_json_rows(res->body) : parse_csv(res->body);
}

} // namespace

Table parse_json_rows(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON rows: ") + e.what());
    }
    if (!doc.is_array()) throw Error(ErrorCode::InvalidArgument, "JSON rows must be an array");

    Table table;
    for (const auto& row : doc) {
        if (!row.is_object()) throw Error(ErrorCode::InvalidArgument, "JSON row is not an object");
        for (const auto& item : row.items()) {
            if (!table.column(item.key())) table.columns.push_back(item.key());
        }
    }
    for (const auto& row : doc) {
        std::vector<std::string> cells(table.columns.size());
        for (const auto& item : row.items()) cells[*table.column(item.key())] = cell_text(item.value());
        table.rows.push_back(std::move(cells));
    }
    return table;
}

Table read_table(const TableSource& source) {
    if (const auto* file = std::get_if<CsvFileSource>(&source)) {
        return parse_csv(read_file(file->path));
    }
    return fetch_http(std::get<HttpTableSource>(source));
}

std::optional<HttpTableSource> http_source_from_env(const char* table_env_var) {
    const char* url = std::getenv("TABLE_SOURCE_URL");
    if (url == nullptr || *url == '\0') return std::nullopt;
    const char* table = std::getenv(table_env_var);
    if (table == nullptr || *table == '\0') {
        throw Error(ErrorCode::SourceUnavailable,
                    std::string("TABLE_SOURCE_URL is set but ") + table_env_var + " is not");
    }
    HttpTableSource src;
    src.base_url = url;
    src.table = table;
    if (const char* key = std::getenv("TABLE_SOURCE_KEY")) src.api_key = key;
    return src;
}

} // namespace champrec
