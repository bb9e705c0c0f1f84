#include <doctest.h>

#include <random>

#include "champrec/error.hpp"
#include "champrec/robust.hpp"
#include "support/synthetic.hpp"

using namespace champrec;

namespace {

const FeatureSchema kSchema = FeatureSchema::archetype_default();

std::string header() {
    std::string h = "championName";
    for (const auto& n : kSchema.names()) h += "," + n;
    return h;
}

std::string row(const std::string& name, double base) {
    std::string r = name;
    for (std::size_t j = 0; j < kSchema.size(); ++j) r += "," + std::to_string(base + static_cast<double>(j));
    return r;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

} // namespace

TEST_CASE("parse_csv handles quoting, BOM, CRLF and blank lines") {
    auto t = parse_csv("\xEF\xBB\xBF" "a,b,c\r\n1,\"x, \"\"y\"\"\",3\r\n\r\n4,5\n");
    CHECK(t.columns == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "x, \"y\"");
    CHECK(t.rows[1] == std::vector<std::string>{"4", "5", ""});
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), Error);
}

TEST_CASE("parse_json_rows") {
    auto t = parse_json_rows(R"([{"championName":"Ahri","x":1.5},{"championName":"Lux","y":null,"x":2}])");
    CHECK(t.columns == std::vector<std::string>{"championName", "x", "y"});
    CHECK(t.rows[1][1] == "2");
    CHECK(t.rows[1][2].empty());
    CHECK(t.rows[0][2].empty());
}

TEST_CASE("coerce_number") {
    CHECK(coerce_number(" 3.5 ") == 3.5);
    CHECK_FALSE(coerce_number("n/a").has_value());
    CHECK_FALSE(coerce_number("").has_value());
    CHECK_FALSE(coerce_number("inf").has_value());
}

TEST_CASE("load_population") {
    auto t = parse_csv(header() + "\n" + row("A", 1) + "\n" + row("B", 2) + "\n" + row("C", 3) + "\n");
    auto pop = load_population(t, kSchema);
    REQUIRE(pop.size() == 3);
    for (const auto& c : pop) CHECK(c.raw.size() == 12);

    CHECK(code_of([&] { load_population(parse_csv(header() + "\n"), kSchema); }) == ErrorCode::EmptyTable);
    CHECK(code_of([&] { load_population(parse_csv("x,y\n1,2\n"), kSchema); }) == ErrorCode::MissingColumn);
    CHECK(code_of([&] { load_population(parse_csv(header() + "\n" + row("A", 1) + "\n" + row("A", 2) + "\n"),
                                        kSchema); }) == ErrorCode::DuplicateChampion);
}

TEST_CASE("unparseable cells become absent and normalize to zero") {
    std::string text = header() + "\n" + row("A", 1) + "\n" + row("B", 2) + "\n" + row("C", 3) + "\n";
    auto gold = *kSchema.index_of("goldPerMinute");
    auto t = parse_csv(text);
    t.rows[1][gold + 1] = "n/a";
    auto pop = load_population(t, kSchema);

    ChampionVector expected;
    expected.champion = "B";
    for (std::size_t j = 0; j < kSchema.size(); ++j) expected.raw.emplace_back(2.0 + static_cast<double>(j));
    expected.raw[gold].reset();
    CHECK(pop[1] == expected);

    auto stats = NormalizationStats::fit(pop, kSchema);
    CHECK(stats.normalize(kSchema, pop[1].raw)[gold] == 0.0);
}

TEST_CASE("load_history orders rows and tolerates a missing win column") {
    std::string h = "game_order,championName";
    for (const auto& n : kSchema.names()) h += "," + n;
    std::string text = h + "\n";
    for (int t : {3, 1, 2}) {
        text += std::to_string(t) + ",C" + std::to_string(t);
        for (std::size_t j = 0; j < kSchema.size(); ++j) text += ",1";
        text += "\n";
    }
    auto rows = load_history(parse_csv(text), kSchema);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rows[i].index == i + 1);
        CHECK(rows[i].champion == "C" + std::to_string(i + 1));
        CHECK_FALSE(rows[i].win.has_value());
    }
}

TEST_CASE("100-row history keeps every row") {
    auto pop = synth::population(10, 1);
    auto rows = synth::history(pop, 100, 5, 2);
    DataBundle b{kSchema, pop, rows, {}};
    auto loaded = load_history(parse_csv(history_to_csv(b)), kSchema);
    REQUIRE(loaded.size() == 100);
    CHECK(loaded.front().index == 1);
    CHECK(loaded.back().index == 100);
}

TEST_CASE("load_mastery") {
    auto m = load_mastery(parse_csv("championName,championPoints,championLevel,games\nXerath,45000,7,12\n"));
    REQUIRE(m.size() == 1);
    CHECK(m[0].champion == "Xerath");
    CHECK(m[0].points == 45000);
    CHECK(m[0].level == 7);
    CHECK(m[0].games == 12);
    CHECK(m[0].games_from_column);

    CHECK(code_of([] { load_mastery(parse_csv("championName,championPoints,championLevel\nA,-5,1\n")); }) ==
          ErrorCode::NegativeCount);
}

TEST_CASE("assemble_bundle fills games from history") {
    auto pop = synth::population(6, 9);
    std::vector<PlayerMatchRow> rows;
    const std::size_t picks[] = {0, 1, 0, 2, 0};
    for (std::size_t t = 0; t < 5; ++t) rows.push_back(synth::match_row(pop[picks[t]], t + 1, true, t));
    auto mastery = load_mastery(parse_csv("championName,championPoints,championLevel\n" + pop[0].champion +
                                          ",1000,2\n" + pop[3].champion + ",500,1\n"));
    auto b = assemble_bundle(kSchema, pop, rows, mastery);
    std::map<std::string, double> games;
    for (const auto& m : b.mastery) games[m.champion] = m.games;
    CHECK(games[pop[0].champion] == 3);
    CHECK(games[pop[1].champion] == 1);
    CHECK(games[pop[2].champion] == 1);
    CHECK(games[pop[3].champion] == 0);
}

TEST_CASE("CSV round trip reproduces the bundle") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto b = synth::bundle(8 + seed % 5, 10 + seed, 4, seed);
        std::mt19937_64 rng(seed);
        const Role roles[] = {Role::Top, Role::Middle, Role::Utility, Role::Unknown};
        for (auto& r : b.history) {
            r.role = roles[rng() % 4];
            if (rng() % 5 == 0) r.features[rng() % r.features.size()].reset();
            if (rng() % 7 == 0) r.win.reset();
        }
        if (seed % 2) {
            for (auto& c : b.population) c.games = static_cast<double>(rng() % 500);
            b.population[0].raw[1].reset();
        }
        if (seed % 3 == 0) {
            b.mastery[0].games_from_column = true;
            b.mastery[0].games = 42;
        }
        auto pop = load_population(parse_csv(population_to_csv(b)), kSchema);
        auto hist = load_history(parse_csv(history_to_csv(b)), kSchema);
        auto mast = load_mastery(parse_csv(mastery_to_csv(b)));
        auto back = assemble_bundle(kSchema, pop, hist, mast);
        CHECK(back == b);
    }
}

TEST_CASE("parse_role") {
    CHECK(parse_role("MIDDLE") == Role::Middle);
    CHECK(parse_role("support") == Role::Utility);
    CHECK(parse_role("adc") == Role::Bottom);
    CHECK(parse_role("") == Role::Unknown);
}
