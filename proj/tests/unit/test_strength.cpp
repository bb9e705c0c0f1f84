#include <doctest.h>

#include "champrec/error.hpp"
#include "champrec/schema.hpp"
#include "champrec/strength.hpp"

using namespace champrec;

namespace {

Vec weights() {
    Vec w;
    for (const auto& e : FeatureSchema::recommendation_default().entries()) w.push_back(e.strength_weight);
    return w;
}

} // namespace

TEST_CASE("default weights") {
    auto w = weights();
    CHECK(w == Vec{0.20, 0.16, 0.14, 0.10, 0.18, 0.10, 0.06, 0.03, 0.02, 0.01});
    CHECK_NOTHROW(FeatureSchema::recommendation_default().validate());
    CHECK_NOTHROW(FeatureSchema::archetype_default().validate());
    FeatureSchema bad({{"a", 0.6, Direction::Positive, false}, {"b", 0.6, Direction::Positive, false}});
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("strength_raw") {
    auto w = weights();
    CHECK(strength_raw(Vec(10, 0.0), w) == 0.0);
    CHECK(strength_raw(Vec(10, 3.0), w) == doctest::Approx(3.0).epsilon(1e-12));
    Vec one(10, 0.0);
    one[0] = 1.0;
    CHECK(strength_raw(one, w) == doctest::Approx(0.20));
}

TEST_CASE("strength_scores") {
    auto s = strength_scores({"A", "B", "C"}, Vec{0.4, 0.1, 0.25});
    CHECK(s[0].scaled == 1.0);
    CHECK(s[1].scaled == 0.0);
    CHECK(s[2].scaled == 0.5);
    CHECK(strength_scores({"A"}, Vec{0.9})[0].scaled == 0.5);
    for (const auto& x : strength_scores({"A", "B"}, Vec{0.2, 0.2})) CHECK(x.scaled == 0.5);
}

TEST_CASE("role_aware_score") {
    ShrinkageConfig cfg;
    cfg.role_baseline = {{Role::Middle, 0.5}};
    RoleAggregate a{"X", Role::Middle, 1e6, 0.3, 0.5, 0.0};
    CHECK(role_aware_score(a, cfg) == doctest::Approx(0.3).epsilon(1e-4));

    cfg.lambda = 0.0;
    RoleAggregate b{"X", Role::Middle, 10, 0.4, 0.55, 0.9};
    CHECK(role_aware_score(b, cfg) == doctest::Approx(0.225).epsilon(1e-12));

    cfg.lambda = 1.0;
    RoleAggregate c{"X", Role::Middle, 1, 0.0, 0.5, 0.2};
    CHECK(role_aware_score(c, cfg) == doctest::Approx(-0.2).epsilon(1e-12));

    RoleAggregate missing{"X", Role::Top, 5, 0.1, 0.5, 0.1};
    CHECK_THROWS_AS(role_aware_score(missing, cfg), Error);
}

TEST_CASE("beta_binomial_mean") {
    CHECK(beta_binomial_mean(0, 0) == 0.5);
    CHECK(beta_binomial_mean(7, 10) == doctest::Approx(8.0 / 12.0));
    CHECK_THROWS_AS(beta_binomial_mean(11, 10), Error);
    CHECK_THROWS_AS(beta_binomial_mean(-1, 10), Error);
    for (double n : {0.0, 1.0, 5.0, 100.0}) {
        double m = beta_binomial_mean(n, n);
        CHECK(m > 0.0);
        CHECK(m < 1.0);
    }
}

TEST_CASE("role emphasis weights sum to one") {
    auto schema = FeatureSchema::archetype_default();
    for (Role r : {Role::Top, Role::Jungle, Role::Middle, Role::Bottom, Role::Utility, Role::Unknown}) {
        auto w = role_feature_weights(r, schema);
        double total = 0;
        for (double x : w) total += x;
        CHECK(total == doctest::Approx(1.0));
    }
}
