#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "grover/distribution.hpp"

using namespace grover;

TEST_CASE("explicit entries validate keys and probabilities") {
    CHECK_THROWS_AS(Distribution::from_entries(2, {{"000", 0.5}}, false),
                    std::invalid_argument);
    CHECK_THROWS_AS(Distribution::from_entries(2, {{"01", 1.5}}, false),
                    std::invalid_argument);
    CHECK_THROWS_AS(Distribution::from_entries(2, {{"01", 0.5}}, true),
                    std::invalid_argument);  // exhaustive but incomplete
    const auto dist = Distribution::from_entries(2, {{"01", 0.5}}, false);
    CHECK(dist.probability("01") == 0.5);
    CHECK(dist.probability("00") == 0.0);
    CHECK_FALSE(dist.exhaustive());
}

TEST_CASE("two-value storage covers the whole space implicitly") {
    const auto dist = Distribution::two_value(20, {{"00000000000000000000", 0.9}},
                                              0.1 / 1048575.0);
    CHECK(dist.exhaustive());
    CHECK(dist.entries().size() == 1);
    CHECK(dist.probability("00000000000000000001") ==
          doctest::Approx(0.1 / 1048575.0));
    CHECK(dist.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("top_k ranks by probability with lexicographic ties") {
    const auto dist = Distribution::from_entries(
        2, {{"00", 0.2}, {"01", 0.3}, {"10", 0.3}, {"11", 0.2}}, true);
    const auto top = dist.top_k(3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].first == "01");  // ties broken lexicographically ascending
    CHECK(top[1].first == "10");
    CHECK(top[2].first == "00");
}

TEST_CASE("top_k interleaves named and default entries") {
    // marked state below some defaults: default entries must win
    const auto dist = Distribution::two_value(3, {{"110", 0.01}}, 0.1);
    const auto top = dist.top_k(3);
    REQUIRE(top.size() == 3);
    CHECK(top[0] == std::pair<std::string, double>{"000", 0.1});
    CHECK(top[1] == std::pair<std::string, double>{"001", 0.1});
    CHECK(top[2] == std::pair<std::string, double>{"010", 0.1});
    const auto all = dist.top_k(8);
    REQUIRE(all.size() == 8);
    CHECK(all.back().first == "110");  // smallest probability comes last
}

TEST_CASE("top_k ties between named and default favor lexicographic order") {
    const auto dist = Distribution::two_value(2, {{"10", 0.25}}, 0.25);
    const auto top = dist.top_k(4);
    REQUIRE(top.size() == 4);
    CHECK(top[0].first == "00");
    CHECK(top[1].first == "01");
    CHECK(top[2].first == "10");
    CHECK(top[3].first == "11");
}

TEST_CASE("top_k truncates k to the dimension") {
    const auto dist = Distribution::two_value(2, {{"11", 1.0}}, 0.0);
    CHECK(dist.top_k(30).size() == 4);
}

TEST_CASE("large-n top_k never materializes the space") {
    const auto dist = Distribution::two_value(
        30, {{std::string(30, '1'), 0.999}}, 0.001 / ((1u << 30) - 1.0));
    const auto top = dist.top_k(30);
    REQUIRE(top.size() == 30);
    CHECK(top[0].first == std::string(30, '1'));
    CHECK(top[1].first == std::string(30, '0'));  // lexicographically first default
}

TEST_CASE("materialized expands the default") {
    const auto dist = Distribution::two_value(3, {{"101", 0.3}}, 0.1);
    const auto full = dist.materialized();
    CHECK(full.entries().size() == 8);
    CHECK(full.probability("101") == 0.3);
    CHECK(full.probability("010") == 0.1);
    CHECK_THROWS_AS(
        Distribution::two_value(30, {}, 1.0 / (1u << 30)).materialized(),
        std::length_error);
}
