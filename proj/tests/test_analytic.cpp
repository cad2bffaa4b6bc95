#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "grover/analytic.hpp"
#include "grover/circuit.hpp"
#include "grover/rng.hpp"
#include "grover/statevector.hpp"

using namespace grover;

TEST_CASE("closed-form parameters for the worked 4-qubit case") {
    GroverInstance instance(4, {"0000"});
    const AnalyticParams params = analytic_params(instance);
    CHECK(params.iterations == 3);
    CHECK(params.theta == doctest::Approx(std::asin(0.25)).epsilon(1e-15));
    CHECK(params.marked_prob_each ==
          doctest::Approx(0.9613189697265625).epsilon(1e-12));
    CHECK(params.unmarked_prob_each ==
          doctest::Approx(0.0025787353515625).epsilon(1e-12));
}

TEST_CASE("analytic distribution is two-value and sums to one") {
    GroverInstance instance(20, {std::string(20, '0')});
    const Distribution dist = analytic_distribution(instance);
    CHECK(dist.entries().size() == 1);
    CHECK(dist.exhaustive());
    CHECK(dist.total() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("forced-exact two-marked case") {
    GroverInstance instance(3, {"011", "101"});
    const Distribution dist = analytic_distribution(instance, 1);
    CHECK(dist.probability("011") == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dist.probability("000") < 1e-14);
}

TEST_CASE("analytic matches the state-vector engine across sizes") {
    Rng rng(splitmix64(2024));
    for (int n = 3; n <= 9; ++n) {
        for (std::uint64_t m : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{3}}) {
            std::vector<std::string> marked;
            while (marked.size() < m) {
                std::string bits = bitstring_from_index(
                    uniform_below(rng, std::uint64_t{1} << n), n);
                if (std::find(marked.begin(), marked.end(), bits) == marked.end()) {
                    marked.push_back(bits);
                }
            }
            GroverInstance instance(n, marked);
            const Distribution analytic = analytic_distribution(instance);
            const Distribution dense =
                probabilities(run_circuit(build_circuit(instance)));
            for (const auto& [key, p] : dense.entries()) {
                CHECK(std::abs(p - analytic.probability(key)) < 1e-9);
            }
        }
    }
}

TEST_CASE("zero iterations reproduce the uniform superposition") {
    GroverInstance instance(4, {"1010"});
    const Distribution dist = analytic_distribution(instance, 0);
    CHECK(dist.probability("1010") == doctest::Approx(1.0 / 16).epsilon(1e-14));
    CHECK(dist.probability("0000") == doctest::Approx(1.0 / 16).epsilon(1e-14));
}

TEST_CASE("amplitude trajectory follows sin((2k+1)theta)") {
    GroverInstance instance(4, {"0000"});
    const auto trajectory = amplitude_trajectory(instance, 3);
    REQUIRE(trajectory.size() == 4);
    CHECK(trajectory[0].second == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(trajectory[3].second * trajectory[3].second ==
          doctest::Approx(0.9613189697265625).epsilon(1e-12));
}
