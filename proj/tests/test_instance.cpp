#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "grover/instance.hpp"

using namespace grover;

TEST_CASE("bitstring/index conversions are big-endian inverses") {
    CHECK(bitstring_from_index(0, 4) == "0000");
    CHECK(bitstring_from_index(1, 4) == "0001");
    CHECK(bitstring_from_index(8, 4) == "1000");
    CHECK(bitstring_from_index(11, 4) == "1011");
    CHECK(index_from_bitstring("1011") == 11);
    for (std::uint64_t i = 0; i < 64; ++i) {
        CHECK(index_from_bitstring(bitstring_from_index(i, 6)) == i);
    }
}

TEST_CASE("bitstring validation") {
    CHECK(is_valid_bitstring("0101", 4));
    CHECK_FALSE(is_valid_bitstring("010", 4));
    CHECK_FALSE(is_valid_bitstring("01012", 4));
    CHECK_FALSE(is_valid_bitstring("", 4));
    CHECK_FALSE(is_valid_bitstring("ab01", 4));
}

TEST_CASE("instance accepts valid input and preserves order") {
    GroverInstance instance(3, {"101", "011"});
    CHECK(instance.n_qubits() == 3);
    CHECK(instance.dimension() == 8);
    CHECK(instance.marked_count() == 2);
    CHECK(instance.marked()[0] == "101");  // insertion order kept
    CHECK(instance.is_marked("011"));
    CHECK_FALSE(instance.is_marked("111"));
}

TEST_CASE("instance rejects bad input") {
    CHECK_THROWS_AS(GroverInstance(1, {"0"}), std::invalid_argument);
    CHECK_THROWS_AS(GroverInstance(31, {"0"}), std::invalid_argument);
    CHECK_THROWS_AS(GroverInstance(3, {}), std::invalid_argument);
    CHECK_THROWS_AS(GroverInstance(3, {"01"}), std::invalid_argument);
    CHECK_THROWS_AS(GroverInstance(3, {"011", "011"}), std::invalid_argument);
    // all strings marked leaves nothing to search for
    CHECK_THROWS_AS(GroverInstance(2, {"00", "01", "10", "11"}),
                    std::invalid_argument);
}

TEST_CASE("edge sizes") {
    CHECK_NOTHROW(GroverInstance(2, {"11"}));
    CHECK_NOTHROW(GroverInstance(30, {std::string(30, '1')}));
}
