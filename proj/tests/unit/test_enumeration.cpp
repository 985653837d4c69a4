#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "saw/enumeration.hpp"
#include "saw/errors.hpp"

using namespace saw;

TEST_CASE("known counts in d = 2 and d = 3") {
    const std::size_t c2[] = {4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100};
    for (int n = 1; n <= 10; ++n) CHECK(enumerate(2, n).size() == c2[n - 1]);
    const std::size_t c3[] = {6, 30, 150, 726, 3534, 16926};
    for (int n = 1; n <= 6; ++n) CHECK(enumerate(3, n).size() == c3[n - 1]);
    for (int n = 1; n <= 20; ++n) CHECK(enumerate(1, n).size() == 2);
}

TEST_CASE("canonical order and contiguous classes") {
    const StateSpace s = enumerate(2, 4);
    const auto walks = s.walks();
    for (std::size_t i = 1; i < walks.size(); ++i) {
        const auto a = s.codes(i - 1), b = s.codes(i);
        CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
    REQUIRE(s.classes().size() == 4);
    std::size_t offset = 0;
    for (const auto& block : s.classes()) {
        CHECK(block.offset == offset);
        CHECK(block.size == 25);
        for (std::size_t i = block.offset; i < block.offset + block.size; ++i) {
            CHECK(class_key(s.walk(i)) == block.key);
            CHECK(s.class_index_of(i) == static_cast<std::size_t>(block.key.code(2)));
        }
        offset += block.size;
    }
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.index_of(s.walk(i)) == i);
    CHECK_FALSE(s.index_of(Walk::parse("+1,+1", 2)).has_value());
    const auto straight = s.straight_indices();
    REQUIRE(straight.size() == 4);
    CHECK(straight[0] == 0);
    CHECK(s.straight_index(Step(2, -1)) == s.size() - 1);
}

TEST_CASE("partition identity") {
    for (int n = 1; n <= 20; ++n) CHECK(verify_partition_identity(enumerate(1, n)));
    for (int n = 1; n <= 10; ++n) CHECK(verify_partition_identity(enumerate(2, n)));
    for (int n = 1; n <= 6; ++n) {
        const StateSpace s = enumerate(3, n);
        const WalkCounts c = counts(s);
        CHECK(c.c_n == 6 * c.a_n);
        CHECK(verify_partition_identity(s));
    }
}

TEST_CASE("capacity and argument errors") {
    CHECK_THROWS_AS(enumerate(2, 10, {1000}), CapacityError);
    CHECK_THROWS_AS(enumerate(0, 3), InvalidArgument);
    CHECK_THROWS_AS(enumerate(2, 0), InvalidArgument);
}

TEST_CASE("prefix classes") {
    const StateSpace s = enumerate(2, 4);
    CHECK(prefix_class(s, Walk::parse("+1", 2)).size() == 25);
    const auto k = prefix_class(s, Walk::parse("+1,+1,+1,+1", 2));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == 0);
    const auto k2 = prefix_class(s, Walk::parse("+1,+2", 2));
    for (std::size_t i : k2) CHECK(s.walk(i).prefix(2).to_string() == "+1,+2");
    CHECK(k2.size() == 8);
    CHECK_THROWS_AS(prefix_class(s, Walk::parse("+1,+1,+1,+1,+1", 2)), InvalidArgument);
    CHECK_THROWS_AS(prefix_class(s, Walk::parse("+1,-1", 2)), InvalidArgument);
}

TEST_CASE("reference sampler is uniform") {
    const StateSpace s = enumerate(2, 3);
    RandomStream rng(99);
    std::vector<std::uint64_t> hits(s.size(), 0);
    const std::uint64_t draws = 1'000'000;
    for (std::uint64_t t = 0; t < draws; ++t) ++hits[reference_sample_index(s, rng)];
    const double p = 1.0 / static_cast<double>(s.size());
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(draws));
    for (auto h : hits) CHECK(std::abs(static_cast<double>(h) / draws - p) <= 4 * sigma);
}
