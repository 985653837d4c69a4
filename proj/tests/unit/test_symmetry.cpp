#include <algorithm>
#include <set>

#include "doctest.h"
#include "saw/errors.hpp"
#include "saw/symmetry.hpp"

using namespace saw;

TEST_CASE("group order and identity first") {
    const std::size_t expected[] = {2, 8, 48, 384};
    for (int d = 1; d <= 4; ++d) {
        const auto& g = symmetry_group(d);
        CHECK(g.size() == expected[d - 1]);
        CHECK(g.front().is_identity());
        CHECK(std::is_sorted(g.begin(), g.end()));
        CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
    }
    CHECK_THROWS_AS(enumerate_group(7), CapacityError);
}

TEST_CASE("action on points and steps") {
    // x -> (-x_2, x_1): rotation by a quarter turn.
    const LatticeSymmetry r({2, 1}, {-1, 1});
    CHECK(r.apply(LatticePoint({1, 0})) == LatticePoint({0, 1}));
    CHECK(r.apply(Step(1, 1)) == Step(2, 1));
    CHECK(r.apply(Step(2, 1)) == Step(1, -1));
    CHECK(r.to_string() == "[-2,+1]");
    CHECK_THROWS_AS(LatticeSymmetry({1, 1}, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(LatticeSymmetry({1, 2}, {1, 0}), InvalidArgument);
}

TEST_CASE("closure, inverses and composition for d <= 3") {
    for (int d = 1; d <= 3; ++d) {
        const auto& g = symmetry_group(d);
        const std::set<LatticeSymmetry> members(g.begin(), g.end());
        const LatticePoint x = [&] {
            std::vector<int> c;
            for (int i = 0; i < d; ++i) c.push_back(i + 2);
            return LatticePoint(c);
        }();
        for (const auto& a : g) {
            CHECK(compose(a, inverse(a)).is_identity());
            CHECK(compose(inverse(a), a).is_identity());
            for (const auto& b : g) {
                const auto c = compose(a, b);
                REQUIRE(members.count(c) == 1);
                CHECK(c.apply(x) == a.apply(b.apply(x)));
            }
        }
    }
}

TEST_CASE("step map preserves norm and reversal") {
    for (const auto& t : symmetry_group(3)) {
        for (int c = 0; c < 6; ++c) {
            const Step s = Step::from_code(c, 3);
            CHECK(t.apply(s.reversed()) == t.apply(s).reversed());
            CHECK(t.apply_code(c) == t.apply(s).code(3));
        }
    }
}
