#include <sstream>

#include "doctest.h"
#include "saw/enumeration.hpp"
#include "saw/errors.hpp"
#include "saw/exact_markov.hpp"

using namespace saw;

TEST_CASE("pivot matrix at N=2 (d=2)") {
    const StateSpace s = enumerate(2, 2);
    const TransitionMatrix p = build_pivot_matrix(s);
    CHECK(p.denominator() == 16);
    const std::size_t ee = *s.index_of(Walk::parse("+1,+1", 2));
    const std::size_t en = *s.index_of(Walk::parse("+1,+2", 2));
    CHECK(p.exact(ee, en) == Rational(2, 16));
    CHECK(p.rows_sum_to_denominator());
    CHECK(p.is_count_symmetric());
    CHECK(is_irreducible(p));
    CHECK(is_aperiodic(p));
    CHECK(period(p) == 1);
    CHECK(uniform_is_stationary_exact(p));
}

TEST_CASE("pivot+ matrices at N=2 (d=2)") {
    const StateSpace s = enumerate(2, 2);
    const auto plus = build_pivot_plus_matrices(s);
    CHECK(plus.p1.denominator() == 4);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t b : s.straight_indices()) CHECK(plus.p1.exact(i, b) == Rational(1, 4));
    CHECK(plus.p2.denominator() == 8);
    CHECK(is_class_block_diagonal(plus.p2, s));
    const TransitionMatrix q = class_block(plus.p2, s, Step(1, 1));
    REQUIRE(q.size() == 3);
    // Class of +e_1: EE, EN, ES.
    CHECK(q.count(0, 0) == 4);
    CHECK(q.count(0, 1) == 2);
    CHECK(q.count(0, 2) == 2);
    CHECK(q.is_count_symmetric());
    CHECK(is_irreducible(q));
    CHECK(uniform_is_stationary_exact(q));
    CHECK_THROWS_AS(build_pivot_plus_matrices(enumerate(2, 1)), InvalidArgument);
}

TEST_CASE("structure holds for small d=2 and d=3 walks") {
    for (auto [d, n] : {std::pair{2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}}) {
        const StateSpace s = enumerate(d, n);
        const auto p = build_pivot_matrix(s);
        CHECK(p.is_count_symmetric());
        CHECK(is_irreducible(p));
        CHECK(is_aperiodic(p));
        const auto plus = build_pivot_plus_matrices(s);
        CHECK(is_class_block_diagonal(plus.p2, s));
        CHECK_FALSE(is_irreducible(plus.p2));
    }
}

TEST_CASE("graph properties on hand-built matrices") {
    // Two-cycle: irreducible with period 2.
    TransitionMatrix cycle(2, 1, {{{1, 1}}, {{0, 1}}});
    CHECK(is_irreducible(cycle));
    CHECK(period(cycle) == 2);
    CHECK_FALSE(is_aperiodic(cycle));
    TransitionMatrix split(2, 1, {{{0, 1}}, {{1, 1}}});
    CHECK_FALSE(is_irreducible(split));
    CHECK(is_aperiodic(split));
    CHECK_THROWS(TransitionMatrix(2, 1, {{{2, 1}}, {{0, 1}}}));
}

TEST_CASE("distributions evolve toward uniform") {
    const StateSpace s = enumerate(2, 3);
    const auto p = build_pivot_matrix(s);
    const auto path = evolve(point_mass(s.size(), 0), std::vector<const TransitionMatrix*>{&p}, 200);
    const auto pi = uniform_distribution(s.size());
    CHECK(l1_distance(path[0], pi) == doctest::Approx(2.0 - 2.0 / 36));
    CHECK(l1_distance(path.back(), pi) < 1e-10);
    const auto exact = propagate_exact(std::vector<Rational>(s.size(), Rational(1, 36)), p);
    for (const auto& x : exact) CHECK(x == Rational(1, 36));
}

TEST_CASE("minimal irreducible prefix boundaries") {
    const StateSpace s = enumerate(2, 4);
    const auto p = build_pivot_matrix(s);
    const Walk tau = s.walk(0);
    CHECK(minimal_irreducible_prefix(s, p, tau, 1) == 1);
    CHECK(minimal_irreducible_prefix(s, p, tau, 4) == 4);
    const std::size_t m = minimal_irreducible_prefix(s, p, tau, 2);
    CHECK(m >= 2);
    CHECK(m <= 4);
}

TEST_CASE("limit audit and conjecture scan") {
    const StateSpace s = enumerate(2, 4);
    const auto p = build_pivot_matrix(s);
    const auto plus = build_pivot_plus_matrices(s);
    const auto rep = limit_audit(s, p, &plus, 10000);
    CHECK(rep.reached);
    for (const auto& t : rep.tracks) {
        CHECK(t.first_below.has_value());
        CHECK(t.monotone);
    }
    REQUIRE(rep.closed_form_deviation.has_value());
    CHECK(*rep.closed_form_deviation <= 1e-6);

    const auto scan = conjecture_scan(s, p, plus, 50);
    CHECK(scan.rows.size() == 51);
    CHECK(scan.start_walk == "+1,+1,+1,+1");
    CHECK(scan.rows[0].l1_pivot == scan.rows[0].l1_pivot_plus);
}

TEST_CASE("matrix text round trip") {
    const auto p = build_pivot_matrix(enumerate(2, 3));
    std::stringstream ss;
    write_matrix(ss, p);
    CHECK(read_matrix(ss) == p);
    const auto sum = summarize(p);
    CHECK(sum.size == 36);
    CHECK(sum.symmetric);
}

TEST_CASE("exact capacity guard") {
    const StateSpace s = enumerate(2, 8);  // 5916 states
    const auto p = build_pivot_matrix(s);
    CHECK_THROWS_AS(propagate_exact(std::vector<Rational>(s.size(), Rational(1)), p), CapacityError);
}
