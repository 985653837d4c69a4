#include "doctest.h"
#include "saw/errors.hpp"
#include "saw/fixtures.hpp"
#include "saw/gmethod.hpp"

using namespace saw;
using namespace saw::gmethod;

namespace {

const Partition kImproper = Partition::improper(4);
const Partition kHalves(4, {{0, 1}, {2, 3}});
const Partition kSingles = Partition::singletons(4);

}  // namespace

TEST_CASE("partition construction and canonical form") {
    const Partition a(4, {{3, 2}, {1, 0}});
    CHECK(a == kHalves);
    CHECK(a.to_string() == "({1,2},{3,4})");
    CHECK(a.block_of(3) == a.block_of(2));
    CHECK(Partition::from_labels(std::vector<std::size_t>{7, 7, 1, 1}) == kHalves);
    CHECK(kImproper.is_improper());
    CHECK(kSingles.is_singletons());
    CHECK_THROWS_AS(Partition(3, {{0, 1}}), InvalidArgument);
    CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), InvalidArgument);
    CHECK_THROWS_AS(Partition(2, {{0}, {}, {1}}), InvalidArgument);
}

TEST_CASE("finer-than is a partial order with extremes") {
    const std::size_t bell[] = {1, 2, 5, 15, 52};
    for (std::size_t m = 1; m <= 5; ++m) {
        const auto all = all_partitions(m);
        REQUIRE(all.size() == bell[m - 1]);
        for (const auto& a : all) {
            CHECK(is_finer(a, a));
            CHECK(is_finer(Partition::singletons(m), a));
            CHECK(is_finer(a, Partition::improper(m)));
            for (const auto& b : all) {
                if (is_finer(a, b) && is_finer(b, a)) CHECK(a == b);
                for (const auto& c : all)
                    if (is_finer(a, b) && is_finer(b, c)) CHECK(is_finer(a, c));
            }
        }
    }
    CHECK_THROWS_AS(is_finer(kHalves, Partition::improper(3)), DimensionMismatch);
}

TEST_CASE("fixtures reduce to (1/2, 1/2) and are similar") {
    for (const char* name : {"uniform4", "concentrated4", "mixed4"}) {
        const auto m = fixtures::load(name);
        CHECK(is_stochastic(m, 0.0));
        CHECK(in_g(m, kImproper, kHalves, 0.0));
        const auto red = reduce(m, kImproper, kHalves, 0.0);
        REQUIRE(red.values.rows() == 1);
        CHECK(red.values(0, 0) == Rational(1, 2));
        CHECK(red.values(0, 1) == Rational(1, 2));
    }
    CHECK(similar(fixtures::load("uniform4"), fixtures::load("mixed4"), kImproper, kHalves, 0.0));
    CHECK_FALSE(in_g(fixtures::load("mixed4"), kImproper, kSingles, 0.0));
}

TEST_CASE("fixture products equal the same stable matrix") {
    const auto b = fixtures::load("blockdiag4");
    const auto red = reduce(b, kHalves, kSingles, 0.0);
    CHECK(red.values(0, 1) == Rational(2, 3));
    CHECK(red.values(1, 2) == Rational(2, 5));
    const auto pb = fixtures::load("concentrated4") * b;
    const auto ub = fixtures::load("mixed4") * b;
    CHECK(pb == ub);
    CHECK(is_stable_matrix(pb, 0.0));
    CHECK(pb(0, 0) == Rational(2, 12));
    CHECK(pb(3, 3) == Rational(6, 20));
}

TEST_CASE("reduce rejects unstable blocks with the offending pair") {
    const auto m = fixtures::load("mixed4");
    try {
        reduce(m, kImproper, kSingles, 0.0);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        const std::string what = e.what();
        CHECK(what.find("K") != std::string::npos);
    }
    CHECK_THROWS_AS(reduce(m, Partition::improper(3), kSingles, 0.0), DimensionMismatch);
}

TEST_CASE("ergodicity coefficients") {
    const auto u = fixtures::load("uniform4");
    CHECK(alpha_bar(u) == Rational(0));
    const Matrix<double> id = Matrix<double>::identity(3);
    CHECK(alpha_bar(id) == doctest::Approx(1.0));
    CHECK(gamma_bar(fixtures::load("blockdiag4"), kHalves) == Rational(0));
    CHECK(gamma_bar(fixtures::load("blockdiag4"), kImproper) == Rational(1));
}

TEST_CASE("least fine stable partition is maximal") {
    RandomStream rng(31);
    for (int t = 0; t < 60; ++t) {
        const std::size_t m = 2 + uniform_below(rng, 4);
        const std::size_t n = 2 + uniform_below(rng, 4);
        const Partition delta = random_partition(m, rng);
        const Partition sigma = random_partition(n, rng);
        const auto p = random_stable_matrix(delta, sigma, rng, true);
        REQUIRE(in_g(p, delta, sigma));
        const Partition best = least_fine_stable_partition(p, sigma);
        CHECK(is_stable_on(p, best, sigma));
        CHECK(is_finer(delta, best));
        for (const auto& other : all_partitions(m))
            if (is_stable_on(p, other, sigma)) CHECK(is_finer(other, best));
    }
}

TEST_CASE("random similar matrices share the reduction") {
    RandomStream rng(8);
    for (int t = 0; t < 50; ++t) {
        const Partition delta = random_partition(5, rng);
        const Partition sigma = random_partition(4, rng);
        const auto p = random_stable_matrix(delta, sigma, rng, t % 2 == 0);
        const auto q = random_similar(p, delta, sigma, rng);
        CHECK(in_g_bar(q, delta, sigma));
        CHECK(similar(p, q, delta, sigma));
    }
}

TEST_CASE("product property checks on random chains") {
    RandomStream rng(1234);
    for (int t = 0; t < 200; ++t) {
        ChainOptions bound;
        bound.improper_first = false;
        bound.singleton_last = false;
        bound.free_last = true;
        const auto r1 = check_ergodicity_product_bound(random_chain(rng, bound), 1e-10);
        CHECK(r1.verdict == Verdict::pass);
        ChainOptions opts;
        opts.stochastic = t % 2 == 0;
        const auto chain = random_chain(rng, opts);
        const auto rep = theorem_property_suite<double>(chain, nullptr, 1e-10);
        CHECK(rep.checks[1].verdict == Verdict::pass);
        const auto sim = random_similar_chain(chain, rng);
        CHECK(check_representative_independence(chain, sim, 1e-10).verdict == Verdict::pass);
    }
}

TEST_CASE("checks reject instances outside their hypotheses") {
    // Non-stable first factor: the product need not be stable.
    const Matrix<double> p(2, 2, std::vector<double>{1, 0, 0, 1});
    ChainInstance<double> c{{p, p}, {Partition::improper(2), Partition::improper(2), Partition::singletons(2)}};
    CHECK(check_stable_product_factorization(c, 1e-12).verdict == Verdict::inapplicable);
    ChainInstance<double> bad{{p}, {}};
    CHECK(check_ergodicity_product_bound(bad, 1e-12).verdict == Verdict::inapplicable);
    CHECK(to_string(Verdict::inapplicable) == "inapplicable");
}
