#include <cmath>
#include <map>

#include "doctest.h"
#include "saw/enumeration.hpp"
#include "saw/errors.hpp"
#include "saw/exact_markov.hpp"
#include "saw/pivot.hpp"

using namespace saw;

TEST_CASE("pivot move maps the tail about the pivot site") {
    const Walk w = Walk::parse("+1,+1,+1", 2);
    const LatticeSymmetry quarter({2, 1}, {-1, 1});
    CHECK(pivot_move(w, 1, quarter).to_string() == "+1,+2,+2");
    CHECK(pivot_move(w, 0, quarter).to_string() == "+2,+2,+2");
    CHECK(pivot_move(w, 2, LatticeSymmetry::identity(2)) == w);
    CHECK_THROWS_AS(pivot_move(w, 3, quarter), InvalidArgument);
}

TEST_CASE("try_move agrees with pivot_move + self-avoidance") {
    const StateSpace s = enumerate(2, 5);
    PivotKernel kernel(2, 5, Variant::pivot);
    std::vector<std::uint8_t> codes;
    for (std::size_t i = 0; i < s.size(); i += 7) {
        const Walk w = s.walk(i);
        for (std::size_t k = 0; k < 5; ++k)
            for (const auto& t : kernel.group()) {
                const Walk cand = pivot_move(w, k, t);
                const bool ok = kernel.try_move(w, k, t, &codes);
                REQUIRE(ok == is_self_avoiding(cand));
                if (ok) CHECK(s.index_of_codes(codes) == s.index_of(cand));
            }
    }
}

TEST_CASE("variant names and kernel preconditions") {
    CHECK(parse_variant("pivot") == Variant::pivot);
    CHECK(parse_variant("pivot+") == Variant::pivot_plus);
    CHECK(parse_variant("pivot_plus") == Variant::pivot_plus);
    CHECK(to_string(Variant::pivot_plus) == "pivot+");
    CHECK_THROWS_AS(parse_variant("metropolis"), InvalidArgument);
    CHECK_THROWS_AS(PivotKernel(2, 1, Variant::pivot_plus), InvalidArgument);
    PivotKernel plus(3, 4, Variant::pivot_plus);
    CHECK(plus.min_pivot() == 1);
    CHECK(plus.pivot_count() == 3);
}

TEST_CASE("pivot+ initialisation is uniform on straight walks") {
    RandomStream rng(2024);
    std::map<std::string, int> hits;
    const int draws = 400000;
    for (int t = 0; t < draws; ++t) {
        const Walk w = pivot_plus_init(2, 4, rng);
        REQUIRE(is_straight(w));
        ++hits[w.to_string()];
    }
    REQUIRE(hits.size() == 4);
    const double sigma = std::sqrt(0.25 * 0.75 / draws);
    for (const auto& [walk, h] : hits) CHECK(std::abs(h / double(draws) - 0.25) <= 4 * sigma);
}

TEST_CASE("one-step kernel frequencies match the exact matrix (d=2, N=3)") {
    const StateSpace s = enumerate(2, 3);
    const TransitionMatrix p = build_pivot_matrix(s);
    PivotKernel kernel(2, 3, Variant::pivot);
    RandomStream rng(77);
    const std::uint64_t per_state = 10'000'000 / s.size() + 1;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::uint64_t> hits(s.size(), 0);
        const Walk start = s.walk(i);
        for (std::uint64_t t = 0; t < per_state; ++t) {
            Walk w = start;
            kernel.step(w, rng);
            ++hits[*s.index_of(w)];
        }
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double q = p.probability(i, j);
            const double f = static_cast<double>(hits[j]) / static_cast<double>(per_state);
            if (q == 0.0) {
                CHECK(hits[j] == 0);
                continue;
            }
            const double sigma = std::sqrt(q * (1 - q) / static_cast<double>(per_state));
            CHECK(std::abs(f - q) <= 4 * sigma);
            ++checked;
        }
    }
    CHECK(checked > s.size());
}

TEST_CASE("run_chain: reproducible streams and class confinement") {
    ChainConfig cfg;
    cfg.d = 2;
    cfg.n = 6;
    cfg.variant = Variant::pivot_plus;
    cfg.seed = 5;
    cfg.verify_states = true;
    TrajectoryRecorder a, b, c;
    ChainObserver* oa[] = {&a};
    ChainObserver* ob[] = {&b};
    ChainObserver* oc[] = {&c};
    const auto sa = run_chain(cfg, 200, oa, 3);
    run_chain(cfg, 200, ob, 3);
    run_chain(cfg, 200, oc, 4);
    CHECK(a.walks.size() == 201);
    CHECK(a.walks == b.walks);
    CHECK(a.walks != c.walks);
    CHECK(sa.class_constant);
    CHECK(sa.all_self_avoiding);
    CHECK(sa.transitions == 200);
    REQUIRE(sa.class_key.has_value());
    CHECK(is_straight(a.walks[1]));
    for (std::size_t t = 1; t < a.walks.size(); ++t) CHECK(class_key(a.walks[t]) == *sa.class_key);

    cfg.variant = Variant::pivot;
    TrajectoryRecorder p;
    ChainObserver* op[] = {&p};
    run_chain(cfg, 10, op, 0);
    CHECK(p.walks.front().to_string() == "+1,+1,+1,+1,+1,+1");

    cfg.n = 1;
    cfg.variant = Variant::pivot_plus;
    CHECK_THROWS_AS(validate(cfg), InvalidArgument);
}

TEST_CASE("end-to-end observer statistics") {
    EndToEndObserver e(2);
    e.observe(0, Walk::parse("+1,+1", 2));
    e.observe(0, Walk::parse("+1,+2", 2));
    e.observe(1, Walk::parse("+1,+1", 2));
    CHECK(e.samples(0) == 2);
    CHECK(e.mean(0) == doctest::Approx(3.0));
    CHECK(e.variance(0) == doctest::Approx(2.0));  // unbiased
    CHECK(e.mean(1) == doctest::Approx(4.0));

    const StateSpace s = enumerate(2, 2);
    HistogramObserver h(s, 1), h2(s, 1);
    h.observe(0, s.walk(0));
    h.observe(1, s.walk(3));
    h2.observe(1, s.walk(3));
    h.merge(h2);
    CHECK(h.total() == 2);
    CHECK(h.counts()[3] == 2);
}
