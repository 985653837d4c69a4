// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything holds).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "saw/enumeration.hpp"
#include "saw/exact_markov.hpp"
#include "saw/fixtures.hpp"
#include "saw/gmethod.hpp"
#include "saw/harness.hpp"
#include "saw/pivot.hpp"

using namespace saw;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %-34s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

nlohmann::json run_json(const harness::RunConfig& cfg, int& code) {
    std::ostringstream out, err;
    code = harness::run(cfg, out, err);
    if (code == 2) throw std::runtime_error(err.str());
    return nlohmann::json::parse(out.str());
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

}  // namespace

int main() {
    criterion("count_d2_n10", [] {
        const auto t0 = Clock::now();
        const StateSpace s = enumerate(2, 10);
        const WalkCounts c = counts(s);
        const double secs = seconds_since(t0);
        const bool ok = c.c_n == 44100 && c.a_n == 11025 && secs <= 10.0;
        return Outcome{ok, "c_N=" + std::to_string(c.c_n) + " a_N=" + std::to_string(c.a_n) + " in " + fmt(secs) +
                               "s (limit 10s)"};
    });

    criterion("partition_identity", [] {
        std::size_t cases = 0;
        for (auto [d, max_n] : {std::pair{1, 20}, {2, 10}, {3, 6}})
            for (int n = 1; n <= max_n; ++n) {
                ++cases;
                if (!verify_partition_identity(enumerate(d, n)))
                    return Outcome{false, "fails at d=" + std::to_string(d) + " N=" + std::to_string(n)};
            }
        return Outcome{true, "c_N = 2d a_N and equal class sizes for " + std::to_string(cases) + " (d, N) pairs"};
    });

    criterion("exact_audit", [] {
        const auto t0 = Clock::now();
        std::string detail;
        bool ok = true;
        for (auto [d, n] : {std::pair{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}}) {
            harness::RunConfig cfg;
            cfg.subcommand = "audit";
            cfg.d = d;
            cfg.walk_length = n;
            int code = 0;
            const auto j = run_json(cfg, code);
            if (code != 0 || j["all_pass"] != true) {
                ok = false;
                for (const auto& c : j["checks"])
                    if (c["pass"] != true) detail += " d=" + std::to_string(d) + ",N=" + std::to_string(n) + ":" +
                                                     c["name"].get<std::string>();
            }
        }
        const double secs = seconds_since(t0);
        ok = ok && secs <= 120.0;
        return Outcome{ok, (ok ? std::string("all checks hold for d=2 N=2..5, d=3 N=2..3") : detail) + " in " +
                               fmt(secs) + "s (limit 120s)"};
    });

    criterion("limit_convergence_d2_n4", [] {
        const StateSpace s = enumerate(2, 4);
        const auto pivot = build_pivot_matrix(s);
        const auto plus = build_pivot_plus_matrices(s);
        const auto rep = limit_audit(s, pivot, &plus, 10000, 1e-6, 1e-12);
        bool ok = rep.closed_form_deviation && *rep.closed_form_deviation <= 1e-6;
        std::string detail;
        for (const auto& t : rep.tracks) {
            ok = ok && t.first_below && t.monotone;
            detail += t.name + "@" + (t.first_below ? std::to_string(*t.first_below) : std::string("never")) +
                      (t.monotone ? " " : "(non-monotone) ");
        }
        return Outcome{ok, detail + "tol 1e-6, horizon 1e4, slack 1e-12"};
    });

    criterion("conjecture_tables", [] {
        bool ok = true;
        std::string detail;
        for (int n = 3; n <= 6; ++n) {
            const StateSpace s = enumerate(2, n);
            const auto scan = conjecture_scan(s, build_pivot_matrix(s), build_pivot_plus_matrices(s), 200);
            const auto& last = scan.rows.back();
            ok = ok && scan.rows.size() == 201 && last.l1_pivot < 1e-4 && last.l1_pivot_plus < 1e-4;
            detail += "N=" + std::to_string(n) + " n0=" + (scan.n0 ? std::to_string(*scan.n0) : std::string("none")) + " ";
        }
        return Outcome{ok, detail + "(inequality reported, not asserted; both L1 < 1e-4 at n=200)"};
    });

    criterion("gmethod_fixtures_exact", [] {
        using namespace gmethod;
        const Partition improper = Partition::improper(4), halves(4, {{0, 1}, {2, 3}}), singles = Partition::singletons(4);
        bool ok = true;
        for (const char* name : {"uniform4", "concentrated4", "mixed4"}) {
            const auto red = reduce(fixtures::load(name), improper, halves, 0.0).values;
            ok = ok && red(0, 0) == Rational(1, 2) && red(0, 1) == Rational(1, 2);
        }
        const auto u = fixtures::load("uniform4"), c = fixtures::load("concentrated4"), m = fixtures::load("mixed4");
        ok = ok && similar(u, c, improper, halves, 0.0) && similar(c, m, improper, halves, 0.0) &&
             similar(u, m, improper, halves, 0.0);
        const auto b = fixtures::load("blockdiag4");
        const auto rb = reduce(b, halves, singles, 0.0).values;
        ok = ok && rb == Matrix<Rational>(2, 4,
                                          std::vector<Rational>{Rational(1, 3), Rational(2, 3), 0, 0, 0, 0,
                                                                Rational(2, 5), Rational(3, 5)});
        const std::vector<Rational> tau{Rational(2, 12), Rational(4, 12), Rational(4, 20), Rational(6, 20)};
        const auto e_tau = Matrix<Rational>::stable(4, tau);
        ok = ok && fixtures::load("concentrated4") * b == e_tau && fixtures::load("mixed4") * b == e_tau;
        return Outcome{ok, "reductions (1/2,1/2), pairwise similar, blockdiag reduction and both products e'tau, exact rationals"};
    });

    criterion("gmethod_random_chains", [] {
        harness::RunConfig cfg;
        cfg.subcommand = "gmethod";
        cfg.cases = 100;
        int code = 0;
        const auto j = run_json(cfg, code);
        std::string detail;
        for (const auto& s : j["random_suites"])
            detail += s["name"].get<std::string>().substr(7) + "=" + std::to_string(s["pass"].get<int>()) + "/100 ";
        return Outcome{code == 0 && j["all_pass"] == true, detail + "tol 1e-10"};
    });

    criterion("monte_carlo_pivot_plus", [] {
        const StateSpace s = enumerate(2, 3);
        const auto plus = build_pivot_plus_matrices(s);
        Distribution q = point_mass(s.size(), 0);
        for (int t = 0; t < 5; ++t) q = propagate(q, t == 0 ? plus.p1 : plus.p2);
        ChainConfig cfg;
        cfg.d = 2;
        cfg.n = 3;
        cfg.variant = Variant::pivot_plus;
        cfg.seed = 1;
        HistogramObserver hist(s, 5);
        ChainObserver* obs[] = {&hist};
        std::size_t violations = 0;
        const std::size_t replicas = 1'000'000;
        for (std::size_t r = 0; r < replicas; ++r)
            if (!run_chain(cfg, 5, obs, r).class_constant) ++violations;
        double worst = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            worst = std::max(worst, std::abs(static_cast<double>(hist.counts()[i]) / replicas - q[i]));
        return Outcome{worst <= 0.005 && violations == 0 && hist.total() == replicas,
                       "max |freq - p_5| = " + fmt(worst) + " (limit 0.005), class violations " +
                           std::to_string(violations)};
    });

    criterion("prefix_search", [] {
        bool ok = true;
        for (int n = 2; n <= 5; ++n) {
            const StateSpace s = enumerate(2, n);
            const auto p = build_pivot_matrix(s);
            const Walk tau = s.walk(s.straight_index(Step(1, 1)));
            ok = ok && minimal_irreducible_prefix(s, p, tau, 1) == 1 &&
                 minimal_irreducible_prefix(s, p, tau, static_cast<std::size_t>(n)) == static_cast<std::size_t>(n);
        }
        std::ifstream f(std::string(SAW_SOURCE_DIR) + "/tests/golden/prefix_d2_n4.json");
        if (!f) return Outcome{false, "golden file missing"};
        const auto golden = nlohmann::json::parse(f);
        const StateSpace s = enumerate(2, 4);
        const auto p = build_pivot_matrix(s);
        const std::size_t m = minimal_irreducible_prefix(s, p, Walk::parse(golden["tau"].get<std::string>(), 2),
                                                         golden["m0"].get<std::size_t>());
        ok = ok && m == golden["M"].get<std::size_t>();
        return Outcome{ok, "M0=1 -> 1 and M0=N -> N for N=2..5; d=2 N=4 M0=2 -> M=" + std::to_string(m) +
                               " (golden " + std::to_string(golden["M"].get<std::size_t>()) + ")"};
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
