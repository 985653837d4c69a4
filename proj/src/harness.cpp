#include "saw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "saw/enumeration.hpp"
#include "saw/errors.hpp"
#include "saw/exact_markov.hpp"
#include "saw/fixtures.hpp"
#include "saw/gmethod.hpp"

namespace saw::harness {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kDenseReferenceMaxStates = 400;

// Writes to cfg.out when set, otherwise to the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw InvalidArgument("cannot open '" + path + "' for writing");
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

ordered_json meta(const RunConfig& cfg) {
    ordered_json m;
    m["tool"] = "sawctl";
    m["version"] = SAW_VERSION;
    m["subcommand"] = cfg.subcommand;
    m["config"] = config_json(cfg);
    m["seed"] = cfg.seed;
    return m;
}

void write_csv_meta(std::ostream& os, const RunConfig& cfg) {
    os << "# tool: sawctl " << SAW_VERSION << '\n';
    os << "# config: " << config_json(cfg).dump() << '\n';
    os << "# seed: " << cfg.seed << '\n';
}

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

ordered_json checks_json(const std::vector<Check>& checks) {
    ordered_json arr = ordered_json::array();
    for (const Check& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return arr;
}

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void write_checks(std::ostream& os, const RunConfig& cfg, const std::vector<Check>& checks, ordered_json doc) {
    if (effective_format(cfg) == "csv") {
        write_csv_meta(os, cfg);
        os << "check,pass,detail\n";
        for (const Check& c : checks) {
            std::string detail = c.detail;
            std::replace(detail.begin(), detail.end(), ',', ';');
            os << c.name << ',' << (c.pass ? "true" : "false") << ',' << detail << '\n';
        }
    } else {
        os << doc.dump(2) << '\n';
    }
}

ordered_json summary_json(const MatrixSummary& s) {
    return {{"size", s.size},           {"denominator", s.denominator}, {"nnz", s.nnz},
            {"symmetric", s.symmetric}, {"irreducible", s.irreducible}, {"aperiodic", s.aperiodic}};
}

void dump_matrix(const std::string& path, const TransitionMatrix& m) {
    std::ofstream txt(path + ".txt", std::ios::binary);
    if (!txt) throw InvalidArgument("cannot open '" + path + ".txt' for writing");
    write_matrix(txt, m);
    std::ofstream js(path + ".json", std::ios::binary);
    js << summary_json(summarize(m)).dump(2) << '\n';
}

ordered_json track_json(const ConvergenceTrack& t) {
    ordered_json j;
    j["name"] = t.name;
    j["first_below_tolerance"] = t.first_below ? ordered_json(*t.first_below) : ordered_json(nullptr);
    j["final_distance"] = t.distance.empty() ? 0.0 : t.distance.back();
    j["monotone_nonincreasing"] = t.monotone;
    j["max_increase"] = t.max_increase;
    return j;
}

std::string walk_class_name(Step key) { return key.to_string(); }

}  // namespace

std::size_t effective_horizon(const RunConfig& cfg) {
    if (cfg.horizon) return *cfg.horizon;
    return cfg.subcommand == "audit" ? 10000 : 200;
}

std::string effective_format(const RunConfig& cfg) {
    if (!cfg.format.empty()) return cfg.format;
    return (cfg.subcommand == "conjecture" || cfg.subcommand == "sample") ? "csv" : "json";
}

void validate(const RunConfig& cfg) {
    static const std::vector<std::string> commands{"enumerate", "audit", "conjecture", "sample", "gmethod"};
    if (std::find(commands.begin(), commands.end(), cfg.subcommand) == commands.end())
        throw InvalidArgument("unknown subcommand '" + cfg.subcommand +
                              "' (expected enumerate, audit, conjecture, sample or gmethod)");
    if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json")
        throw InvalidArgument("--format must be csv or json");
    if (cfg.subcommand == "gmethod") return;
    if (cfg.d < 1) throw InvalidArgument("--d must be >= 1");
    if (cfg.d > kMaxGroupDimension) throw InvalidArgument("--d must be <= " + std::to_string(kMaxGroupDimension));
    if (cfg.walk_length < 1) throw InvalidArgument("--walk-length must be >= 1");
    if (cfg.subcommand == "conjecture" && cfg.walk_length < 2)
        throw InvalidArgument("conjecture compares against pivot+, which needs --walk-length >= 2");
    if (cfg.subcommand == "sample") {
        if (cfg.variant == Variant::pivot_plus && cfg.walk_length < 2)
            throw InvalidArgument("--variant pivot+ needs --walk-length >= 2 (got " + std::to_string(cfg.walk_length) +
                                  ")");
        if (cfg.replicas < 1) throw InvalidArgument("--replicas must be >= 1");
        if (cfg.observe != "histogram" && cfg.observe != "end2end")
            throw InvalidArgument("--observe must be histogram or end2end");
    }
    if (cfg.subcommand == "audit" && cfg.m0 < 1) throw InvalidArgument("--m0 must be >= 1");
    if (!(cfg.tol > 0.0)) throw InvalidArgument("--tol must be positive");
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["subcommand"] = cfg.subcommand;
    if (cfg.subcommand != "gmethod") {
        j["d"] = cfg.d;
        j["walk_length"] = cfg.walk_length;
    }
    if (cfg.subcommand == "audit" || cfg.subcommand == "conjecture") j["horizon"] = effective_horizon(cfg);
    if (cfg.subcommand == "sample") {
        j["variant"] = to_string(cfg.variant);
        j["n_steps"] = cfg.n_steps;
        j["replicas"] = cfg.replicas;
        j["observe"] = cfg.observe;
    }
    if (cfg.subcommand == "audit") j["m0"] = cfg.m0;
    if (cfg.subcommand == "gmethod") j["cases"] = cfg.cases;
    if (cfg.start) j["start"] = *cfg.start;
    j["tol"] = cfg.tol;
    j["stochastic_tol"] = cfg.stochastic_tol;
    j["format"] = effective_format(cfg);
    j["seed"] = cfg.seed;
    return j;
}

// enumerate

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    const StateSpace s = enumerate(cfg.d, cfg.walk_length, {cfg.max_walks});
    const WalkCounts c = counts(s);
    const bool identity = verify_partition_identity(s);

    if (!cfg.dump_walks.empty()) {
        std::ofstream f(cfg.dump_walks, std::ios::binary);
        if (!f) throw InvalidArgument("cannot open '" + cfg.dump_walks + "' for writing");
        f << "# d=" << s.dimension() << " N=" << s.length() << " c_N=" << c.c_n << '\n';
        for (std::size_t i = 0; i < s.size(); ++i) f << s.walk(i).to_string() << '\n';
    }

    Sink sink(cfg.out, out);
    if (effective_format(cfg) == "csv") {
        write_csv_meta(sink.stream(), cfg);
        sink.stream() << "d,N,c_N,a_N,identity_holds,class_sizes\n";
        sink.stream() << s.dimension() << ',' << s.length() << ',' << c.c_n << ',' << c.a_n << ','
                      << (identity ? "true" : "false") << ',';
        for (std::size_t i = 0; i < c.class_sizes.size(); ++i) sink.stream() << (i ? ";" : "") << c.class_sizes[i];
        sink.stream() << '\n';
    } else {
        ordered_json j;
        j["meta"] = meta(cfg);
        j["d"] = s.dimension();
        j["N"] = s.length();
        j["c_N"] = c.c_n;
        j["a_N"] = c.a_n;
        j["class_sizes"] = c.class_sizes;
        j["identity_holds"] = identity;
        sink.stream() << j.dump(2) << '\n';
    }
    return identity ? 0 : 1;
}

// audit

int cmd_audit(const RunConfig& cfg, std::ostream& out) {
    const StateSpace s = enumerate(cfg.d, cfg.walk_length, {kMaxExactStates});
    const std::size_t n = s.size();
    const int d = s.dimension();
    const std::size_t N = static_cast<std::size_t>(s.length());
    std::vector<Check> checks;
    ordered_json doc;
    doc["meta"] = meta(cfg);
    doc["d"] = d;
    doc["N"] = N;
    doc["c_N"] = n;

    const TransitionMatrix pivot = build_pivot_matrix(s);
    const MatrixSummary ps = summarize(pivot);
    checks.push_back({"pivot.row_sums_exact", pivot.rows_sum_to_denominator(), "D=" + std::to_string(pivot.denominator())});
    checks.push_back({"pivot.count_symmetric", ps.symmetric, ""});
    checks.push_back({"pivot.irreducible", ps.irreducible, ""});
    checks.push_back({"pivot.aperiodic", ps.aperiodic, ""});
    checks.push_back({"pivot.uniform_stationary_exact", uniform_is_stationary_exact(pivot), "pi P = pi in rationals"});
    doc["matrices"]["pivot"] = summary_json(ps);
    if (!cfg.dump_matrix.empty()) dump_matrix(cfg.dump_matrix + ".pivot", pivot);

    std::optional<PivotPlusMatrices> plus;
    if (N >= 2) {
        plus = build_pivot_plus_matrices(s);
        const auto straight = s.straight_indices();
        bool p1_ok = plus->p1.rows_sum_to_denominator() && plus->p1.denominator() == static_cast<std::uint64_t>(2 * d);
        for (std::size_t i = 0; i < n && p1_ok; ++i) {
            auto cols = plus->p1.row_cols(i);
            p1_ok = cols.size() == straight.size();
            for (std::size_t b : straight) p1_ok = p1_ok && plus->p1.count(i, b) == 1;
        }
        checks.push_back({"pivot_plus.p1_rows_identical_uniform_on_straight", p1_ok,
                          "1/" + std::to_string(2 * d) + " on each of the " + std::to_string(straight.size()) +
                              " straight walks"});
        checks.push_back({"pivot_plus.p2_row_sums_exact", plus->p2.rows_sum_to_denominator(),
                          "D=" + std::to_string(plus->p2.denominator())});
        checks.push_back({"pivot_plus.p2_off_block_zero", is_class_block_diagonal(plus->p2, s), ""});
        doc["matrices"]["p1"] = summary_json(summarize(plus->p1));
        doc["matrices"]["p2"] = summary_json(summarize(plus->p2));
        ordered_json blocks = ordered_json::array();
        for (const ClassBlock& b : s.classes()) {
            const TransitionMatrix q = class_block(plus->p2, s, b.key);
            const MatrixSummary qs = summarize(q);
            const std::string name = "block[" + walk_class_name(b.key) + "]";
            checks.push_back({name + ".count_symmetric", qs.symmetric, ""});
            checks.push_back({name + ".irreducible", qs.irreducible, ""});
            checks.push_back({name + ".aperiodic", qs.aperiodic, ""});
            checks.push_back({name + ".uniform_stationary_exact", uniform_is_stationary_exact(q), "rho Q = rho"});
            ordered_json bj = summary_json(qs);
            bj["class"] = b.key.to_string();
            blocks.push_back(bj);
        }
        doc["matrices"]["blocks"] = blocks;
        if (!cfg.dump_matrix.empty()) {
            dump_matrix(cfg.dump_matrix + ".p1", plus->p1);
            dump_matrix(cfg.dump_matrix + ".p2", plus->p2);
        }
    }

    // Restricted irreducibility search from the straight walk along +e_1.
    {
        const Walk tau = s.walk(s.straight_index(Step(1, 1)));
        const std::size_t m_first = minimal_irreducible_prefix(s, pivot, tau, 1);
        const std::size_t m_last = minimal_irreducible_prefix(s, pivot, tau, N);
        checks.push_back({"prefix_search.m0_1_gives_1", m_first == 1, "M=" + std::to_string(m_first)});
        checks.push_back({"prefix_search.m0_N_gives_N", m_last == N, "M=" + std::to_string(m_last)});
        ordered_json pj;
        pj["tau"] = tau.to_string();
        if (cfg.m0 <= N) {
            pj["m0"] = cfg.m0;
            pj["M"] = minimal_irreducible_prefix(s, pivot, tau, cfg.m0);
        }
        doc["prefix_search"] = pj;
    }

    // Limit behaviour.
    {
        const LimitAuditReport rep = limit_audit(s, pivot, plus ? &*plus : nullptr, effective_horizon(cfg), cfg.tol);
        ordered_json lj;
        lj["tolerance"] = rep.tolerance;
        lj["horizon"] = rep.horizon;
        lj["steps_run"] = rep.steps_run;
        lj["starts"] = rep.starts;
        lj["tracks"] = ordered_json::array();
        for (const ConvergenceTrack& t : rep.tracks) {
            lj["tracks"].push_back(track_json(t));
            checks.push_back({"limit." + t.name + ".below_tolerance", t.first_below.has_value(),
                              t.first_below ? "first n=" + std::to_string(*t.first_below) : "not reached"});
            checks.push_back({"limit." + t.name + ".monotone", t.monotone, ""});
        }
        if (plus) {
            const bool ok = rep.closed_form_deviation && *rep.closed_form_deviation <= cfg.tol;
            lj["closed_form_deviation"] = rep.closed_form_deviation ? ordered_json(*rep.closed_form_deviation)
                                                                    : ordered_json(nullptr);
            checks.push_back({"limit.pivot+.matches_one_over_2d_a_N", ok, ""});
        }
        doc["limit_audit"] = lj;
    }

    // Reference chain structure P1 in G_{D1,D2}, lim P2^n in G_{D2,D3},
    // and P1 lim P2^n = e' pi, on dense matrices.
    if (plus && n <= kDenseReferenceMaxStates) {
        using gmethod::Partition;
        const auto a_n = static_cast<double>(s.classes().front().size);
        std::vector<std::vector<std::size_t>> class_blocks;
        for (const ClassBlock& b : s.classes()) {
            std::vector<std::size_t> idx(b.size);
            for (std::size_t i = 0; i < b.size; ++i) idx[i] = b.offset + i;
            class_blocks.push_back(std::move(idx));
        }
        const Partition d1 = Partition::improper(n), d2(n, class_blocks), d3 = Partition::singletons(n);
        Matrix<double> p1(n, n), limit(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::uint32_t j : plus->p1.row_cols(i)) p1(i, j) = plus->p1.probability(i, j);
            const ClassBlock& b = s.classes()[s.class_index_of(i)];
            for (std::size_t k = 0; k < b.size; ++k) limit(i, b.offset + k) = 1.0 / a_n;
        }
        const std::vector<double> pi(n, 1.0 / static_cast<double>(n));
        const Matrix<double> e_pi = Matrix<double>::stable(n, pi);
        const double tol = cfg.stochastic_tol;
        checks.push_back({"reference.p1_in_G_D1_D2", gmethod::in_g(p1, d1, d2, tol), ""});
        checks.push_back({"reference.limit_in_G_D2_D3", gmethod::in_g(limit, d2, d3, tol), ""});
        checks.push_back({"reference.p1_similar_to_e_pi", gmethod::similar(p1, e_pi, d1, d2, tol), ""});
        checks.push_back({"reference.limit_not_similar_to_e_pi", !gmethod::similar(limit, e_pi, d2, d3, tol), ""});
        gmethod::ChainInstance<double> chain{{p1, limit}, {d1, d2, d3}};
        const auto fac = gmethod::check_stable_product_factorization(chain, tol);
        checks.push_back({"reference.product_stable_factorization", fac.verdict == gmethod::Verdict::pass, fac.detail});
        checks.push_back({"reference.product_equals_e_pi",
                          gmethod::matrices_agree(p1 * limit, e_pi, tol), ""});
    }

    const bool ok = all_pass(checks);
    doc["checks"] = checks_json(checks);
    doc["all_pass"] = ok;
    Sink sink(cfg.out, out);
    write_checks(sink.stream(), cfg, checks, doc);
    return ok ? 0 : 1;
}

// conjecture

int cmd_conjecture(const RunConfig& cfg, std::ostream& out) {
    const StateSpace s = enumerate(cfg.d, cfg.walk_length, {kMaxExactStates});
    const TransitionMatrix pivot = build_pivot_matrix(s);
    const PivotPlusMatrices plus = build_pivot_plus_matrices(s);
    std::optional<std::size_t> start;
    if (cfg.start) {
        const auto idx = s.index_of(Walk::parse(*cfg.start, cfg.d));
        if (!idx) throw InvalidArgument("--start '" + *cfg.start + "' is not a self-avoiding walk of this length");
        start = *idx;
    }
    const ConjectureScan scan = conjecture_scan(s, pivot, plus, effective_horizon(cfg), start);

    {
        Sink sink(cfg.out, out);
        std::ostream& os = sink.stream();
        write_csv_meta(os, cfg);
        os << "# start: " << scan.start_walk << " (matched point mass for both chains)\n";
        os << "n,l1_pivot,l1_pivot_plus,p_leads\n";
        char buf[128];
        for (const ConjectureRow& r : scan.rows) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%s\n", r.n, r.l1_pivot, r.l1_pivot_plus,
                          r.p_leads ? "true" : "false");
            os << buf;
        }
    }

    ordered_json summary;
    summary["meta"] = meta(cfg);
    summary["n0_empirical"] = scan.n0 ? ordered_json(*scan.n0) : ordered_json(nullptr);
    summary["horizon"] = scan.horizon;
    summary["matched_start"] = true;
    summary["start_walk"] = scan.start_walk;
    summary["start_index"] = scan.start_index;
    summary["rows"] = scan.rows.size();
    summary["final_l1_pivot"] = scan.rows.back().l1_pivot;
    summary["final_l1_pivot_plus"] = scan.rows.back().l1_pivot_plus;
    summary["note"] = "p_leads is reported per n; the inequality is not asserted";
    std::string summary_path = cfg.summary;
    if (summary_path.empty() && !cfg.out.empty()) summary_path = cfg.out + ".summary.json";
    if (!summary_path.empty()) {
        std::ofstream f(summary_path, std::ios::binary);
        if (!f) throw InvalidArgument("cannot open '" + summary_path + "' for writing");
        f << summary.dump(2) << '\n';
    }
    return 0;
}

// sample

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
    ChainConfig chain;
    chain.d = cfg.d;
    chain.n = cfg.walk_length;
    chain.variant = cfg.variant;
    chain.seed = cfg.seed;
    validate(chain);

    std::size_t class_violations = 0;
    std::uint64_t accepted = 0;
    Sink sink(cfg.out, out);
    std::ostream& os = sink.stream();

    if (!cfg.dump_trajectory.empty()) {
        TrajectoryRecorder rec;
        ChainObserver* obs[] = {&rec};
        run_chain(chain, cfg.n_steps, obs, 0);
        std::ofstream f(cfg.dump_trajectory, std::ios::binary);
        if (!f) throw InvalidArgument("cannot open '" + cfg.dump_trajectory + "' for writing");
        f << "# replica 0, times 0.." << cfg.n_steps << '\n';
        write_walks(f, rec.walks);
    }

    if (cfg.observe == "histogram") {
        const StateSpace s = enumerate(cfg.d, cfg.walk_length, {cfg.max_walks});
        HistogramObserver hist(s, cfg.n_steps);
        ChainObserver* obs[] = {&hist};
        for (std::size_t r = 0; r < cfg.replicas; ++r) {
            const TrajectorySummary t = run_chain(chain, cfg.n_steps, obs, r);
            accepted += t.accepted;
            if (!t.class_constant) ++class_violations;
        }
        std::optional<Distribution> exact;
        if (s.size() <= kMaxExactStates) {
            const TransitionMatrix pivot = build_pivot_matrix(s);
            Distribution q = point_mass(s.size(), 0);
            if (cfg.variant == Variant::pivot) {
                for (std::size_t t = 0; t < cfg.n_steps; ++t) q = propagate(q, pivot);
            } else {
                const PivotPlusMatrices plus = build_pivot_plus_matrices(s);
                for (std::size_t t = 0; t < cfg.n_steps; ++t) q = propagate(q, t == 0 ? plus.p1 : plus.p2);
            }
            exact = std::move(q);
        }
        double worst = 0.0;
        const auto total = static_cast<double>(hist.total());
        if (effective_format(cfg) == "json") {
            ordered_json j;
            j["meta"] = meta(cfg);
            j["states"] = ordered_json::array();
            for (std::size_t i = 0; i < s.size(); ++i) {
                const double f = static_cast<double>(hist.counts()[i]) / total;
                ordered_json e{{"index", i}, {"walk", s.walk(i).to_string()}, {"count", hist.counts()[i]}, {"frequency", f}};
                if (exact) {
                    e["exact"] = (*exact)[i];
                    worst = std::max(worst, std::abs(f - (*exact)[i]));
                }
                j["states"].push_back(e);
            }
            if (exact) j["max_abs_deviation"] = worst;
            j["class_violations"] = class_violations;
            j["accepted_transitions"] = accepted;
            os << j.dump(2) << '\n';
        } else {
            write_csv_meta(os, cfg);
            os << (exact ? "index,walk,count,frequency,exact\n" : "index,walk,count,frequency\n");
            char buf[64];
            for (std::size_t i = 0; i < s.size(); ++i) {
                const double f = static_cast<double>(hist.counts()[i]) / total;
                os << i << ",\"" << s.walk(i).to_string() << "\"," << hist.counts()[i] << ',';
                std::snprintf(buf, sizeof buf, "%.10g", f);
                os << buf;
                if (exact) {
                    std::snprintf(buf, sizeof buf, ",%.10g", (*exact)[i]);
                    os << buf;
                    worst = std::max(worst, std::abs(f - (*exact)[i]));
                }
                os << '\n';
            }
            if (exact) os << "# max_abs_deviation: " << worst << '\n';
            os << "# class_violations: " << class_violations << '\n';
        }
    } else {
        EndToEndObserver e2e(cfg.n_steps + 1);
        ChainObserver* obs[] = {&e2e};
        for (std::size_t r = 0; r < cfg.replicas; ++r) {
            const TrajectorySummary t = run_chain(chain, cfg.n_steps, obs, r);
            accepted += t.accepted;
            if (!t.class_constant) ++class_violations;
        }
        if (effective_format(cfg) == "json") {
            ordered_json j;
            j["meta"] = meta(cfg);
            j["times"] = ordered_json::array();
            for (std::size_t t = 0; t < e2e.times(); ++t)
                j["times"].push_back({{"n", t}, {"samples", e2e.samples(t)}, {"mean_r2", e2e.mean(t)}, {"var_r2", e2e.variance(t)}});
            j["class_violations"] = class_violations;
            j["accepted_transitions"] = accepted;
            os << j.dump(2) << '\n';
        } else {
            write_csv_meta(os, cfg);
            os << "n,samples,mean_r2,var_r2\n";
            char buf[128];
            for (std::size_t t = 0; t < e2e.times(); ++t) {
                std::snprintf(buf, sizeof buf, "%zu,%llu,%.12g,%.12g\n", t,
                              static_cast<unsigned long long>(e2e.samples(t)), e2e.mean(t), e2e.variance(t));
                os << buf;
            }
            os << "# class_violations: " << class_violations << '\n';
        }
    }
    return class_violations == 0 ? 0 : 1;
}

// gmethod

namespace {

using gmethod::Partition;

Check fixture_check(const std::string& name, bool pass, std::string detail = "") {
    return {name, pass, std::move(detail)};
}

std::string row_string(const Matrix<Rational>& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    }
    return s + ")";
}

}  // namespace

int cmd_gmethod(const RunConfig& cfg, std::ostream& out) {
    std::vector<Check> checks;
    ordered_json doc;
    doc["meta"] = meta(cfg);

    // Bundled exact fixtures.
    const Matrix<Rational> uniform = fixtures::load("uniform4");
    const Matrix<Rational> concentrated = fixtures::load("concentrated4");
    const Matrix<Rational> mixed = fixtures::load("mixed4");
    const Matrix<Rational> blockdiag = fixtures::load("blockdiag4");
    const Partition improper = Partition::improper(4);
    const Partition halves(4, {{0, 1}, {2, 3}});
    const Partition singles = Partition::singletons(4);

    const Matrix<Rational> half_half(1, 2, std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    for (const auto& [name, m] : {std::pair{"uniform4", &uniform}, {"concentrated4", &concentrated}, {"mixed4", &mixed}}) {
        checks.push_back(fixture_check(std::string("fixture.") + name + ".in_G", gmethod::in_g(*m, improper, halves)));
        const auto red = gmethod::reduce(*m, improper, halves);
        checks.push_back(fixture_check(std::string("fixture.") + name + ".reduction_half_half", red.values == half_half,
                                       row_string(red.values)));
    }
    checks.push_back(fixture_check("fixture.similarity_chain",
                                   gmethod::similar(uniform, concentrated, improper, halves) &&
                                       gmethod::similar(concentrated, mixed, improper, halves) &&
                                       gmethod::similar(uniform, mixed, improper, halves),
                                   "uniform4 ~ concentrated4 ~ mixed4"));
    checks.push_back(fixture_check("fixture.mixed4.least_fine_partition_improper",
                                   gmethod::least_fine_stable_partition(mixed, halves) == improper));

    Matrix<Rational> blockdiag_red(2, 4, std::vector<Rational>{Rational(1, 3), Rational(2, 3), Rational(0), Rational(0), Rational(0),
                                          Rational(0), Rational(2, 5), Rational(3, 5)});
    checks.push_back(fixture_check("fixture.blockdiag4.in_G", gmethod::in_g(blockdiag, halves, singles)));
    const auto bred = gmethod::reduce(blockdiag, halves, singles);
    checks.push_back(fixture_check("fixture.blockdiag4.reduction", bred.values == blockdiag_red, row_string(bred.values)));
    checks.push_back(fixture_check("fixture.blockdiag4.gamma_bar_zero", gmethod::gamma_bar(blockdiag, halves) == 0));

    const std::vector<Rational> tau{Rational(2, 12), Rational(4, 12), Rational(4, 20), Rational(6, 20)};
    const Matrix<Rational> e_tau = Matrix<Rational>::stable(4, tau);
    const Matrix<Rational> prod_p = concentrated * blockdiag;
    const Matrix<Rational> prod_u = mixed * blockdiag;
    const bool products_exact = prod_p == prod_u && prod_p == e_tau;
    checks.push_back(fixture_check("fixture.products_equal_e_tau", products_exact,
                                   products_exact ? "exact" : row_string(prod_p) + " vs " + row_string(prod_u)));
    gmethod::ChainInstance<Rational> pc{{concentrated, blockdiag}, {improper, halves, singles}};
    gmethod::ChainInstance<Rational> uc{{mixed, blockdiag}, {improper, halves, singles}};
    const std::pair<const char*, gmethod::CheckResult> fixture_checks[] = {
        {"concentrated4_blockdiag4", gmethod::check_stable_product_factorization(pc, 0.0)},
        {"mixed4_blockdiag4", gmethod::check_stable_product_factorization(uc, 0.0)},
        {"both_products", gmethod::check_representative_independence(pc, uc, 0.0)}};
    for (const auto& [label, r] : fixture_checks)
        checks.push_back(fixture_check("fixture." + r.name + "." + label, r.verdict == gmethod::Verdict::pass, r.detail));
    doc["fixture_product"] = {{"tau", "(2/12, 4/12, 4/20, 6/20)"}, {"verdict", products_exact ? "exact" : "mismatch"}};

    // Random chains satisfying each check's hypotheses.
    const double tol = 1e-10;
    std::size_t pass[3] = {0, 0, 0}, fail[3] = {0, 0, 0}, skip[3] = {0, 0, 0};
    double worst[3] = {0, 0, 0};
    auto tally = [&](int k, const gmethod::CheckResult& r) {
        if (r.verdict == gmethod::Verdict::pass) ++pass[k];
        else if (r.verdict == gmethod::Verdict::fail) ++fail[k];
        else ++skip[k];
        worst[k] = std::max(worst[k], k == 0 ? r.deviation : std::abs(r.deviation));
    };
    for (std::size_t c = 0; c < cfg.cases; ++c) {
        RandomStream rng = substream(cfg.seed, c);
        gmethod::ChainOptions bound_opts;
        bound_opts.improper_first = false;
        bound_opts.singleton_last = false;
        bound_opts.free_last = true;
        tally(0, gmethod::check_ergodicity_product_bound(gmethod::random_chain(rng, bound_opts), tol));

        gmethod::ChainOptions outer;
        outer.stochastic = (c % 2 == 0);
        const auto chain = gmethod::random_chain(rng, outer);
        tally(1, gmethod::check_stable_product_factorization(chain, tol));
        tally(2, gmethod::check_representative_independence(chain, gmethod::random_similar_chain(chain, rng), tol));
    }
    const char* names[3] = {"random.ergodicity_product_bound", "random.stable_product_factorization",
                            "random.representative_independence"};
    ordered_json rj = ordered_json::array();
    for (int k = 0; k < 3; ++k) {
        checks.push_back({names[k], fail[k] == 0 && skip[k] == 0 && pass[k] == cfg.cases,
                          std::to_string(pass[k]) + "/" + std::to_string(cfg.cases) + " pass"});
        rj.push_back({{"name", names[k]}, {"pass", pass[k]}, {"fail", fail[k]}, {"inapplicable", skip[k]},
                      {"worst_deviation", worst[k]}});
    }
    doc["random_suites"] = rj;
    doc["tolerance"] = tol;

    const bool ok = all_pass(checks);
    doc["checks"] = checks_json(checks);
    doc["all_pass"] = ok;
    Sink sink(cfg.out, out);
    write_checks(sink.stream(), cfg, checks, doc);
    return ok ? 0 : 1;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        if (cfg.subcommand == "enumerate") return cmd_enumerate(cfg, out);
        if (cfg.subcommand == "audit") return cmd_audit(cfg, out);
        if (cfg.subcommand == "conjecture") return cmd_conjecture(cfg, out);
        if (cfg.subcommand == "sample") return cmd_sample(cfg, out);
        return cmd_gmethod(cfg, out);
    } catch (const Error& e) {
        err << "sawctl " << cfg.subcommand << ": " << e.what() << '\n';
        return 2;
    }
}

}  // namespace saw::harness
