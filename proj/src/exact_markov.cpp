#include "saw/exact_markov.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "saw/errors.hpp"
#include "saw/pivot.hpp"

namespace saw {

// TransitionMatrix

TransitionMatrix::TransitionMatrix(std::size_t n, std::uint64_t denominator, std::vector<std::vector<Entry>> rows)
    : n_(n), denominator_(denominator) {
    if (denominator == 0) throw InvalidArgument("transition matrix denominator must be positive");
    if (rows.size() != n) throw DimensionMismatch("row count does not match matrix size");
    row_ptr_.assign(1, 0);
    row_ptr_.reserve(n + 1);
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
        for (std::size_t i = 0; i < row.size();) {
            if (row[i].col >= n) throw InvalidArgument("column index out of range");
            std::uint64_t c = 0;
            const std::uint32_t col = row[i].col;
            for (; i < row.size() && row[i].col == col; ++i) c += row[i].count;
            if (c == 0) continue;
            cols_.push_back(col);
            counts_.push_back(c);
        }
        row_ptr_.push_back(cols_.size());
    }
}

std::uint64_t TransitionMatrix::count(std::size_t i, std::size_t j) const {
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(j));
    if (it == cols.end() || *it != j) return 0;
    return row_counts(i)[static_cast<std::size_t>(it - cols.begin())];
}

Rational TransitionMatrix::exact(std::size_t i, std::size_t j) const {
    return Rational(BigInt(count(i, j)), BigInt(denominator_));
}

std::uint64_t TransitionMatrix::row_sum(std::size_t i) const {
    auto c = row_counts(i);
    return std::accumulate(c.begin(), c.end(), std::uint64_t{0});
}

bool TransitionMatrix::rows_sum_to_denominator() const {
    for (std::size_t i = 0; i < n_; ++i) {
        if (row_sum(i) != denominator_) return false;
    }
    return true;
}

bool TransitionMatrix::is_count_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
        auto cols = row_cols(i);
        auto cnt = row_counts(i);
        for (std::size_t e = 0; e < cols.size(); ++e) {
            if (count(cols[e], i) != cnt[e]) return false;
        }
    }
    return true;
}

TransitionMatrix TransitionMatrix::restrict_to(std::span<const std::size_t> indices) const {
    std::vector<std::int64_t> pos(n_, -1);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= n_) throw InvalidArgument("restriction index out of range");
        pos[indices[k]] = static_cast<std::int64_t>(k);
    }
    std::vector<std::vector<Entry>> rows(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        auto cols = row_cols(indices[k]);
        auto cnt = row_counts(indices[k]);
        for (std::size_t e = 0; e < cols.size(); ++e) {
            if (pos[cols[e]] >= 0) rows[k].push_back({static_cast<std::uint32_t>(pos[cols[e]]), cnt[e]});
        }
    }
    return TransitionMatrix(indices.size(), denominator_, std::move(rows));
}

// Construction

namespace {

TransitionMatrix build_restricted_pivot(const StateSpace& s, Variant variant) {
    PivotKernel kernel(s.dimension(), s.length(), variant);
    const auto& group = kernel.group();
    const std::size_t n = s.size();
    std::vector<std::vector<TransitionMatrix::Entry>> rows(n);
    std::vector<std::uint8_t> codes;
    for (std::size_t a = 0; a < n; ++a) {
        const Walk w = s.walk(a);
        std::vector<std::uint32_t> targets;
        targets.reserve(kernel.pivot_count() * group.size());
        for (std::size_t k = kernel.min_pivot(); k < w.length(); ++k) {
            for (const LatticeSymmetry& t : group) {
                std::size_t b = a;
                if (kernel.try_move(w, k, t, &codes)) {
                    auto idx = s.index_of_codes(codes);
                    if (!idx) throw Error("accepted pivot candidate missing from the state space");
                    b = *idx;
                }
                targets.push_back(static_cast<std::uint32_t>(b));
            }
        }
        std::sort(targets.begin(), targets.end());
        for (std::size_t i = 0; i < targets.size();) {
            std::size_t j = i;
            while (j < targets.size() && targets[j] == targets[i]) ++j;
            rows[a].push_back({targets[i], j - i});
            i = j;
        }
    }
    const std::uint64_t denom = kernel.pivot_count() * group.size();
    return TransitionMatrix(n, denom, std::move(rows));
}

}  // namespace

TransitionMatrix build_pivot_matrix(const StateSpace& s) { return build_restricted_pivot(s, Variant::pivot); }

PivotPlusMatrices build_pivot_plus_matrices(const StateSpace& s) {
    if (s.length() < 2) throw InvalidArgument("pivot+ matrices require N >= 2");
    const std::vector<std::size_t> straight = s.straight_indices();
    std::vector<TransitionMatrix::Entry> p1_row;
    for (std::size_t b : straight) p1_row.push_back({static_cast<std::uint32_t>(b), 1});
    std::vector<std::vector<TransitionMatrix::Entry>> p1_rows(s.size(), p1_row);
    PivotPlusMatrices out;
    out.p1 = TransitionMatrix(s.size(), 2 * static_cast<std::uint64_t>(s.dimension()), std::move(p1_rows));
    out.p2 = build_restricted_pivot(s, Variant::pivot_plus);
    return out;
}

TransitionMatrix class_block(const TransitionMatrix& m, const StateSpace& s, Step key) {
    if (m.size() != s.size()) throw DimensionMismatch("matrix and state space differ in size");
    const ClassBlock& b = s.class_block(key);
    std::vector<std::size_t> idx(b.size);
    std::iota(idx.begin(), idx.end(), b.offset);
    return m.restrict_to(idx);
}

bool is_class_block_diagonal(const TransitionMatrix& m, const StateSpace& s) {
    if (m.size() != s.size()) throw DimensionMismatch("matrix and state space differ in size");
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::size_t c = s.class_index_of(i);
        for (std::uint32_t j : m.row_cols(i)) {
            if (s.class_index_of(j) != c) return false;
        }
    }
    return true;
}

// Distributions

Distribution uniform_distribution(std::size_t n) {
    if (n == 0) throw InvalidArgument("empty distribution");
    return Distribution(n, 1.0 / static_cast<double>(n));
}

Distribution point_mass(std::size_t n, std::size_t at) {
    if (at >= n) throw InvalidArgument("point mass index out of range");
    Distribution q(n, 0.0);
    q[at] = 1.0;
    return q;
}

Distribution propagate(std::span<const double> q, const TransitionMatrix& m) {
    if (q.size() != m.size()) throw DimensionMismatch("distribution length does not match matrix size");
    Distribution out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (q[i] == 0.0) continue;
        auto cols = m.row_cols(i);
        auto cnt = m.row_counts(i);
        for (std::size_t e = 0; e < cols.size(); ++e) out[cols[e]] += q[i] * static_cast<double>(cnt[e]);
    }
    const double inv = 1.0 / static_cast<double>(m.denominator());
    for (double& x : out) x *= inv;
    return out;
}

RationalDistribution propagate_exact(std::span<const Rational> q, const TransitionMatrix& m) {
    if (q.size() != m.size()) throw DimensionMismatch("distribution length does not match matrix size");
    if (m.size() > kMaxExactStates)
        throw CapacityError("rational mode is limited to " + std::to_string(kMaxExactStates) + " states");
    RationalDistribution out(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (q[i] == 0) continue;
        auto cols = m.row_cols(i);
        auto cnt = m.row_counts(i);
        for (std::size_t e = 0; e < cols.size(); ++e) out[cols[e]] += q[i] * Rational(BigInt(cnt[e]));
    }
    const Rational inv(BigInt(1), BigInt(m.denominator()));
    for (Rational& x : out) x *= inv;
    return out;
}

std::vector<Distribution> evolve(std::span<const double> q0, std::span<const TransitionMatrix* const> schedule,
                                 std::size_t horizon) {
    if (schedule.empty() && horizon > 0) throw InvalidArgument("empty matrix schedule");
    std::vector<Distribution> out;
    out.reserve(horizon + 1);
    out.emplace_back(q0.begin(), q0.end());
    for (std::size_t t = 0; t < horizon; ++t) {
        const TransitionMatrix& m = *schedule[std::min(t, schedule.size() - 1)];
        out.push_back(propagate(out.back(), m));
    }
    return out;
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DimensionMismatch("l1_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s;
}

bool uniform_is_stationary_exact(const TransitionMatrix& m) {
    const Rational u(BigInt(1), BigInt(m.size()));
    const RationalDistribution pi(m.size(), u);
    const RationalDistribution next = propagate_exact(pi, m);
    return std::all_of(next.begin(), next.end(), [&](const Rational& x) { return x == u; });
}

// Graph structure

namespace {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

Adjacency reverse_graph(const TransitionMatrix& m) {
    Adjacency rev(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::uint32_t j : m.row_cols(i)) rev[j].push_back(static_cast<std::uint32_t>(i));
    }
    return rev;
}

// Kosaraju with explicit stacks. Returns component id per vertex.
std::vector<std::size_t> strong_components(const TransitionMatrix& m, std::size_t& n_components) {
    const std::size_t n = m.size();
    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        seen[root] = 1;
        while (!stack.empty()) {
            auto& [v, e] = stack.back();
            auto cols = m.row_cols(v);
            if (e < cols.size()) {
                const std::size_t w = cols[e++];
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    const Adjacency rev = reverse_graph(m);
    std::vector<std::size_t> comp(n, static_cast<std::size_t>(-1));
    n_components = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] != static_cast<std::size_t>(-1)) continue;
        std::vector<std::size_t> stack{*it};
        comp[*it] = n_components;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t w : rev[v]) {
                if (comp[w] == static_cast<std::size_t>(-1)) {
                    comp[w] = n_components;
                    stack.push_back(w);
                }
            }
        }
        ++n_components;
    }
    return comp;
}

// gcd of cycle lengths inside the component `c` via BFS levels; 0 if the
// component carries no cycle.
std::size_t component_period(const TransitionMatrix& m, const std::vector<std::size_t>& comp, std::size_t c,
                             std::size_t root) {
    std::vector<std::int64_t> level(m.size(), -1);
    std::deque<std::size_t> queue{root};
    level[root] = 0;
    std::size_t g = 0;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::uint32_t w : m.row_cols(v)) {
            if (comp[w] != c) continue;
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                queue.push_back(w);
            } else {
                const auto diff = static_cast<std::size_t>(std::llabs(level[v] + 1 - level[w]));
                g = std::gcd(g, diff);
            }
        }
    }
    return g;
}

}  // namespace

bool is_irreducible(const TransitionMatrix& m) {
    if (m.size() == 0) return false;
    std::size_t n_components = 0;
    strong_components(m, n_components);
    return n_components == 1;
}

std::size_t period(const TransitionMatrix& m) {
    if (!is_irreducible(m)) throw InvalidArgument("period is defined for irreducible matrices only");
    std::vector<std::size_t> comp(m.size(), 0);
    return component_period(m, comp, 0, 0);
}

bool is_aperiodic(const TransitionMatrix& m) {
    if (m.size() == 0) return false;
    std::size_t n_components = 0;
    const auto comp = strong_components(m, n_components);
    std::vector<std::size_t> root(n_components, static_cast<std::size_t>(-1));
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (root[comp[v]] == static_cast<std::size_t>(-1)) root[comp[v]] = v;
    }
    bool any_cycle = false;
    for (std::size_t c = 0; c < n_components; ++c) {
        const std::size_t g = component_period(m, comp, c, root[c]);
        if (g == 0) continue;
        any_cycle = true;
        if (g != 1) return false;
    }
    return any_cycle;
}

std::size_t minimal_irreducible_prefix(const StateSpace& s, const TransitionMatrix& pivot, const Walk& tau,
                                       std::size_t m0) {
    if (pivot.size() != s.size()) throw DimensionMismatch("matrix and state space differ in size");
    if (!s.index_of(tau)) throw InvalidArgument("tau is not an element of the state space");
    const auto n = static_cast<std::size_t>(s.length());
    if (m0 < 1 || m0 > n) throw InvalidArgument("M0 must lie in 1..N");
    for (std::size_t m = m0; m <= n; ++m) {
        const std::vector<std::size_t> members = prefix_class(s, tau.prefix(m));
        if (is_irreducible(pivot.restrict_to(members))) return m;
    }
    // The M = N class is a single state with a positive diagonal entry.
    throw Error("no irreducible prefix class found");
}

// Convergence audits

LimitAuditReport limit_audit(const StateSpace& s, const TransitionMatrix& pivot, const PivotPlusMatrices* plus,
                             std::size_t horizon, double tolerance, double monotone_slack, std::size_t max_starts) {
    const std::size_t n = s.size();
    if (pivot.size() != n) throw DimensionMismatch("matrix and state space differ in size");

    std::vector<std::size_t> starts;
    if (n <= max_starts) {
        starts.resize(n);
        std::iota(starts.begin(), starts.end(), 0);
    } else {
        starts = s.straight_indices();
    }

    LimitAuditReport report;
    report.tolerance = tolerance;
    report.horizon = horizon;
    report.starts = starts.size();

    const Distribution pi = uniform_distribution(n);
    std::vector<Distribution> pivot_rows, block_rows;
    for (std::size_t a : starts) pivot_rows.push_back(point_mass(n, a));
    if (plus) block_rows = pivot_rows;

    // rho of each start's class, extended by zeros.
    std::vector<Distribution> rho;
    if (plus) {
        for (std::size_t a : starts) {
            const ClassBlock& b = s.classes()[s.class_index_of(a)];
            Distribution r(n, 0.0);
            for (std::size_t i = 0; i < b.size; ++i) r[b.offset + i] = 1.0 / static_cast<double>(b.size);
            rho.push_back(std::move(r));
        }
    }
    Distribution plus_row;  // p_n for n >= 1 (independent of the start)

    ConvergenceTrack t_pivot{"pivot", {}, std::nullopt, true, 0.0};
    ConvergenceTrack t_plus{"pivot+", {}, std::nullopt, true, 0.0};
    ConvergenceTrack t_blocks{"blocks", {}, std::nullopt, true, 0.0};
    std::vector<double> prev_pivot(starts.size(), 2.0), prev_blocks(starts.size(), 2.0);
    double prev_plus = 2.0;

    auto update = [&](ConvergenceTrack& track, double worst, std::size_t t) {
        track.distance.push_back(worst);
        if (!track.first_below && worst < tolerance) track.first_below = t;
    };
    auto check_monotone = [&](ConvergenceTrack& track, double prev, double cur) {
        const double inc = cur - prev;
        track.max_increase = std::max(track.max_increase, inc);
        if (inc > monotone_slack) track.monotone = false;
    };

    for (std::size_t t = 0;; ++t) {
        double worst = 0.0;
        for (std::size_t r = 0; r < starts.size(); ++r) {
            const double dist = l1_distance(pivot_rows[r], pi);
            if (t > 0) check_monotone(t_pivot, prev_pivot[r], dist);
            prev_pivot[r] = dist;
            worst = std::max(worst, dist);
        }
        update(t_pivot, worst, t);

        if (plus) {
            double dist;
            if (t == 0) dist = 2.0 * static_cast<double>(n - 1) / static_cast<double>(n);
            else dist = l1_distance(plus_row, pi);
            if (t > 0) check_monotone(t_plus, prev_plus, dist);
            prev_plus = dist;
            update(t_plus, dist, t);
            if (t_plus.first_below == t) {
                const double target = 1.0 / static_cast<double>(n);
                double dev = 0.0;
                for (double x : plus_row) dev = std::max(dev, std::abs(x - target));
                report.closed_form_deviation = dev;
            }

            double worst_block = 0.0;
            for (std::size_t r = 0; r < starts.size(); ++r) {
                const double bd = l1_distance(block_rows[r], rho[r]);
                if (t > 0) check_monotone(t_blocks, prev_blocks[r], bd);
                prev_blocks[r] = bd;
                worst_block = std::max(worst_block, bd);
            }
            update(t_blocks, worst_block, t);
        }

        report.steps_run = t;
        const bool done = t_pivot.first_below && (!plus || (t_plus.first_below && t_blocks.first_below));
        if (done) {
            report.reached = true;
            break;
        }
        if (t == horizon) break;

        for (auto& row : pivot_rows) row = propagate(row, pivot);
        if (plus) {
            plus_row = t == 0 ? propagate(point_mass(n, starts.front()), plus->p1) : propagate(plus_row, plus->p2);
            for (auto& row : block_rows) row = propagate(row, plus->p2);
        }
    }

    report.tracks.push_back(std::move(t_pivot));
    if (plus) {
        report.tracks.push_back(std::move(t_plus));
        report.tracks.push_back(std::move(t_blocks));
    }
    return report;
}

ConjectureScan conjecture_scan(const StateSpace& s, const TransitionMatrix& pivot, const PivotPlusMatrices& plus,
                               std::size_t horizon, std::optional<std::size_t> start_index) {
    const std::size_t n = s.size();
    if (pivot.size() != n || plus.p1.size() != n || plus.p2.size() != n)
        throw DimensionMismatch("matrix and state space differ in size");
    ConjectureScan scan;
    scan.horizon = horizon;
    scan.start_index = start_index.value_or(s.straight_index(Step(1, 1)));
    if (scan.start_index >= n) throw InvalidArgument("start index out of range");
    scan.start_walk = s.walk(scan.start_index).to_string();

    const Distribution pi = uniform_distribution(n);
    Distribution q = point_mass(n, scan.start_index);
    Distribution p = q;
    for (std::size_t t = 0; t <= horizon; ++t) {
        ConjectureRow row;
        row.n = t;
        row.l1_pivot = l1_distance(q, pi);
        row.l1_pivot_plus = l1_distance(p, pi);
        row.p_leads = row.l1_pivot_plus <= row.l1_pivot + kLeadFloor;
        scan.rows.push_back(row);
        if (t == horizon) break;
        q = propagate(q, pivot);
        p = propagate(p, t == 0 ? plus.p1 : plus.p2);
    }
    std::optional<std::size_t> n0;
    for (std::size_t t = scan.rows.size(); t-- > 1;) {
        if (!scan.rows[t].p_leads) break;
        n0 = t;
    }
    scan.n0 = n0;
    return scan;
}

MatrixSummary summarize(const TransitionMatrix& m) {
    MatrixSummary out;
    out.size = m.size();
    out.denominator = m.denominator();
    out.nnz = m.nnz();
    out.symmetric = m.is_count_symmetric();
    out.irreducible = is_irreducible(m);
    out.aperiodic = is_aperiodic(m);
    return out;
}

void write_matrix(std::ostream& out, const TransitionMatrix& m) {
    out << m.size() << ' ' << m.denominator() << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto cols = m.row_cols(i);
        auto cnt = m.row_counts(i);
        for (std::size_t e = 0; e < cols.size(); ++e) out << i << ' ' << cols[e] << ' ' << cnt[e] << '\n';
    }
}

TransitionMatrix read_matrix(std::istream& in) {
    std::size_t n = 0;
    std::uint64_t denom = 0;
    if (!(in >> n >> denom)) throw InvalidArgument("matrix dump: missing 'n D' header");
    std::vector<std::vector<TransitionMatrix::Entry>> rows(n);
    std::size_t i = 0, j = 0;
    std::uint64_t c = 0;
    while (in >> i >> j >> c) {
        if (i >= n || j >= n) throw InvalidArgument("matrix dump: index out of range");
        rows[i].push_back({static_cast<std::uint32_t>(j), c});
    }
    if (!in.eof()) throw InvalidArgument("matrix dump: malformed triple");
    return TransitionMatrix(n, denom, std::move(rows));
}

}  // namespace saw
