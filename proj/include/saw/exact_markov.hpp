#ifndef SAW_EXACT_MARKOV_HPP
#define SAW_EXACT_MARKOV_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "saw/enumeration.hpp"
#include "saw/rational.hpp"

namespace saw {

// Sparse row-stochastic matrix with integer counts over one common
// denominator: P_ij = count(i, j) / D. Rows are stored CSR-style with
// strictly increasing column indices and positive counts.
class TransitionMatrix {
public:
    struct Entry {
        std::uint32_t col;
        std::uint64_t count;
    };

    TransitionMatrix() = default;
    // `rows[i]` may contain repeated or unsorted columns; they are merged.
    TransitionMatrix(std::size_t n, std::uint64_t denominator, std::vector<std::vector<Entry>> rows);

    std::size_t size() const { return n_; }
    std::uint64_t denominator() const { return denominator_; }
    std::size_t nnz() const { return cols_.size(); }

    std::span<const std::uint32_t> row_cols(std::size_t i) const {
        return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const std::uint64_t> row_counts(std::size_t i) const {
        return {counts_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }

    std::uint64_t count(std::size_t i, std::size_t j) const;
    double probability(std::size_t i, std::size_t j) const {
        return static_cast<double>(count(i, j)) / static_cast<double>(denominator_);
    }
    Rational exact(std::size_t i, std::size_t j) const;
    std::uint64_t row_sum(std::size_t i) const;

    bool rows_sum_to_denominator() const;
    bool is_count_symmetric() const;

    // Square submatrix on `indices` (in the given order); keeps D, so the
    // result is substochastic in general.
    TransitionMatrix restrict_to(std::span<const std::size_t> indices) const;

    friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::uint64_t denominator_ = 1;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> cols_;
    std::vector<std::uint64_t> counts_;
};

// Pivot chain matrix: for every state and each of the N*|O_d| (k, T)
// pairs, one count goes to the accepted candidate (or to the state itself
// on rejection). D = N*|O_d|.
TransitionMatrix build_pivot_matrix(const StateSpace& s);

struct PivotPlusMatrices {
    TransitionMatrix p1;  // uniform jump onto B_N, D = 2d
    TransitionMatrix p2;  // block diagonal over first-step classes, D = (N-1)*|O_d|
};

PivotPlusMatrices build_pivot_plus_matrices(const StateSpace& s);

// The diagonal block of `m` on the first-step class `key`.
TransitionMatrix class_block(const TransitionMatrix& m, const StateSpace& s, Step key);

// True iff every entry of `m` outside the class-diagonal blocks is zero.
bool is_class_block_diagonal(const TransitionMatrix& m, const StateSpace& s);

using Distribution = std::vector<double>;
using RationalDistribution = std::vector<Rational>;

inline constexpr std::size_t kMaxExactStates = 5000;

Distribution uniform_distribution(std::size_t n);
Distribution point_mass(std::size_t n, std::size_t at);

// q -> q M.
Distribution propagate(std::span<const double> q, const TransitionMatrix& m);
// Exact q -> q M; refuses matrices above kMaxExactStates.
RationalDistribution propagate_exact(std::span<const Rational> q, const TransitionMatrix& m);

// [q_0, ..., q_horizon]; step t uses schedule[min(t, schedule.size()-1)],
// so {&P} is the homogeneous pivot chain and {&P1, &P2} the pivot+ chain.
std::vector<Distribution> evolve(std::span<const double> q0, std::span<const TransitionMatrix* const> schedule,
                                 std::size_t horizon);

double l1_distance(std::span<const double> p, std::span<const double> q);

// Exact check that the uniform distribution on the matrix index set is
// stationary (pi M = pi) in rational arithmetic.
bool uniform_is_stationary_exact(const TransitionMatrix& m);

// Support digraph tests. Irreducible iff strongly connected. Aperiodic iff
// every strongly connected component that carries a cycle has period 1.
bool is_irreducible(const TransitionMatrix& m);
bool is_aperiodic(const TransitionMatrix& m);
// Period of an irreducible matrix (gcd of cycle lengths).
std::size_t period(const TransitionMatrix& m);

// Smallest M in [m0, N] such that the pivot matrix restricted to
// K_(tau_0..tau_M) is irreducible.
std::size_t minimal_irreducible_prefix(const StateSpace& s, const TransitionMatrix& pivot, const Walk& tau,
                                       std::size_t m0);

struct ConvergenceTrack {
    std::string name;
    std::vector<double> distance;  // worst start, indexed by n
    std::optional<std::size_t> first_below;
    bool monotone = true;
    double max_increase = 0.0;
};

struct LimitAuditReport {
    double tolerance = 1e-6;
    std::size_t horizon = 0;
    std::size_t steps_run = 0;
    std::size_t starts = 0;
    bool reached = false;
    std::vector<ConvergenceTrack> tracks;
    // max |p_n(alpha) - 1/(2d a_N)| at the first n the pivot+ track is
    // within tolerance.
    std::optional<double> closed_form_deviation;
};

// Evolves point masses (every state when c_N <= max_starts, otherwise the
// straight walk of each class) under P (track "pivot", target pi), under
// P1 P2^(n-1) (track "pivot+", target pi) and under P2 (track "blocks",
// target the uniform law rho of the start's class). Stops once all tracks
// are below `tolerance` or at `horizon`.
LimitAuditReport limit_audit(const StateSpace& s, const TransitionMatrix& pivot, const PivotPlusMatrices* plus,
                             std::size_t horizon, double tolerance = 1e-6, double monotone_slack = 1e-12,
                             std::size_t max_starts = 128);

// Distances this close are treated as ties when comparing the two chains.
inline constexpr double kLeadFloor = 1e-12;

struct ConjectureRow {
    std::size_t n = 0;
    double l1_pivot = 0.0;
    double l1_pivot_plus = 0.0;
    bool p_leads = false;  // ||p_n - pi||_1 <= ||q_n - pi||_1 + kLeadFloor
};

struct ConjectureScan {
    std::vector<ConjectureRow> rows;
    std::optional<std::size_t> n0;  // smallest n0 >= 1 with p_leads on [n0, horizon]
    std::size_t start_index = 0;
    std::string start_walk;
    std::size_t horizon = 0;
};

// q_n = q_0 P^n and p_n = p_0 P1 P2^(n-1) from the same point mass.
// Defaults to the straight walk along +e_1.
ConjectureScan conjecture_scan(const StateSpace& s, const TransitionMatrix& pivot, const PivotPlusMatrices& plus,
                               std::size_t horizon, std::optional<std::size_t> start_index = std::nullopt);

struct MatrixSummary {
    std::size_t size = 0;
    std::uint64_t denominator = 1;
    std::size_t nnz = 0;
    bool symmetric = false;
    bool irreducible = false;
    bool aperiodic = false;
};

MatrixSummary summarize(const TransitionMatrix& m);

// Text dump: "n D" then "row col count" triples sorted by (row, col).
void write_matrix(std::ostream& out, const TransitionMatrix& m);
TransitionMatrix read_matrix(std::istream& in);

}  // namespace saw

#endif  // SAW_EXACT_MARKOV_HPP
