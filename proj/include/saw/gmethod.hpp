#ifndef SAW_GMETHOD_HPP
#define SAW_GMETHOD_HPP

// Structured-matrix calculus on partitioned index sets: [Delta]-stability
// on Sigma, block reduction P^{-+}, similarity, the ergodicity
// coefficients alpha-bar / gamma-bar, and executable checks of the
// product properties built on them.
//
// Every algorithm is a template over the scalar type. With Rational all
// comparisons are exact and the tolerance argument is ignored; with double
// two values a, b agree when |a - b| <= max(tol * scale, kAbsoluteFloor).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "saw/errors.hpp"
#include "saw/matrix.hpp"
#include "saw/rational.hpp"
#include "saw/rng.hpp"

namespace saw::gmethod {

inline constexpr double kAbsoluteFloor = 1e-12;
inline constexpr double kDefaultTolerance = 1e-12;

// Partition of {0, ..., m-1} into nonempty disjoint blocks. Equality is
// equality of block sets; block order is irrelevant.
class Partition {
public:
    Partition(std::size_t ground_size, std::vector<std::vector<std::size_t>> blocks);
    static Partition improper(std::size_t m);
    static Partition singletons(std::size_t m);
    static Partition from_labels(std::span<const std::size_t> labels);

    std::size_t ground_size() const { return labels_.size(); }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::size_t>& block(std::size_t k) const { return blocks_[k]; }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    std::size_t block_of(std::size_t i) const { return labels_[i]; }
    bool is_improper() const { return blocks_.size() == 1; }
    bool is_singletons() const { return blocks_.size() == labels_.size(); }

    std::string to_string() const;  // 1-based, e.g. "({1,2},{3,4})"

    friend bool operator==(const Partition& a, const Partition& b) { return a.canonical_ == b.canonical_; }

private:
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> labels_;
    std::vector<std::vector<std::size_t>> canonical_;
};

// "{1,2,5}" (1-based).
std::string block_to_string(const std::vector<std::size_t>& block);

// Delta1 is finer than Delta2: every block of Delta1 lies inside a block of Delta2.
bool is_finer(const Partition& finer, const Partition& coarser);

// All partitions of {0..m-1} (Bell(m) of them); m <= 10.
std::vector<Partition> all_partitions(std::size_t m);

namespace detail {

template <class T>
T magnitude(const T& x) {
    if constexpr (std::is_floating_point_v<T>) return std::abs(x);
    else return x < 0 ? T(-x) : x;
}

template <class T>
bool agree(const T& a, const T& b, double tol, const T& scale) {
    if constexpr (std::is_floating_point_v<T>) return std::abs(a - b) <= std::max(tol * std::abs(scale), kAbsoluteFloor);
    else return a == b;
}

template <class T>
bool agree(const T& a, const T& b, double tol) {
    const T one(1);
    return agree(a, b, tol, std::max({one, magnitude(a), magnitude(b)}));
}

template <class T>
double as_double(const T& x) {
    if constexpr (std::is_floating_point_v<T>) return x;
    else return x.template convert_to<double>();
}

template <class T>
void check_shape(const Matrix<T>& p, const Partition& delta, const Partition& sigma) {
    if (delta.ground_size() != p.rows())
        throw DimensionMismatch("row partition covers " + std::to_string(delta.ground_size()) + " indices, matrix has " +
                                std::to_string(p.rows()) + " rows");
    if (sigma.ground_size() != p.cols())
        throw DimensionMismatch("column partition covers " + std::to_string(sigma.ground_size()) +
                                " indices, matrix has " + std::to_string(p.cols()) + " columns");
}

template <class T>
T row_total(const Matrix<T>& p, std::size_t i) {
    T s(0);
    for (const T& x : p.row(i)) s += x;
    return s;
}

template <class T>
T block_sum(const Matrix<T>& p, std::size_t i, const std::vector<std::size_t>& cols) {
    T s(0);
    for (std::size_t j : cols) s += p(i, j);
    return s;
}

// First (K, L) block pair whose rows have unequal sums, if any.
template <class T>
std::optional<std::pair<std::size_t, std::size_t>> first_unstable_block(const Matrix<T>& p, const Partition& delta,
                                                                        const Partition& sigma, double tol) {
    for (std::size_t k = 0; k < delta.block_count(); ++k) {
        const auto& rows = delta.block(k);
        T scale(0);
        for (std::size_t i : rows) scale = std::max(scale, row_total(p, i));
        for (std::size_t l = 0; l < sigma.block_count(); ++l) {
            const T ref = block_sum(p, rows.front(), sigma.block(l));
            for (std::size_t r = 1; r < rows.size(); ++r) {
                if (!agree(block_sum(p, rows[r], sigma.block(l)), ref, tol, scale)) return std::make_pair(k, l);
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

template <class T>
bool is_nonnegative(const Matrix<T>& p) {
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (const T& x : p.row(i))
            if (x < 0) return false;
    return true;
}

template <class T>
bool is_stochastic(const Matrix<T>& p, double tol = kDefaultTolerance) {
    if (!is_nonnegative(p)) return false;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (!detail::agree(detail::row_total(p, i), T(1), tol)) return false;
    }
    return true;
}

// Stable matrix: all rows identical.
template <class T>
bool is_stable_matrix(const Matrix<T>& p, double tol = kDefaultTolerance) {
    for (std::size_t i = 1; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (!detail::agree(p(i, j), p(0, j), tol)) return false;
    return true;
}

// Every P_K^L is a nonnegative multiple of a stochastic matrix, i.e. the
// rows of P_K^L have equal sums.
template <class T>
bool is_stable_on(const Matrix<T>& p, const Partition& delta, const Partition& sigma, double tol = kDefaultTolerance) {
    detail::check_shape(p, delta, sigma);
    if (!is_nonnegative(p)) return false;
    return !detail::first_unstable_block(p, delta, sigma, tol).has_value();
}

// Membership in G_{Delta,Sigma} (stochastic) and its nonnegative
// counterpart G-bar_{Delta,Sigma}.
template <class T>
bool in_g(const Matrix<T>& p, const Partition& delta, const Partition& sigma, double tol = kDefaultTolerance) {
    return is_stochastic(p, tol) && is_stable_on(p, delta, sigma, tol);
}

template <class T>
bool in_g_bar(const Matrix<T>& p, const Partition& delta, const Partition& sigma, double tol = kDefaultTolerance) {
    return is_stable_on(p, delta, sigma, tol);
}

// Coarsest Delta with P [Delta]-stable on Sigma: rows are grouped by their
// vector of Sigma-block sums. With doubles, a row joins the first group
// whose representative agrees within tol.
template <class T>
Partition least_fine_stable_partition(const Matrix<T>& p, const Partition& sigma, double tol = kDefaultTolerance) {
    if (sigma.ground_size() != p.cols()) throw DimensionMismatch("column partition does not match matrix");
    std::vector<std::vector<T>> reps;
    std::vector<T> rep_scale;
    std::vector<std::size_t> labels(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        std::vector<T> sig;
        for (std::size_t l = 0; l < sigma.block_count(); ++l) sig.push_back(detail::block_sum(p, i, sigma.block(l)));
        const T total = detail::row_total(p, i);
        std::size_t g = 0;
        for (; g < reps.size(); ++g) {
            const T scale = std::max(total, rep_scale[g]);
            bool same = true;
            for (std::size_t l = 0; l < sig.size() && same; ++l) same = detail::agree(sig[l], reps[g][l], tol, scale);
            if (same) break;
        }
        if (g == reps.size()) {
            reps.push_back(std::move(sig));
            rep_scale.push_back(total);
        }
        labels[i] = g;
    }
    return Partition::from_labels(labels);
}

// P^{-+}: entry (K, L) is the common row sum of P_K^L.
template <class T>
struct BlockMatrix {
    Partition rows;
    Partition cols;
    Matrix<T> values;
};

template <class T>
BlockMatrix<T> reduce(const Matrix<T>& p, const Partition& delta, const Partition& sigma,
                      double tol = kDefaultTolerance) {
    detail::check_shape(p, delta, sigma);
    if (!is_nonnegative(p)) throw PreconditionError("reduce: matrix has negative entries");
    if (auto bad = detail::first_unstable_block(p, delta, sigma, tol)) {
        throw PreconditionError("reduce: block (K" + std::to_string(bad->first + 1) + ", L" +
                                std::to_string(bad->second + 1) + ") = rows " + block_to_string(delta.block(bad->first)) +
                                " x cols " + block_to_string(sigma.block(bad->second)) + " has unequal row sums");
    }
    Matrix<T> values(delta.block_count(), sigma.block_count());
    for (std::size_t k = 0; k < delta.block_count(); ++k)
        for (std::size_t l = 0; l < sigma.block_count(); ++l)
            values(k, l) = detail::block_sum(p, delta.block(k).front(), sigma.block(l));
    return {delta, sigma, std::move(values)};
}

template <class T>
bool matrices_agree(const Matrix<T>& a, const Matrix<T>& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!detail::agree(a(i, j), b(i, j), tol)) return false;
    return true;
}

// P ~ Q with respect to (Delta, Sigma): equal reductions.
template <class T>
bool similar(const Matrix<T>& p, const Matrix<T>& q, const Partition& delta, const Partition& sigma,
             double tol = kDefaultTolerance) {
    return matrices_agree(reduce(p, delta, sigma, tol).values, reduce(q, delta, sigma, tol).values, tol);
}

// alpha-bar(P) = 1/2 max_{i,j} sum_k |P_ik - P_jk|.
template <class T>
T alpha_bar(const Matrix<T>& p) {
    T best(0);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = i + 1; j < p.rows(); ++j) {
            T s(0);
            for (std::size_t k = 0; k < p.cols(); ++k) s += detail::magnitude(T(p(i, k) - p(j, k)));
            best = std::max(best, s);
        }
    return best / T(2);
}

// gamma-bar_Delta(P) = max over K in Delta of alpha-bar(P_K).
template <class T>
T gamma_bar(const Matrix<T>& p, const Partition& delta) {
    if (delta.ground_size() != p.rows()) throw DimensionMismatch("row partition does not match matrix");
    T best(0);
    for (const auto& block : delta.blocks()) best = std::max(best, alpha_bar(p.rows_subset(block)));
    return best;
}

// Product property checks

enum class Verdict { pass, fail, inapplicable };
std::string to_string(Verdict v);

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::inapplicable;
    double deviation = 0.0;  // how far the conclusion is from failing/holding
    std::string detail;
};

// Matrices P_1..P_n with partitions Delta_1..Delta_{n+1}; Delta_i
// partitions the rows of P_i and Delta_{i+1} its columns.
template <class T>
struct ChainInstance {
    std::vector<Matrix<T>> matrices;
    std::vector<Partition> partitions;
};

namespace detail {

template <class T>
std::optional<std::string> shape_problem(const ChainInstance<T>& c, bool need_last_partition) {
    const std::size_t n = c.matrices.size();
    if (n == 0) return "empty chain";
    if (c.partitions.size() < n + (need_last_partition ? 1 : 0)) return "too few partitions";
    for (std::size_t i = 0; i < n; ++i) {
        if (c.partitions[i].ground_size() != c.matrices[i].rows())
            return "partition " + std::to_string(i + 1) + " does not match matrix rows";
        if (i + 1 < n && c.matrices[i].cols() != c.matrices[i + 1].rows())
            return "matrices " + std::to_string(i + 1) + " and " + std::to_string(i + 2) + " are not conformable";
        if (i + 1 < c.partitions.size() && c.partitions[i + 1].ground_size() != c.matrices[i].cols())
            return "partition " + std::to_string(i + 2) + " does not match matrix columns";
    }
    return std::nullopt;
}

}  // namespace detail

// gamma_{Delta_1}(P_1...P_n) <= prod_i gamma_{Delta_i}(P_i), for
// P_i in G_{Delta_i,Delta_{i+1}} (i < n) and P_n stochastic.
template <class T>
CheckResult check_ergodicity_product_bound(const ChainInstance<T>& c, double tol) {
    CheckResult r{"ergodicity_product_bound", Verdict::inapplicable, 0.0, ""};
    if (auto why = detail::shape_problem(c, false)) {
        r.detail = *why;
        return r;
    }
    const std::size_t n = c.matrices.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_stochastic(c.matrices[i], tol)) {
            r.detail = "matrix " + std::to_string(i + 1) + " is not stochastic";
            return r;
        }
        if (i + 1 < n && !is_stable_on(c.matrices[i], c.partitions[i], c.partitions[i + 1], tol)) {
            r.detail = "matrix " + std::to_string(i + 1) + " is not stable on the next partition";
            return r;
        }
    }
    const Matrix<T> prod = product<T>(c.matrices);
    const T lhs = gamma_bar(prod, c.partitions[0]);
    T rhs(1);
    for (std::size_t i = 0; i < n; ++i) rhs *= gamma_bar(c.matrices[i], c.partitions[i]);
    r.deviation = detail::as_double(T(lhs - rhs));
    const bool ok = std::is_floating_point_v<T> ? r.deviation <= tol : lhs <= rhs;
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    r.detail = "lhs=" + std::to_string(detail::as_double(lhs)) + " rhs=" + std::to_string(detail::as_double(rhs));
    return r;
}

// With Delta_1 improper and Delta_{n+1} singletons, P_1...P_n is stable
// and each of its rows equals P_1^{-+} ... P_n^{-+}.
template <class T>
CheckResult check_stable_product_factorization(const ChainInstance<T>& c, double tol) {
    CheckResult r{"stable_product_factorization", Verdict::inapplicable, 0.0, ""};
    if (auto why = detail::shape_problem(c, true)) {
        r.detail = *why;
        return r;
    }
    const std::size_t n = c.matrices.size();
    if (!c.partitions.front().is_improper()) {
        r.detail = "first partition is not improper";
        return r;
    }
    if (!c.partitions[n].is_singletons()) {
        r.detail = "last partition is not the singleton partition";
        return r;
    }
    std::vector<Matrix<T>> reductions;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_g_bar(c.matrices[i], c.partitions[i], c.partitions[i + 1], tol)) {
            r.detail = "matrix " + std::to_string(i + 1) + " is not stable on the next partition";
            return r;
        }
        reductions.push_back(reduce(c.matrices[i], c.partitions[i], c.partitions[i + 1], tol).values);
    }
    const Matrix<T> prod = product<T>(c.matrices);
    const Matrix<T> reduced = product<T>(reductions);  // 1 x m_{n+1}
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j) {
            worst = std::max(worst, std::abs(detail::as_double(T(prod(i, j) - reduced(0, j)))));
            if (!detail::agree(prod(i, j), reduced(0, j), tol)) ok = false;
        }
    const bool stable = is_stable_matrix(prod, tol);
    r.deviation = worst;
    r.verdict = ok && stable ? Verdict::pass : Verdict::fail;
    r.detail = std::string(stable ? "product stable" : "product not stable") +
               ", max |row - reduced product| = " + std::to_string(worst);
    return r;
}

// P_i ~ U_i for all i implies P_1...P_n ~ U_1...U_n; with Delta_1 improper
// and Delta_{n+1} singletons the two products coincide.
template <class T>
CheckResult check_representative_independence(const ChainInstance<T>& p, const ChainInstance<T>& u, double tol) {
    CheckResult r{"representative_independence", Verdict::inapplicable, 0.0, ""};
    if (auto why = detail::shape_problem(p, true)) {
        r.detail = *why;
        return r;
    }
    const std::size_t n = p.matrices.size();
    if (u.matrices.size() != n || u.partitions.size() < n + 1) {
        r.detail = "chains differ in length";
        return r;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        if (!(p.partitions[i] == u.partitions[i])) {
            r.detail = "chains use different partitions";
            return r;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& d0 = p.partitions[i];
        const auto& d1 = p.partitions[i + 1];
        if (u.matrices[i].rows() != p.matrices[i].rows() || u.matrices[i].cols() != p.matrices[i].cols() ||
            !in_g_bar(p.matrices[i], d0, d1, tol) || !in_g_bar(u.matrices[i], d0, d1, tol)) {
            r.detail = "matrix pair " + std::to_string(i + 1) + " is not in the required G-bar set";
            return r;
        }
        if (!similar(p.matrices[i], u.matrices[i], d0, d1, tol)) {
            r.detail = "matrix pair " + std::to_string(i + 1) + " is not similar";
            return r;
        }
    }
    const Matrix<T> pp = product<T>(p.matrices);
    const Matrix<T> uu = product<T>(u.matrices);
    const Partition& first = p.partitions.front();
    const Partition& last = p.partitions[n];
    if (!is_stable_on(pp, first, last, tol) || !is_stable_on(uu, first, last, tol)) {
        r.verdict = Verdict::fail;
        r.detail = "a product is not stable on the outer partitions";
        return r;
    }
    const Matrix<T> rp = reduce(pp, first, last, tol).values;
    const Matrix<T> ru = reduce(uu, first, last, tol).values;
    double worst = 0.0;
    for (std::size_t i = 0; i < rp.rows(); ++i)
        for (std::size_t j = 0; j < rp.cols(); ++j)
            worst = std::max(worst, std::abs(detail::as_double(T(rp(i, j) - ru(i, j)))));
    bool ok = matrices_agree(rp, ru, tol);
    std::string detail = "products similar";
    if (first.is_improper() && last.is_singletons()) {
        for (std::size_t i = 0; i < pp.rows(); ++i)
            for (std::size_t j = 0; j < pp.cols(); ++j)
                worst = std::max(worst, std::abs(detail::as_double(T(pp(i, j) - uu(i, j)))));
        ok = ok && matrices_agree(pp, uu, tol);
        detail = "products equal";
    }
    r.deviation = worst;
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    r.detail = (ok ? detail : "mismatch") + std::string(", max deviation = ") + std::to_string(worst);
    return r;
}

struct PropertyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.verdict == Verdict::fail; });
    }
};

// Runs every check whose hypotheses the instance satisfies; checks whose
// hypotheses fail are recorded as inapplicable.
template <class T>
PropertyReport theorem_property_suite(const ChainInstance<T>& chain, const ChainInstance<T>* similar_chain,
                                      double tol) {
    PropertyReport rep;
    rep.checks.push_back(check_ergodicity_product_bound(chain, tol));
    rep.checks.push_back(check_stable_product_factorization(chain, tol));
    if (similar_chain) rep.checks.push_back(check_representative_independence(chain, *similar_chain, tol));
    return rep;
}

// Random instances satisfying the check hypotheses (double precision).

double uniform01(RandomStream& rng);

// Shuffles the ground set, then cuts it into consecutive blocks, starting
// a new block at each position with probability `split_probability`.
Partition random_partition(std::size_t m, RandomStream& rng, double split_probability = 0.5);

// A matrix that is [Delta]-stable on Sigma by construction: for each
// K in Delta a block-mass vector a_{K,.} is drawn (normalised to 1 when
// `stochastic`), then every row of K spreads a_{K,L} over the columns of L
// with fresh random weights. Some masses and weights are zero.
Matrix<double> random_stable_matrix(const Partition& delta, const Partition& sigma, RandomStream& rng,
                                    bool stochastic);

// Fresh matrix with the same reduction as p (p must be stable).
Matrix<double> random_similar(const Matrix<double>& p, const Partition& delta, const Partition& sigma,
                              RandomStream& rng);

struct ChainOptions {
    std::size_t length = 3;
    std::size_t max_size = 6;
    bool stochastic = true;
    bool improper_first = true;
    bool singleton_last = true;
    // Replace the last matrix by an unconstrained stochastic matrix.
    bool free_last = false;
};

ChainInstance<double> random_chain(RandomStream& rng, const ChainOptions& options);
ChainInstance<double> random_similar_chain(const ChainInstance<double>& c, RandomStream& rng);

}  // namespace saw::gmethod

#endif  // SAW_GMETHOD_HPP
