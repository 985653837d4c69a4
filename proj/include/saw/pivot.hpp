#ifndef SAW_PIVOT_HPP
#define SAW_PIVOT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "saw/enumeration.hpp"
#include "saw/lattice_walk.hpp"
#include "saw/rng.hpp"
#include "saw/symmetry.hpp"

namespace saw {

enum class Variant { pivot, pivot_plus };

std::string to_string(Variant v);
Variant parse_variant(std::string_view text);  // "pivot" | "pivot+" | "pivot_plus"

// Keeps omega_0..omega_k and maps the tail about the pivot site:
// omega'_i = omega_k + T(omega_i - omega_k) for i > k. The result may
// self-intersect. Requires 0 <= k <= N-1.
Walk pivot_move(const Walk& w, std::size_t k, const LatticeSymmetry& t);

// Outcome of one Metropolis-free pivot attempt.
struct PivotAttempt {
    std::size_t pivot = 0;
    std::size_t symmetry = 0;  // index into symmetry_group(d)
    bool accepted = false;
};

// One chain kernel. Holds the group and a scratch occupancy set so that
// an attempt allocates nothing beyond the accepted walk.
//
// pivot:      k uniform on {0..N-1}, T uniform on O_d
// pivot_plus: k uniform on {1..N-1}, T uniform on O_d, plus the
//             uniform straight-walk initialisation (matrix P_1)
class PivotKernel {
public:
    PivotKernel(int d, int N, Variant variant);

    int dimension() const { return d_; }
    int length() const { return n_; }
    Variant variant() const { return variant_; }
    std::size_t min_pivot() const { return variant_ == Variant::pivot_plus ? 1 : 0; }
    std::size_t pivot_count() const { return static_cast<std::size_t>(n_) - min_pivot(); }
    const std::vector<LatticeSymmetry>& group() const { return *group_; }

    // Candidate check without building a Walk: true iff pivot_move(w, k, T)
    // is self-avoiding. When it is, `out_codes` receives its step codes.
    bool try_move(const Walk& w, std::size_t k, const LatticeSymmetry& t, std::vector<std::uint8_t>* out_codes);

    // One transition; w is replaced by the accepted candidate or kept.
    PivotAttempt step(Walk& w, RandomStream& rng);

    // Uniform element of B_N (pivot_plus only).
    Walk init(RandomStream& rng) const;

private:
    int d_;
    int n_;
    Variant variant_;
    const std::vector<LatticeSymmetry>* group_;
    PointSet scratch_;
    std::vector<int> point_;
    std::vector<std::uint8_t> codes_;
};

// Convenience forms using the cached group; each builds a kernel.
Walk pivot_step(const Walk& w, RandomStream& rng);
Walk pivot_plus_init(int d, int N, RandomStream& rng);
Walk pivot_plus_step(const Walk& w, RandomStream& rng);

struct ChainConfig {
    int d = 2;
    int n = 10;
    Variant variant = Variant::pivot;
    std::uint64_t seed = 0;
    // Step 0 walk. Defaults to the straight walk along +e_1.
    std::optional<Walk> initial;
    // Re-check self-avoidance of every visited state with is_self_avoiding.
    bool verify_states = false;
};

void validate(const ChainConfig& cfg);

// Receives every visited state, time 0 being the initial walk.
class ChainObserver {
public:
    virtual ~ChainObserver() = default;
    virtual void observe(std::size_t time, const Walk& w) = 0;
};

// Histogram over a StateSpace of the states seen at one fixed time
// (or at every time when `time` is nullopt).
class HistogramObserver : public ChainObserver {
public:
    HistogramObserver(const StateSpace& space, std::optional<std::size_t> time);
    void observe(std::size_t time, const Walk& w) override;
    void merge(const HistogramObserver& other);
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }
    std::uint64_t unknown() const { return unknown_; }

private:
    const StateSpace* space_;
    std::optional<std::size_t> time_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::uint64_t unknown_ = 0;
};

// Per-time accumulators of the squared end-to-end distance |omega_N|^2.
class EndToEndObserver : public ChainObserver {
public:
    explicit EndToEndObserver(std::size_t n_times);
    void observe(std::size_t time, const Walk& w) override;
    void merge(const EndToEndObserver& other);
    std::size_t times() const { return count_.size(); }
    std::uint64_t samples(std::size_t t) const { return count_[t]; }
    double mean(std::size_t t) const;
    double variance(std::size_t t) const;

private:
    std::vector<std::uint64_t> count_;
    std::vector<double> sum_;
    std::vector<double> sum_sq_;
};

struct TrajectorySummary {
    std::size_t transitions = 0;
    std::size_t accepted = 0;
    Walk final_walk;
    // For pivot_plus: class key of the state at time 1; for pivot: of time 0.
    std::optional<Step> class_key;
    bool class_constant = true;  // pivot_plus confinement held from time 1 on
    bool all_self_avoiding = true;
};

// Runs n_steps transitions from a stream selected by (cfg.seed, replica).
// pivot: n_steps pivot steps. pivot_plus: the straight-walk jump, then
// n_steps - 1 restricted pivot steps.
TrajectorySummary run_chain(const ChainConfig& cfg, std::size_t n_steps, std::span<ChainObserver* const> observers,
                            std::uint64_t replica = 0);

// Records every state of a single trajectory.
class TrajectoryRecorder : public ChainObserver {
public:
    void observe(std::size_t, const Walk& w) override { walks.push_back(w); }
    std::vector<Walk> walks;
};

}  // namespace saw

#endif  // SAW_PIVOT_HPP
