#ifndef SAW_ENUMERATION_HPP
#define SAW_ENUMERATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "saw/lattice_walk.hpp"
#include "saw/rng.hpp"

namespace saw {

struct EnumerationOptions {
    std::size_t max_walks = 1'000'000;
};

// Contiguous block of one first-step class K_(0, key) inside a StateSpace.
struct ClassBlock {
    Step key;
    std::size_t offset = 0;
    std::size_t size = 0;
};

// Omega_N in canonical order. Walks are sorted lexicographically by step
// sequence under the E_d order (+1 < ... < +d < -1 < ... < -d); since the
// first step decides the class, this groups the 2d classes contiguously in
// the order e_1, ..., e_d, -e_1, ..., -e_d.
class StateSpace {
public:
    int dimension() const { return d_; }
    int length() const { return n_; }
    std::size_t size() const { return count_; }

    Walk walk(std::size_t i) const;
    std::vector<Walk> walks() const;
    // Step codes of walk i (see Step::code).
    std::span<const std::uint8_t> codes(std::size_t i) const {
        return {codes_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
    }

    std::optional<std::size_t> index_of(const Walk& w) const;
    std::optional<std::size_t> index_of_codes(std::span<const std::uint8_t> codes) const;

    std::span<const ClassBlock> classes() const { return classes_; }
    const ClassBlock& class_block(Step key) const;
    std::size_t class_index_of(std::size_t state) const;
    std::size_t straight_index(Step key) const;
    std::vector<std::size_t> straight_indices() const;

private:
    friend StateSpace enumerate(int d, int N, const EnumerationOptions& options);

    int d_ = 1;
    int n_ = 1;
    std::size_t count_ = 0;
    std::vector<std::uint8_t> codes_;
    std::vector<ClassBlock> classes_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Depth-first backtracking over Omega_N with an incremental occupancy set.
// Throws CapacityError once more than options.max_walks walks exist.
StateSpace enumerate(int d, int N, const EnumerationOptions& options = {});

struct WalkCounts {
    std::uint64_t c_n = 0;
    std::uint64_t a_n = 0;
    std::vector<std::uint64_t> class_sizes;
};

WalkCounts counts(const StateSpace& s);

// True iff all 2d class sizes are equal and sum to c_N.
bool verify_partition_identity(const StateSpace& s);

// Indices of the walks extending `prefix` (an M-step walk, M <= N), in
// canonical order. Empty when the prefix has no extension.
std::vector<std::size_t> prefix_class(const StateSpace& s, const Walk& prefix);

// Exact uniform sampler over Omega_N: a uniform first-step class, then a
// uniform member of that class.
std::size_t reference_sample_index(const StateSpace& s, RandomStream& rng);
Walk reference_sample(const StateSpace& s, RandomStream& rng);

}  // namespace saw

#endif  // SAW_ENUMERATION_HPP
