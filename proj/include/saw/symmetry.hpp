#ifndef SAW_SYMMETRY_HPP
#define SAW_SYMMETRY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "saw/lattice_walk.hpp"

namespace saw {

// An element of O_d, the lattice symmetries of Z^d, stored as a signed
// permutation of the axes:
//
//     T(x)_i = signs_i * x_{perm(i)}
//
// perm is 1-based. The image of every unit step is cached so that
// transforming a walk tail costs one table lookup per step.
class LatticeSymmetry {
public:
    LatticeSymmetry(std::vector<int> perm, std::vector<int> signs);
    static LatticeSymmetry identity(int d);

    int dimension() const { return static_cast<int>(perm_.size()); }
    const std::vector<int>& perm() const { return perm_; }
    const std::vector<int>& signs() const { return signs_; }
    bool is_identity() const;

    LatticePoint apply(const LatticePoint& x) const;
    void apply(std::span<const int> x, std::span<int> out) const;
    Step apply(Step s) const { return Step::from_code(step_map_[static_cast<std::size_t>(s.code(dimension()))], dimension()); }
    int apply_code(int code) const { return step_map_[static_cast<std::size_t>(code)]; }

    std::string to_string() const;

    friend bool operator==(const LatticeSymmetry& a, const LatticeSymmetry& b) {
        return a.perm_ == b.perm_ && a.signs_ == b.signs_;
    }
    // Lexicographic by (perm, signs) with +1 ordered before -1, so the
    // identity is the least element.
    friend bool operator<(const LatticeSymmetry& a, const LatticeSymmetry& b);

private:
    std::vector<int> perm_;
    std::vector<int> signs_;
    std::vector<std::uint8_t> step_map_;
};

// A(B(x)).
LatticeSymmetry compose(const LatticeSymmetry& a, const LatticeSymmetry& b);
LatticeSymmetry inverse(const LatticeSymmetry& t);

inline constexpr int kMaxGroupDimension = 6;

// All 2^d * d! signed permutations in ascending order (identity first).
std::vector<LatticeSymmetry> enumerate_group(int d);

// Process-wide cached copy of enumerate_group(d).
const std::vector<LatticeSymmetry>& symmetry_group(int d);

}  // namespace saw

#endif  // SAW_SYMMETRY_HPP
