#include "saw/symmetry.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>

#include "saw/errors.hpp"

namespace saw {

LatticeSymmetry::LatticeSymmetry(std::vector<int> perm, std::vector<int> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
    const int d = static_cast<int>(perm_.size());
    if (d < 1) throw InvalidArgument("symmetry dimension must be >= 1");
    if (signs_.size() != perm_.size()) throw DimensionMismatch("perm and signs differ in length");
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    for (int p : perm_) {
        if (p < 1 || p > d || seen[static_cast<std::size_t>(p - 1)])
            throw InvalidArgument("perm is not a bijection of 1..d");
        seen[static_cast<std::size_t>(p - 1)] = true;
    }
    for (int s : signs_) {
        if (s != 1 && s != -1) throw InvalidArgument("signs must be +1 or -1");
    }
    // T(sigma e_a) = sigma * s_i e_i with perm(i) = a.
    step_map_.resize(static_cast<std::size_t>(2 * d));
    for (int i = 1; i <= d; ++i) {
        const int a = perm_[static_cast<std::size_t>(i - 1)];
        const int s = signs_[static_cast<std::size_t>(i - 1)];
        for (int sigma : {1, -1}) {
            step_map_[static_cast<std::size_t>(Step(a, sigma).code(d))] =
                static_cast<std::uint8_t>(Step(i, sigma * s).code(d));
        }
    }
}

LatticeSymmetry LatticeSymmetry::identity(int d) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 1);
    return LatticeSymmetry(std::move(perm), std::vector<int>(static_cast<std::size_t>(d), 1));
}

bool LatticeSymmetry::is_identity() const {
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        if (perm_[i] != static_cast<int>(i + 1) || signs_[i] != 1) return false;
    }
    return true;
}

void LatticeSymmetry::apply(std::span<const int> x, std::span<int> out) const {
    if (x.size() != perm_.size() || out.size() != perm_.size())
        throw DimensionMismatch("symmetry of dimension " + std::to_string(perm_.size()) +
                                " applied to a point of dimension " + std::to_string(x.size()));
    for (std::size_t i = 0; i < perm_.size(); ++i)
        out[i] = signs_[i] * x[static_cast<std::size_t>(perm_[i] - 1)];
}

LatticePoint LatticeSymmetry::apply(const LatticePoint& x) const {
    LatticePoint out(std::vector<int>(x.coords.size()));
    apply(x.coords, out.coords);
    return out;
}

std::string LatticeSymmetry::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        if (i) s += ',';
        s += (signs_[i] > 0 ? "+" : "-") + std::to_string(perm_[i]);
    }
    return s + "]";
}

bool operator<(const LatticeSymmetry& a, const LatticeSymmetry& b) {
    if (a.perm_ != b.perm_) return a.perm_ < b.perm_;
    // +1 sorts before -1
    for (std::size_t i = 0; i < a.signs_.size(); ++i) {
        if (a.signs_[i] != b.signs_[i]) return a.signs_[i] > b.signs_[i];
    }
    return false;
}

LatticeSymmetry compose(const LatticeSymmetry& a, const LatticeSymmetry& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch("compose: dimension mismatch");
    const auto d = static_cast<std::size_t>(a.dimension());
    std::vector<int> perm(d), signs(d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto j = static_cast<std::size_t>(a.perm()[i] - 1);
        perm[i] = b.perm()[j];
        signs[i] = a.signs()[i] * b.signs()[j];
    }
    return LatticeSymmetry(std::move(perm), std::move(signs));
}

LatticeSymmetry inverse(const LatticeSymmetry& t) {
    const auto d = static_cast<std::size_t>(t.dimension());
    std::vector<int> perm(d), signs(d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto j = static_cast<std::size_t>(t.perm()[i] - 1);
        perm[j] = static_cast<int>(i + 1);
        signs[j] = t.signs()[i];
    }
    return LatticeSymmetry(std::move(perm), std::move(signs));
}

std::vector<LatticeSymmetry> enumerate_group(int d) {
    if (d < 1) throw InvalidArgument("dimension must be >= 1");
    if (d > kMaxGroupDimension)
        throw CapacityError("symmetry group enumeration is limited to d <= " + std::to_string(kMaxGroupDimension));
    std::vector<LatticeSymmetry> out;
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        // Bit i set means axis i+1 is negated; the mask order below gives
        // lexicographic sign order with + before -.
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            std::vector<int> signs(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) signs[static_cast<std::size_t>(i)] = (mask >> (d - 1 - i)) & 1u ? -1 : 1;
            out.emplace_back(perm, std::move(signs));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

const std::vector<LatticeSymmetry>& symmetry_group(int d) {
    if (d < 1) throw InvalidArgument("dimension must be >= 1");
    if (d > kMaxGroupDimension)
        throw CapacityError("symmetry group enumeration is limited to d <= " + std::to_string(kMaxGroupDimension));
    static std::array<std::once_flag, kMaxGroupDimension + 1> flags;
    static std::array<std::vector<LatticeSymmetry>, kMaxGroupDimension + 1> groups;
    const auto idx = static_cast<std::size_t>(d);
    std::call_once(flags[idx], [&] { groups[idx] = enumerate_group(d); });
    return groups[idx];
}

}  // namespace saw
