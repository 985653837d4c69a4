#include "saw/enumeration.hpp"

#include <algorithm>

#include "saw/errors.hpp"

namespace saw {

namespace {

std::string key_of(std::span<const std::uint8_t> codes) {
    return std::string(reinterpret_cast<const char*>(codes.data()), codes.size());
}

std::vector<std::uint8_t> codes_of(const Walk& w) {
    std::vector<std::uint8_t> c;
    c.reserve(w.length());
    for (Step s : w.steps()) c.push_back(static_cast<std::uint8_t>(s.code(w.dimension())));
    return c;
}

}  // namespace

Walk StateSpace::walk(std::size_t i) const {
    if (i >= count_) throw InvalidArgument("state index out of range");
    std::vector<Step> steps;
    steps.reserve(static_cast<std::size_t>(n_));
    for (std::uint8_t c : codes(i)) steps.push_back(Step::from_code(c, d_));
    return Walk(d_, std::move(steps));
}

std::vector<Walk> StateSpace::walks() const {
    std::vector<Walk> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(walk(i));
    return out;
}

std::optional<std::size_t> StateSpace::index_of_codes(std::span<const std::uint8_t> codes) const {
    if (codes.size() != static_cast<std::size_t>(n_)) return std::nullopt;
    auto it = index_.find(key_of(codes));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> StateSpace::index_of(const Walk& w) const {
    if (w.dimension() != d_ || w.length() != static_cast<std::size_t>(n_)) return std::nullopt;
    return index_of_codes(codes_of(w));
}

const ClassBlock& StateSpace::class_block(Step key) const {
    if (key.axis() > d_) throw DimensionMismatch("class key exceeds dimension");
    return classes_[static_cast<std::size_t>(key.code(d_))];
}

std::size_t StateSpace::class_index_of(std::size_t state) const {
    if (state >= count_) throw InvalidArgument("state index out of range");
    return codes(state)[0];
}

std::size_t StateSpace::straight_index(Step key) const {
    const std::vector<std::uint8_t> c(static_cast<std::size_t>(n_), static_cast<std::uint8_t>(key.code(d_)));
    return *index_of_codes(c);
}

std::vector<std::size_t> StateSpace::straight_indices() const {
    std::vector<std::size_t> out;
    for (const ClassBlock& b : classes_) out.push_back(straight_index(b.key));
    return out;
}

StateSpace enumerate(int d, int N, const EnumerationOptions& options) {
    if (d < 1) throw InvalidArgument("dimension must be >= 1");
    if (N < 1) throw InvalidArgument("walk length must be >= 1");
    if (2 * d > 255) throw CapacityError("dimension too large for step codes");

    StateSpace s;
    s.d_ = d;
    s.n_ = N;
    const auto du = static_cast<std::size_t>(d);
    const auto nu = static_cast<std::size_t>(N);

    PointSet occupied(d, nu + 1);
    std::vector<int> points((nu + 1) * du, 0);  // points[i*d ..] = omega_i
    std::vector<std::uint8_t> path(nu, 0);
    std::vector<int> next_code(nu + 1, 0);      // next code to try at each depth
    occupied.insert(std::span<const int>(points.data(), du));

    std::size_t depth = 0;
    while (true) {
        if (depth == nu) {
            if (s.count_ == options.max_walks)
                throw CapacityError("enumeration exceeds the cap of " + std::to_string(options.max_walks) +
                                    " walks (d=" + std::to_string(d) + ", N=" + std::to_string(N) + ")");
            s.codes_.insert(s.codes_.end(), path.begin(), path.end());
            ++s.count_;
            // backtrack from a leaf
            occupied.erase(std::span<const int>(points.data() + depth * du, du));
            --depth;
            continue;
        }
        if (next_code[depth] == 2 * d) {
            if (depth == 0) break;
            next_code[depth] = 0;
            occupied.erase(std::span<const int>(points.data() + depth * du, du));
            --depth;
            continue;
        }
        const int code = next_code[depth]++;
        const Step step = Step::from_code(code, d);
        int* dst = points.data() + (depth + 1) * du;
        std::copy_n(points.data() + depth * du, du, dst);
        dst[step.axis() - 1] += step.sign();
        if (!occupied.insert(std::span<const int>(dst, du))) continue;
        path[depth] = static_cast<std::uint8_t>(code);
        ++depth;
    }

    s.classes_.resize(2 * du);
    for (int c = 0; c < 2 * d; ++c) s.classes_[static_cast<std::size_t>(c)].key = Step::from_code(c, d);
    s.index_.reserve(s.count_);
    for (std::size_t i = 0; i < s.count_; ++i) {
        auto codes = s.codes(i);
        s.index_.emplace(key_of(codes), static_cast<std::uint32_t>(i));
        ClassBlock& b = s.classes_[codes[0]];
        if (b.size == 0) b.offset = i;
        ++b.size;
    }
    return s;
}

WalkCounts counts(const StateSpace& s) {
    WalkCounts c;
    c.c_n = s.size();
    for (const ClassBlock& b : s.classes()) c.class_sizes.push_back(b.size);
    c.a_n = c.class_sizes.front();
    return c;
}

bool verify_partition_identity(const StateSpace& s) {
    const WalkCounts c = counts(s);
    std::uint64_t total = 0;
    for (std::uint64_t k : c.class_sizes) {
        if (k != c.a_n) return false;
        total += k;
    }
    return total == c.c_n && c.c_n == 2 * static_cast<std::uint64_t>(s.dimension()) * c.a_n;
}

std::vector<std::size_t> prefix_class(const StateSpace& s, const Walk& prefix) {
    if (prefix.dimension() != s.dimension()) throw DimensionMismatch("prefix dimension mismatch");
    if (prefix.length() > static_cast<std::size_t>(s.length()))
        throw InvalidArgument("prefix length " + std::to_string(prefix.length()) + " exceeds N=" +
                              std::to_string(s.length()));
    if (!is_self_avoiding(prefix)) throw InvalidArgument("prefix is not self-avoiding");
    const std::vector<std::uint8_t> p = codes_of(prefix);
    // Canonical order is lexicographic on codes, so K_gamma is a contiguous range.
    auto less_than_prefix = [&](std::size_t i) {
        auto c = s.codes(i);
        return std::lexicographical_compare(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(p.size()), p.begin(),
                                            p.end());
    };
    auto matches = [&](std::size_t i) {
        auto c = s.codes(i);
        return std::equal(p.begin(), p.end(), c.begin());
    };
    std::size_t lo = 0, hi = s.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (less_than_prefix(mid)) lo = mid + 1;
        else hi = mid;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = lo; i < s.size() && matches(i); ++i) out.push_back(i);
    return out;
}

std::size_t reference_sample_index(const StateSpace& s, RandomStream& rng) {
    const auto classes = s.classes();
    const ClassBlock& b = classes[uniform_below(rng, classes.size())];
    return b.offset + uniform_below(rng, b.size);
}

Walk reference_sample(const StateSpace& s, RandomStream& rng) {
    return s.walk(reference_sample_index(s, rng));
}

}  // namespace saw
