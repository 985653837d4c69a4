#include "saw/lattice_walk.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <istream>
#include <ostream>

#include "saw/errors.hpp"

namespace saw {

long long LatticePoint::squared_norm() const {
    long long s = 0;
    for (int c : coords) s += static_cast<long long>(c) * c;
    return s;
}

Step::Step(int axis, int sign) : axis_(axis), sign_(sign) {
    if (axis < 1) throw InvalidArgument("step axis must be >= 1, got " + std::to_string(axis));
    if (sign != 1 && sign != -1) throw InvalidArgument("step sign must be +1 or -1");
}

Step Step::from_code(int code, int d) {
    if (code < 0 || code >= 2 * d) throw InvalidArgument("step code out of range");
    return code < d ? Step(code + 1, 1) : Step(code - d + 1, -1);
}

Step Step::parse(std::string_view token) {
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
        token.remove_suffix(1);
    int sign = 1;
    if (!token.empty() && (token.front() == '+' || token.front() == '-')) {
        sign = token.front() == '-' ? -1 : 1;
        token.remove_prefix(1);
    }
    int axis = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), axis);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
        throw InvalidArgument("malformed step token '" + std::string(token) + "'");
    return Step(axis, sign);
}

std::string Step::to_string() const {
    return (sign_ > 0 ? "+" : "-") + std::to_string(axis_);
}

Walk::Walk(int dimension, std::vector<Step> steps) : dimension_(dimension), steps_(std::move(steps)) {
    if (dimension < 1) throw InvalidArgument("dimension must be >= 1");
    const auto d = static_cast<std::size_t>(dimension);
    points_.assign((steps_.size() + 1) * d, 0);
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        const Step s = steps_[i];
        if (s.axis() > dimension)
            throw DimensionMismatch("step " + s.to_string() + " exceeds dimension " + std::to_string(dimension));
        std::copy_n(points_.begin() + static_cast<std::ptrdiff_t>(i * d), d,
                    points_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
        points_[(i + 1) * d + static_cast<std::size_t>(s.axis() - 1)] += s.sign();
    }
}

Walk Walk::parse(std::string_view text, int dimension) {
    std::vector<Step> steps;
    std::size_t start = 0;
    bool blank = text.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) {
        while (true) {
            const auto comma = text.find(',', start);
            steps.push_back(Step::parse(text.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return Walk(dimension, std::move(steps));
}

LatticePoint Walk::point(std::size_t i) const {
    auto c = point_coords(i);
    return LatticePoint(std::vector<int>(c.begin(), c.end()));
}

std::vector<LatticePoint> Walk::points() const {
    std::vector<LatticePoint> out;
    out.reserve(length() + 1);
    for (std::size_t i = 0; i <= length(); ++i) out.push_back(point(i));
    return out;
}

Walk Walk::prefix(std::size_t m) const {
    if (m > length()) throw InvalidArgument("prefix longer than walk");
    return Walk(dimension_, std::vector<Step>(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(m)));
}

std::string Walk::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (i) s += ',';
        s += steps_[i].to_string();
    }
    return s;
}

// PointSet

PointSet::PointSet(int dimension, std::size_t expected_size) : dimension_(dimension) {
    if (dimension < 1) throw InvalidArgument("dimension must be >= 1");
    const std::size_t capacity = std::bit_ceil(std::max<std::size_t>(16, 2 * expected_size + 2));
    mask_ = capacity - 1;
    keys_.assign(capacity * static_cast<std::size_t>(dimension), 0);
    used_.assign(capacity, 0);
}

std::size_t PointSet::home(std::span<const int> p) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (int c : p) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        h *= 0xBF58476D1CE4E5B9ull;
    }
    h ^= h >> 31;
    return static_cast<std::size_t>(h) & mask_;
}

bool PointSet::slot_equals(std::size_t slot, std::span<const int> p) const {
    const int* k = keys_.data() + slot * static_cast<std::size_t>(dimension_);
    return std::equal(p.begin(), p.end(), k);
}

std::size_t PointSet::find_slot(std::span<const int> p) const {
    for (std::size_t i = home(p);; i = (i + 1) & mask_) {
        if (!used_[i]) return static_cast<std::size_t>(-1);
        if (slot_equals(i, p)) return i;
    }
}

bool PointSet::contains(std::span<const int> p) const {
    if (p.size() != static_cast<std::size_t>(dimension_)) throw DimensionMismatch("point dimension mismatch");
    return find_slot(p) != static_cast<std::size_t>(-1);
}

bool PointSet::insert(std::span<const int> p) {
    if (p.size() != static_cast<std::size_t>(dimension_)) throw DimensionMismatch("point dimension mismatch");
    if (2 * (size_ + 1) > mask_ + 1) grow();
    std::size_t i = home(p);
    for (; used_[i]; i = (i + 1) & mask_) {
        if (slot_equals(i, p)) return false;
    }
    used_[i] = 1;
    std::copy(p.begin(), p.end(), keys_.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(dimension_)));
    ++size_;
    return true;
}

bool PointSet::erase(std::span<const int> p) {
    if (p.size() != static_cast<std::size_t>(dimension_)) throw DimensionMismatch("point dimension mismatch");
    std::size_t hole = find_slot(p);
    if (hole == static_cast<std::size_t>(-1)) return false;
    const auto d = static_cast<std::size_t>(dimension_);
    used_[hole] = 0;
    --size_;
    for (std::size_t j = (hole + 1) & mask_; used_[j]; j = (j + 1) & mask_) {
        std::span<const int> key(keys_.data() + j * d, d);
        const std::size_t k = home(key);
        // Move entry j into the hole unless its home lies cyclically in (hole, j].
        const bool stays = hole <= j ? (hole < k && k <= j) : (hole < k || k <= j);
        if (stays) continue;
        std::copy_n(keys_.begin() + static_cast<std::ptrdiff_t>(j * d), d,
                    keys_.begin() + static_cast<std::ptrdiff_t>(hole * d));
        used_[hole] = 1;
        used_[j] = 0;
        hole = j;
    }
    return true;
}

void PointSet::clear() {
    std::fill(used_.begin(), used_.end(), 0);
    size_ = 0;
}

void PointSet::grow() {
    const auto d = static_cast<std::size_t>(dimension_);
    std::vector<int> old_keys = std::move(keys_);
    std::vector<std::uint8_t> old_used = std::move(used_);
    const std::size_t capacity = 2 * (mask_ + 1);
    mask_ = capacity - 1;
    keys_.assign(capacity * d, 0);
    used_.assign(capacity, 0);
    size_ = 0;
    for (std::size_t s = 0; s < old_used.size(); ++s) {
        if (old_used[s]) insert(std::span<const int>(old_keys.data() + s * d, d));
    }
}

// Free functions

std::vector<LatticePoint> points_of(std::span<const Step> steps, int d) {
    return Walk(d, std::vector<Step>(steps.begin(), steps.end())).points();
}

bool is_self_avoiding(const Walk& w) {
    PointSet seen(w.dimension(), w.length() + 1);
    for (std::size_t i = 0; i <= w.length(); ++i) {
        if (!seen.insert(w.point_coords(i))) return false;
    }
    return true;
}

std::vector<Step> unit_steps(int d) {
    if (d < 1) throw InvalidArgument("dimension must be >= 1");
    std::vector<Step> out;
    for (int c = 0; c < 2 * d; ++c) out.push_back(Step::from_code(c, d));
    return out;
}

std::vector<Walk> straight_walks(int d, int N) {
    if (N < 1) throw InvalidArgument("straight walks need N >= 1, got " + std::to_string(N));
    std::vector<Walk> out;
    for (Step s : unit_steps(d)) out.emplace_back(d, std::vector<Step>(static_cast<std::size_t>(N), s));
    return out;
}

bool is_straight(const Walk& w) {
    const auto st = w.steps();
    return std::all_of(st.begin(), st.end(), [&](Step s) { return s == st.front(); });
}

Step class_key(const Walk& w) {
    if (w.length() == 0) throw InvalidArgument("class key of a zero-step walk");
    return w.step(0);
}

std::vector<Walk> read_walks(std::istream& in, int d) {
    std::vector<Walk> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(Walk::parse(line, d));
    }
    return out;
}

void write_walks(std::ostream& out, std::span<const Walk> walks) {
    for (const Walk& w : walks) out << w.to_string() << '\n';
}

}  // namespace saw
