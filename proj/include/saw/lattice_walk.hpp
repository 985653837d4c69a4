#ifndef SAW_LATTICE_WALK_HPP
#define SAW_LATTICE_WALK_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace saw {

// A point of Z^d.
struct LatticePoint {
    std::vector<int> coords;

    LatticePoint() = default;
    explicit LatticePoint(std::vector<int> c) : coords(std::move(c)) {}
    static LatticePoint origin(int d) { return LatticePoint(std::vector<int>(static_cast<std::size_t>(d), 0)); }

    int dimension() const { return static_cast<int>(coords.size()); }
    long long squared_norm() const;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// One unit step +e_axis or -e_axis. Axes are 1-based.
//
// Steps are totally ordered as +1 < +2 < ... < +d < -1 < -2 < ... < -d,
// which is the order of E_d used for class blocks and for enumeration.
// For a fixed dimension d the dense code (0..2d-1) follows the same order.
class Step {
public:
    Step() = default;
    Step(int axis, int sign);

    static Step from_code(int code, int d);
    // Accepts "+2", "-1" or "2".
    static Step parse(std::string_view token);

    int axis() const { return axis_; }
    int sign() const { return sign_; }
    int signed_axis() const { return sign_ * axis_; }
    int code(int d) const { return sign_ > 0 ? axis_ - 1 : d + axis_ - 1; }
    Step reversed() const { return Step(axis_, -sign_); }
    std::string to_string() const;

    friend bool operator==(Step a, Step b) { return a.axis_ == b.axis_ && a.sign_ == b.sign_; }
    friend bool operator<(Step a, Step b) {
        if (a.sign_ != b.sign_) return a.sign_ > b.sign_;
        return a.axis_ < b.axis_;
    }

private:
    int axis_ = 1;
    int sign_ = 1;
};

// An N-step walk on Z^d starting at the origin. The step list is the
// primary representation; the lattice points omega_0..omega_N are derived
// once at construction and stored flat (point i occupies
// [i*d, (i+1)*d)).
class Walk {
public:
    Walk() = default;
    Walk(int dimension, std::vector<Step> steps);

    // Parses the canonical text form "+1,+2,-1". An empty string is the
    // zero-step walk.
    static Walk parse(std::string_view text, int dimension);

    int dimension() const { return dimension_; }
    std::size_t length() const { return steps_.size(); }
    std::span<const Step> steps() const { return steps_; }
    Step step(std::size_t i) const { return steps_[i]; }

    std::span<const int> point_coords(std::size_t i) const {
        return {points_.data() + i * static_cast<std::size_t>(dimension_), static_cast<std::size_t>(dimension_)};
    }
    LatticePoint point(std::size_t i) const;
    std::vector<LatticePoint> points() const;
    std::span<const int> flat_points() const { return points_; }
    LatticePoint end_point() const { return point(length()); }

    // Prefix consisting of the first m steps.
    Walk prefix(std::size_t m) const;

    std::string to_string() const;

    friend bool operator==(const Walk& a, const Walk& b) {
        return a.dimension_ == b.dimension_ && a.steps_ == b.steps_;
    }

private:
    int dimension_ = 1;
    std::vector<Step> steps_;
    std::vector<int> points_;
};

// Open-addressing set of lattice points with linear probing and
// backward-shift deletion. Keys are copied into the table.
class PointSet {
public:
    PointSet(int dimension, std::size_t expected_size);

    // Returns false when the point was already present.
    bool insert(std::span<const int> p);
    bool contains(std::span<const int> p) const;
    bool erase(std::span<const int> p);
    void clear();

    std::size_t size() const { return size_; }
    int dimension() const { return dimension_; }

private:
    std::size_t home(std::span<const int> p) const;
    std::size_t find_slot(std::span<const int> p) const;  // slot holding p, or npos
    bool slot_equals(std::size_t slot, std::span<const int> p) const;
    void grow();

    int dimension_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
    std::vector<int> keys_;
    std::vector<std::uint8_t> used_;
};

// Prefix sums of the steps: N+1 points, the first being the origin.
std::vector<LatticePoint> points_of(std::span<const Step> steps, int d);

bool is_self_avoiding(const Walk& w);

// The 2d walks whose N steps are all equal, in E_d order.
std::vector<Walk> straight_walks(int d, int N);

bool is_straight(const Walk& w);

// First step of the walk; identifies its first-step class.
Step class_key(const Walk& w);

// E_d in canonical order: +e_1, ..., +e_d, -e_1, ..., -e_d.
std::vector<Step> unit_steps(int d);

// Walk text format: one walk per line in canonical form; blank lines and
// lines beginning with '#' are skipped.
std::vector<Walk> read_walks(std::istream& in, int d);
void write_walks(std::ostream& out, std::span<const Walk> walks);

}  // namespace saw

#endif  // SAW_LATTICE_WALK_HPP
