#include "saw/pivot.hpp"

#include <algorithm>

#include "saw/errors.hpp"

namespace saw {

std::string to_string(Variant v) { return v == Variant::pivot ? "pivot" : "pivot+"; }

Variant parse_variant(std::string_view text) {
    if (text == "pivot") return Variant::pivot;
    if (text == "pivot+" || text == "pivot_plus" || text == "pivotplus") return Variant::pivot_plus;
    throw InvalidArgument("unknown variant '" + std::string(text) + "' (expected pivot or pivot+)");
}

Walk pivot_move(const Walk& w, std::size_t k, const LatticeSymmetry& t) {
    if (t.dimension() != w.dimension()) throw DimensionMismatch("pivot_move: symmetry dimension mismatch");
    if (w.length() == 0 || k >= w.length())
        throw InvalidArgument("pivot " + std::to_string(k) + " out of range for N=" + std::to_string(w.length()));
    std::vector<Step> steps(w.steps().begin(), w.steps().end());
    for (std::size_t i = k; i < steps.size(); ++i) steps[i] = t.apply(steps[i]);
    return Walk(w.dimension(), std::move(steps));
}

PivotKernel::PivotKernel(int d, int N, Variant variant)
    : d_(d),
      n_(N),
      variant_(variant),
      group_(&symmetry_group(d)),
      scratch_(d, static_cast<std::size_t>(std::max(N, 1)) + 1),
      point_(static_cast<std::size_t>(d), 0) {
    if (N < 1) throw InvalidArgument("walk length must be >= 1");
    if (variant == Variant::pivot_plus && N < 2)
        throw InvalidArgument("pivot+ requires N >= 2 (got N=" + std::to_string(N) + ")");
    codes_.reserve(static_cast<std::size_t>(N));
}

bool PivotKernel::try_move(const Walk& w, std::size_t k, const LatticeSymmetry& t,
                           std::vector<std::uint8_t>* out_codes) {
    const std::size_t n = w.length();
    if (k >= n) throw InvalidArgument("pivot out of range");
    scratch_.clear();
    for (std::size_t i = 0; i <= k; ++i) scratch_.insert(w.point_coords(i));
    auto pivot_site = w.point_coords(k);
    std::copy(pivot_site.begin(), pivot_site.end(), point_.begin());
    codes_.clear();
    for (std::size_t i = 0; i < k; ++i) codes_.push_back(static_cast<std::uint8_t>(w.step(i).code(d_)));
    for (std::size_t i = k; i < n; ++i) {
        const int code = t.apply_code(w.step(i).code(d_));
        const Step s = Step::from_code(code, d_);
        point_[static_cast<std::size_t>(s.axis() - 1)] += s.sign();
        if (!scratch_.insert(point_)) return false;
        codes_.push_back(static_cast<std::uint8_t>(code));
    }
    if (out_codes) *out_codes = codes_;
    return true;
}

PivotAttempt PivotKernel::step(Walk& w, RandomStream& rng) {
    PivotAttempt a;
    a.pivot = min_pivot() + static_cast<std::size_t>(uniform_below(rng, pivot_count()));
    a.symmetry = static_cast<std::size_t>(uniform_below(rng, group_->size()));
    const LatticeSymmetry& t = (*group_)[a.symmetry];
    if (t.is_identity()) {
        a.accepted = true;
        return a;
    }
    a.accepted = try_move(w, a.pivot, t, nullptr);
    if (a.accepted) {
        std::vector<Step> steps;
        steps.reserve(codes_.size());
        for (std::uint8_t c : codes_) steps.push_back(Step::from_code(c, d_));
        w = Walk(d_, std::move(steps));
    }
    return a;
}

Walk PivotKernel::init(RandomStream& rng) const {
    const int code = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(2 * d_)));
    return Walk(d_, std::vector<Step>(static_cast<std::size_t>(n_), Step::from_code(code, d_)));
}

namespace {

void check_state(const Walk& w) {
    if (w.length() == 0) throw InvalidArgument("walk must have at least one step");
    if (!is_self_avoiding(w)) throw InvalidArgument("walk " + w.to_string() + " is not self-avoiding");
}

}  // namespace

Walk pivot_step(const Walk& w, RandomStream& rng) {
    check_state(w);
    PivotKernel kernel(w.dimension(), static_cast<int>(w.length()), Variant::pivot);
    Walk out = w;
    kernel.step(out, rng);
    return out;
}

Walk pivot_plus_init(int d, int N, RandomStream& rng) {
    return PivotKernel(d, N, Variant::pivot_plus).init(rng);
}

Walk pivot_plus_step(const Walk& w, RandomStream& rng) {
    check_state(w);
    PivotKernel kernel(w.dimension(), static_cast<int>(w.length()), Variant::pivot_plus);
    Walk out = w;
    kernel.step(out, rng);
    return out;
}

void validate(const ChainConfig& cfg) {
    if (cfg.d < 1) throw InvalidArgument("--d must be >= 1");
    if (cfg.d > kMaxGroupDimension) throw CapacityError("--d must be <= " + std::to_string(kMaxGroupDimension));
    if (cfg.n < 1) throw InvalidArgument("--walk-length must be >= 1");
    if (cfg.variant == Variant::pivot_plus && cfg.n < 2)
        throw InvalidArgument("pivot+ requires --walk-length >= 2 (got " + std::to_string(cfg.n) + ")");
    if (cfg.initial) {
        if (cfg.initial->dimension() != cfg.d) throw DimensionMismatch("initial walk has the wrong dimension");
        if (cfg.initial->length() != static_cast<std::size_t>(cfg.n))
            throw InvalidArgument("initial walk has the wrong length");
        check_state(*cfg.initial);
    }
}

// Observers

HistogramObserver::HistogramObserver(const StateSpace& space, std::optional<std::size_t> time)
    : space_(&space), time_(time), counts_(space.size(), 0) {}

void HistogramObserver::observe(std::size_t time, const Walk& w) {
    if (time_ && *time_ != time) return;
    ++total_;
    if (auto idx = space_->index_of(w)) ++counts_[*idx];
    else ++unknown_;
}

void HistogramObserver::merge(const HistogramObserver& other) {
    if (other.counts_.size() != counts_.size()) throw DimensionMismatch("histogram size mismatch");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
    unknown_ += other.unknown_;
}

EndToEndObserver::EndToEndObserver(std::size_t n_times) : count_(n_times, 0), sum_(n_times, 0.0), sum_sq_(n_times, 0.0) {}

void EndToEndObserver::observe(std::size_t time, const Walk& w) {
    if (time >= count_.size()) return;
    const auto r2 = static_cast<double>(w.end_point().squared_norm());
    ++count_[time];
    sum_[time] += r2;
    sum_sq_[time] += r2 * r2;
}

void EndToEndObserver::merge(const EndToEndObserver& other) {
    if (other.count_.size() != count_.size()) throw DimensionMismatch("observer size mismatch");
    for (std::size_t t = 0; t < count_.size(); ++t) {
        count_[t] += other.count_[t];
        sum_[t] += other.sum_[t];
        sum_sq_[t] += other.sum_sq_[t];
    }
}

double EndToEndObserver::mean(std::size_t t) const {
    return count_[t] ? sum_[t] / static_cast<double>(count_[t]) : 0.0;
}

double EndToEndObserver::variance(std::size_t t) const {
    if (count_[t] < 2) return 0.0;
    const double n = static_cast<double>(count_[t]);
    const double m = sum_[t] / n;
    return std::max(0.0, (sum_sq_[t] - n * m * m) / (n - 1));
}

TrajectorySummary run_chain(const ChainConfig& cfg, std::size_t n_steps, std::span<ChainObserver* const> observers,
                            std::uint64_t replica) {
    validate(cfg);
    PivotKernel kernel(cfg.d, cfg.n, cfg.variant);
    RandomStream rng = substream(cfg.seed, replica);

    Walk w = cfg.initial ? *cfg.initial : straight_walks(cfg.d, cfg.n).front();
    TrajectorySummary summary;
    auto emit = [&](std::size_t time) {
        if (cfg.verify_states && !is_self_avoiding(w)) summary.all_self_avoiding = false;
        for (ChainObserver* o : observers) o->observe(time, w);
    };
    emit(0);
    if (cfg.variant == Variant::pivot) summary.class_key = class_key(w);

    for (std::size_t t = 1; t <= n_steps; ++t) {
        if (cfg.variant == Variant::pivot_plus && t == 1) {
            w = kernel.init(rng);
            summary.class_key = class_key(w);
            ++summary.accepted;
        } else {
            if (kernel.step(w, rng).accepted) ++summary.accepted;
            if (cfg.variant == Variant::pivot_plus && class_key(w) != *summary.class_key)
                summary.class_constant = false;
        }
        ++summary.transitions;
        emit(t);
    }
    summary.final_walk = std::move(w);
    return summary;
}

}  // namespace saw
