#include "saw/gmethod.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace saw::gmethod {

Partition::Partition(std::size_t ground_size, std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)), labels_(ground_size, static_cast<std::size_t>(-1)) {
    std::size_t covered = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        if (blocks_[k].empty()) throw InvalidArgument("partition blocks must be nonempty");
        for (std::size_t i : blocks_[k]) {
            if (i >= ground_size) throw InvalidArgument("partition element out of range");
            if (labels_[i] != static_cast<std::size_t>(-1)) throw InvalidArgument("partition blocks overlap");
            labels_[i] = k;
            ++covered;
        }
    }
    if (covered != ground_size) throw InvalidArgument("partition blocks do not cover the ground set");
    if (ground_size == 0) throw InvalidArgument("partition of an empty set");
    canonical_ = blocks_;
    for (auto& b : canonical_) std::sort(b.begin(), b.end());
    std::sort(canonical_.begin(), canonical_.end());
}

Partition Partition::improper(std::size_t m) {
    std::vector<std::size_t> all(m);
    std::iota(all.begin(), all.end(), 0);
    return Partition(m, {all});
}

Partition Partition::singletons(std::size_t m) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < m; ++i) blocks.push_back({i});
    return Partition(m, std::move(blocks));
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> remap;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= remap.size()) remap.resize(labels[i] + 1, static_cast<std::size_t>(-1));
        if (remap[labels[i]] == static_cast<std::size_t>(-1)) {
            remap[labels[i]] = blocks.size();
            blocks.emplace_back();
        }
        blocks[remap[labels[i]]].push_back(i);
    }
    return Partition(labels.size(), std::move(blocks));
}

std::string block_to_string(const std::vector<std::size_t>& block) {
    std::string s = "{";
    for (std::size_t i = 0; i < block.size(); ++i) s += (i ? "," : "") + std::to_string(block[i] + 1);
    return s + "}";
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < canonical_.size(); ++k) s += (k ? "," : "") + block_to_string(canonical_[k]);
    return s + ")";
}

bool is_finer(const Partition& finer, const Partition& coarser) {
    if (finer.ground_size() != coarser.ground_size()) throw DimensionMismatch("partitions of different ground sets");
    for (const auto& block : finer.blocks()) {
        const std::size_t target = coarser.block_of(block.front());
        for (std::size_t i : block)
            if (coarser.block_of(i) != target) return false;
    }
    return true;
}

std::vector<Partition> all_partitions(std::size_t m) {
    if (m == 0 || m > 10) throw InvalidArgument("all_partitions supports 1 <= m <= 10");
    // Restricted growth strings.
    std::vector<Partition> out;
    std::vector<std::size_t> labels(m, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max_label) {
        if (i == m) {
            out.push_back(Partition::from_labels(labels));
            return;
        }
        for (std::size_t l = 0; l <= max_label + 1; ++l) {
            labels[i] = l;
            rec(i + 1, std::max(max_label, l));
        }
    };
    rec(1, 0);
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inapplicable: return "inapplicable";
    }
    return "?";
}

double uniform01(RandomStream& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Partition random_partition(std::size_t m, RandomStream& rng, double split_probability) {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    std::vector<std::vector<std::size_t>> blocks{{perm.front()}};
    for (std::size_t i = 1; i < m; ++i) {
        if (uniform01(rng) < split_probability) blocks.emplace_back();
        blocks.back().push_back(perm[i]);
    }
    return Partition(m, std::move(blocks));
}

namespace {

// Random nonnegative weights on n slots, some zero, at least one positive,
// normalised to `total`.
std::vector<double> random_split(std::size_t n, double total, RandomStream& rng) {
    std::vector<double> w(n);
    double s = 0.0;
    for (double& x : w) {
        x = uniform01(rng) < 0.2 ? 0.0 : 0.05 + uniform01(rng);
        s += x;
    }
    if (s == 0.0) {
        w[uniform_below(rng, n)] = 1.0;
        s = 1.0;
    }
    for (double& x : w) x *= total / s;
    return w;
}

void fill_rows(Matrix<double>& m, const Partition& delta, const Partition& sigma, const Matrix<double>& masses,
               RandomStream& rng) {
    for (std::size_t k = 0; k < delta.block_count(); ++k)
        for (std::size_t i : delta.block(k))
            for (std::size_t l = 0; l < sigma.block_count(); ++l) {
                const auto& cols = sigma.block(l);
                const std::vector<double> w = random_split(cols.size(), masses(k, l), rng);
                for (std::size_t c = 0; c < cols.size(); ++c) m(i, cols[c]) = w[c];
            }
}

}  // namespace

Matrix<double> random_stable_matrix(const Partition& delta, const Partition& sigma, RandomStream& rng,
                                    bool stochastic) {
    Matrix<double> masses(delta.block_count(), sigma.block_count());
    for (std::size_t k = 0; k < delta.block_count(); ++k) {
        const double total = stochastic ? 1.0 : 2.0 * uniform01(rng);
        const std::vector<double> a = random_split(sigma.block_count(), total, rng);
        for (std::size_t l = 0; l < a.size(); ++l) masses(k, l) = a[l];
    }
    Matrix<double> m(delta.ground_size(), sigma.ground_size());
    fill_rows(m, delta, sigma, masses, rng);
    return m;
}

Matrix<double> random_similar(const Matrix<double>& p, const Partition& delta, const Partition& sigma,
                              RandomStream& rng) {
    const BlockMatrix<double> red = reduce(p, delta, sigma, 1e-10);
    Matrix<double> m(p.rows(), p.cols());
    fill_rows(m, delta, sigma, red.values, rng);
    return m;
}

ChainInstance<double> random_chain(RandomStream& rng, const ChainOptions& options) {
    if (options.length == 0 || options.max_size == 0) throw InvalidArgument("chain length and size must be positive");
    ChainInstance<double> c;
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i <= options.length; ++i) sizes.push_back(1 + uniform_below(rng, options.max_size));
    for (std::size_t i = 0; i <= options.length; ++i) {
        if (i == 0 && options.improper_first) c.partitions.push_back(Partition::improper(sizes[i]));
        else if (i == options.length && options.singleton_last) c.partitions.push_back(Partition::singletons(sizes[i]));
        else c.partitions.push_back(random_partition(sizes[i], rng));
    }
    for (std::size_t i = 0; i < options.length; ++i) {
        const bool last = i + 1 == options.length;
        if (last && options.free_last) {
            c.matrices.push_back(random_stable_matrix(Partition::singletons(sizes[i]),
                                                      Partition::singletons(sizes[i + 1]), rng, options.stochastic));
        } else {
            c.matrices.push_back(random_stable_matrix(c.partitions[i], c.partitions[i + 1], rng, options.stochastic));
        }
    }
    return c;
}

ChainInstance<double> random_similar_chain(const ChainInstance<double>& c, RandomStream& rng) {
    ChainInstance<double> u;
    u.partitions = c.partitions;
    for (std::size_t i = 0; i < c.matrices.size(); ++i)
        u.matrices.push_back(random_similar(c.matrices[i], c.partitions[i], c.partitions[i + 1], rng));
    return u;
}

}  // namespace saw::gmethod
