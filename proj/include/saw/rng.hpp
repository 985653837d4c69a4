#ifndef SAW_RNG_HPP
#define SAW_RNG_HPP

#include <cstdint>
#include <limits>

namespace saw {

// SplitMix64 (Steele, Lea, Flood). Used only to expand seeds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// xoshiro256** (Blackman, Vigna). Satisfies UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& s : s_) s = sm();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Stream-splitting rule: replica r of a run seeded with `seed` draws from
//
//     RandomStream(mix(mix(seed) + (r + 1) * 0x9E3779B97F4A7C15))
//
// where mix is one SplitMix64 output step. Replica streams therefore
// depend only on (seed, r), never on scheduling or on how many replicas
// run.
inline RandomStream substream(std::uint64_t seed, std::uint64_t replica) {
    const std::uint64_t root = SplitMix64(seed)();
    return RandomStream(SplitMix64(root + (replica + 1) * 0x9E3779B97F4A7C15ull)());
}

// Uniform integer on [0, n) without modulo bias (Lemire's multiply-shift
// with rejection). n must be positive.
template <class Urbg>
std::uint64_t uniform_below(Urbg& rng, std::uint64_t n) {
    std::uint64_t x = rng();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            x = rng();
            m = static_cast<unsigned __int128>(x) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace saw

#endif  // SAW_RNG_HPP
