#pragma once

#include <cstdint>
#include <limits>

namespace sgossip {

/// Counter-based generator: the n-th output is a pure function of
/// (seed, stream, n). Streams are independent substreams keyed by e.g.
/// a trial index, so trials can run in any order or on any thread.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_lo_(mix(seed ^ 0x6a09e667f3bcc909ULL)),
          key_hi_(mix(key_lo_ + kGamma * (stream + 1))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t c = counter_++;
        return mix(mix(c * kGamma + key_hi_) ^ key_lo_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    std::uint64_t draws() const { return counter_; }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    std::uint64_t key_lo_;
    std::uint64_t key_hi_;
    std::uint64_t counter_ = 0;
};

/// Derives a child seed, e.g. per (grid point, sample) in a sweep.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return CounterRng::mix(CounterRng::mix(seed + 0x9e3779b97f4a7c15ULL * (a + 1)) ^
                           (0xd1b54a32d192ed03ULL * (b + 1)));
}

}  // namespace sgossip
