#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>

namespace switchsim {

namespace detail {
// SplitMix64 finalizer, used to derive well-separated stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

/// One reproducible random stream. Stream (seed, i) is derived purely from
/// the pair, so trajectory i of an ensemble always sees the same variates
/// no matter how trajectories are distributed across workers.
///
/// All variate transforms are hand-rolled inverse/Box-Muller forms on top
/// of the raw mt19937_64 output; std::*_distribution is avoided because its
/// output is implementation-defined and would break byte-reproducibility.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : gen_(detail::mix64(detail::mix64(seed) ^ detail::mix64(stream + 0x632BE59BD9B4E019ull))) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on the open interval (0, 1): never returns 0 or 1, so it is
    /// safe under log().
    double uniform01() {
        for (;;) {
            const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Exponential holding time via inverse transform.
    double exponential(double rate) {
        if (rate <= 0.0) throw std::invalid_argument("exponential rate must be positive");
        return -std::log(uniform01()) / rate;
    }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    /// Index drawn with probability weights[i] / total. The CDF scan runs in
    /// index order, which keeps results deterministic.
    std::size_t categorical(std::span<const double> weights, double total) {
        const double u = uniform01() * total;
        double acc = 0.0;
        std::size_t last_positive = 0;
        bool any = false;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0.0) continue;
            acc += weights[i];
            last_positive = i;
            any = true;
            if (u <= acc) return i;
        }
        if (!any) throw std::invalid_argument("categorical: all weights are zero");
        return last_positive;  // rounding fell past the end of the CDF
    }

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace switchsim
