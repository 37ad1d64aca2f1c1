#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace cbandit {

/// Engine used by every simulation in the library. Policies take any
/// UniformRandomBitGenerator; environments and the runner use this one.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for stream `stream` of run `run_index` under `master_seed`.
/// Depends only on its arguments, so runs can execute in any order.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index,
                                    std::uint64_t stream = 0) noexcept {
    return mix64(mix64(mix64(master_seed) ^ run_index) ^ (stream * 0xd1b54a32d192ed03ULL));
}

inline Rng make_rng(std::uint64_t master_seed, std::uint64_t run_index, std::uint64_t stream = 0) {
    return Rng{derive_seed(master_seed, run_index, stream)};
}

template <class URBG>
double uniform01(URBG& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

template <class URBG>
bool bernoulli(URBG& rng, double p) {
    return uniform01(rng) < p;
}

template <class URBG>
std::size_t uniform_index(URBG& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Inverse-CDF draw from a probability vector. Mass lost to rounding lands
/// on the last index with positive probability.
template <class URBG>
std::size_t sample_discrete(URBG& rng, std::span<const double> probs) {
    const double u = uniform01(rng);
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        last_positive = i;
        acc += probs[i];
        if (u < acc) return i;
    }
    return last_positive;
}

/// Beta(a, b) for real a, b > 0 via two Gamma draws.
template <class URBG>
double sample_beta(URBG& rng, double a, double b) {
    const double x = std::gamma_distribution<double>(a, 1.0)(rng);
    const double y = std::gamma_distribution<double>(b, 1.0)(rng);
    const double s = x + y;
    // Both gammas can underflow to zero for tiny shapes; fall back to the mean.
    if (!(s > 0.0)) return a / (a + b);
    return x / s;
}

/// Index of the maximum, ties broken uniformly at random. Consumes one draw
/// only when there is a tie.
template <class URBG>
std::size_t argmax_random_tie(URBG& rng, std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("argmax of empty range");
    double best = values[0];
    std::size_t ties = 1;
    std::size_t pick = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > best) {
            best = values[i];
            pick = i;
            ties = 1;
        } else if (values[i] == best) {
            ++ties;
        }
    }
    if (ties == 1) return pick;
    std::size_t k = uniform_index(rng, ties);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == best) {
            if (k == 0) return i;
            --k;
        }
    }
    return pick;
}

}  // namespace cbandit
