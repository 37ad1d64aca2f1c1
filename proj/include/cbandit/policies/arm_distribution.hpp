#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbandit/random.hpp"

namespace cbandit {

/// Probability vector over arms. Construction validates the simplex
/// constraint, so every instance is a proper distribution.
class ArmDistribution {
public:
    static constexpr double kTolerance = 1e-9;

    explicit ArmDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw std::invalid_argument("ArmDistribution needs at least one arm");
        double total = 0.0;
        for (double p : probs_) {
            if (!std::isfinite(p) || p < 0.0)
                throw std::invalid_argument("ArmDistribution entry is negative or non-finite");
            total += p;
        }
        if (std::abs(total - 1.0) > kTolerance)
            throw std::invalid_argument("ArmDistribution does not sum to 1 (sum=" +
                                        std::to_string(total) + ")");
    }

    static ArmDistribution uniform(std::size_t arms) {
        return ArmDistribution(std::vector<double>(arms, 1.0 / static_cast<double>(arms)));
    }

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_.at(i); }
    std::span<const double> probs() const noexcept { return probs_; }

    template <class URBG>
    std::size_t sample(URBG& rng) const {
        return sample_discrete(rng, probs());
    }

private:
    std::vector<double> probs_;
};

/// A sampled arm with the probability it had under the sampling distribution.
struct ArmDraw {
    std::size_t arm = 0;
    double prob = 1.0;
};

namespace detail {

/// Softmax of log-weights, shifted by the max so long update sequences
/// never underflow to an all-zero vector.
inline std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
    const double top = *std::max_element(log_weights.begin(), log_weights.end());
    std::vector<double> out(log_weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::exp(log_weights[i] - top);
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

inline void check_unit_interval(double value, const char* what) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0)
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

inline void check_arm(std::size_t arm, std::size_t arm_count) {
    if (arm >= arm_count) throw std::out_of_range("arm index out of range");
}

}  // namespace detail
}  // namespace cbandit
