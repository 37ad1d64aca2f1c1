#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cbandit/policies/arm_distribution.hpp"
#include "cbandit/random.hpp"

namespace cbandit {

/// Beta-Bernoulli Thompson sampling with real-valued pseudo-counts.
///
/// Rewards in [0,1] are binarized by a Bernoulli(reward) draw. The same
/// state serves the importance-weighted base sampler (BTS): call select with
/// prior = 1/p and update with weight = 1/p, where p is the probability that
/// the sampler is called on the round.
class ThompsonSampler {
public:
    explicit ThompsonSampler(std::size_t arms) : successes_(arms, 0.0), failures_(arms, 0.0) {
        if (arms < 1) throw std::invalid_argument("Thompson sampler needs at least one arm");
    }

    ThompsonSampler(std::vector<double> successes, std::vector<double> failures)
        : successes_(std::move(successes)), failures_(std::move(failures)) {
        if (successes_.empty() || successes_.size() != failures_.size())
            throw std::invalid_argument("Thompson S and F must be non-empty and equally sized");
        for (std::size_t i = 0; i < successes_.size(); ++i) {
            if (!(successes_[i] >= 0.0) || !(failures_[i] >= 0.0) || !std::isfinite(successes_[i]) ||
                !std::isfinite(failures_[i]))
                throw std::invalid_argument("Thompson counts must be finite and >= 0");
        }
    }

    std::size_t arm_count() const noexcept { return successes_.size(); }
    const std::vector<double>& successes() const noexcept { return successes_; }
    const std::vector<double>& failures() const noexcept { return failures_; }

    double posterior_mean(std::size_t arm, double prior = 1.0) const {
        detail::check_arm(arm, arm_count());
        return (successes_[arm] + prior) / (successes_[arm] + failures_[arm] + 2.0 * prior);
    }

    /// Draws theta_i ~ Beta(S_i + prior, F_i + prior) for each arm and
    /// returns the argmax, ties broken uniformly.
    template <class URBG>
    std::size_t select(URBG& rng, double prior = 1.0) const {
        if (!(prior > 0.0)) throw std::invalid_argument("Thompson prior must be > 0");
        thetas_.resize(successes_.size());
        for (std::size_t i = 0; i < successes_.size(); ++i)
            thetas_[i] = sample_beta(rng, successes_[i] + prior, failures_[i] + prior);
        return argmax_random_tie(rng, std::span<const double>(thetas_));
    }

    /// Adds `weight` to S[arm] or F[arm] according to a Bernoulli(reward)
    /// draw. Returns the binarized outcome.
    template <class URBG>
    bool update(std::size_t arm, double reward, double weight, URBG& rng) {
        detail::check_arm(arm, arm_count());
        detail::check_unit_interval(reward, "Thompson reward");
        if (!(weight > 0.0) || !std::isfinite(weight))
            throw std::invalid_argument("Thompson weight must be positive and finite");
        const bool success = bernoulli(rng, reward);
        (success ? successes_ : failures_)[arm] += weight;
        return success;
    }

    template <class URBG>
    bool update(std::size_t arm, double reward, URBG& rng) {
        return update(arm, reward, 1.0, rng);
    }

    double total_pseudo_counts() const noexcept {
        double t = 0.0;
        for (std::size_t i = 0; i < successes_.size(); ++i) t += successes_[i] + failures_[i];
        return t;
    }

private:
    std::vector<double> successes_;
    std::vector<double> failures_;
    mutable std::vector<double> thetas_;  // scratch
};

/// Pseudo-count increment of the base Thompson sampler: 1 / call_prob.
inline double bts_weight(double call_prob) {
    if (!(call_prob > 0.0) || call_prob > 1.0 || !std::isfinite(call_prob))
        throw std::invalid_argument("BTS call probability must lie in (0,1]");
    return 1.0 / call_prob;
}

}  // namespace cbandit
