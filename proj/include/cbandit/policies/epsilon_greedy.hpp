#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cbandit/policies/arm_distribution.hpp"
#include "cbandit/random.hpp"

namespace cbandit {

inline constexpr double kDefaultEpsilonConstant = 5.0;

/// Epsilon-greedy with the annealing schedule eps_t = min(1, c * k / t),
/// where t counts rewards received so far plus one.
class EpsilonGreedy {
public:
    explicit EpsilonGreedy(std::size_t arms, double schedule_constant = kDefaultEpsilonConstant)
        : counts_(arms, 0), means_(arms, 0.0), schedule_constant_(schedule_constant) {
        if (arms < 1) throw std::invalid_argument("epsilon-greedy needs at least one arm");
        if (!(schedule_constant > 0.0) || !std::isfinite(schedule_constant))
            throw std::invalid_argument("epsilon-greedy schedule constant must be > 0");
    }

    std::size_t arm_count() const noexcept { return counts_.size(); }
    std::uint64_t round() const noexcept { return round_; }
    double schedule_constant() const noexcept { return schedule_constant_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    const std::vector<double>& mean_rewards() const noexcept { return means_; }

    double epsilon() const noexcept {
        return std::min(1.0, schedule_constant_ * static_cast<double>(arm_count()) /
                                 static_cast<double>(round_));
    }

    ArmDistribution distribution() const {
        const double eps = epsilon();
        const double top = *std::max_element(means_.begin(), means_.end());
        const auto ties = static_cast<double>(std::count(means_.begin(), means_.end(), top));
        const double k = static_cast<double>(arm_count());
        std::vector<double> p(arm_count());
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = eps / k + (means_[i] == top ? (1.0 - eps) / ties : 0.0);
        return ArmDistribution(std::move(p));
    }

    template <class URBG>
    ArmDraw select(URBG& rng) const {
        const double eps = epsilon();
        std::size_t arm;
        if (bernoulli(rng, eps))
            arm = uniform_index(rng, arm_count());
        else
            arm = argmax_random_tie(rng, std::span<const double>(means_));
        return {arm, distribution()[arm]};
    }

    void update(std::size_t arm, double reward) {
        detail::check_arm(arm, arm_count());
        detail::check_unit_interval(reward, "epsilon-greedy reward");
        ++counts_[arm];
        means_[arm] += (reward - means_[arm]) / static_cast<double>(counts_[arm]);
        ++round_;
    }

    /// Rebuilds a state from its sufficient statistics.
    static EpsilonGreedy from_state(std::vector<std::uint64_t> counts, std::vector<double> means,
                                    std::uint64_t round,
                                    double schedule_constant = kDefaultEpsilonConstant) {
        EpsilonGreedy g(means.size(), schedule_constant);
        if (counts.size() != means.size() || round < 1)
            throw std::invalid_argument("epsilon-greedy state is inconsistent");
        for (double m : means) detail::check_unit_interval(m, "epsilon-greedy mean");
        g.counts_ = std::move(counts);
        g.means_ = std::move(means);
        g.round_ = round;
        return g;
    }

private:
    std::vector<std::uint64_t> counts_;
    std::vector<double> means_;
    std::uint64_t round_ = 1;
    double schedule_constant_;
};

}  // namespace cbandit
