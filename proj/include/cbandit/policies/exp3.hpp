#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbandit/policies/arm_distribution.hpp"

namespace cbandit {

/// Uniform-mixing parameter fixed ahead of time for T=10,000 and two or three arms.
inline constexpr double kDefaultExp3Gamma = 0.085;

/// EXP3 with a fixed mixing rate gamma and learning rate eta.
///
/// The played distribution is (1 - gamma) * softmax(log_weights) + gamma / k.
/// Only the played arm's weight moves, by exp(-eta * loss / played_prob), which
/// makes loss / played_prob an unbiased estimate of the full loss vector.
class Exp3 {
public:
    /// When `eta` is omitted it defaults to gamma / k.
    explicit Exp3(std::size_t arms, double gamma = kDefaultExp3Gamma,
                  std::optional<double> eta = std::nullopt)
        : log_weights_(arms, 0.0), gamma_(gamma) {
        if (arms < 1) throw std::invalid_argument("EXP3 needs at least one arm");
        if (!std::isfinite(gamma) || gamma < 0.0 || gamma > 1.0)
            throw std::invalid_argument("EXP3 gamma must lie in [0,1]");
        eta_ = eta.value_or(gamma / static_cast<double>(arms));
        if (!std::isfinite(eta_) || eta_ < 0.0) throw std::invalid_argument("EXP3 eta must be >= 0");
    }

    static Exp3 from_weights(std::span<const double> weights, double gamma,
                             std::optional<double> eta = std::nullopt) {
        Exp3 e(weights.size(), gamma, eta);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
                throw std::invalid_argument("EXP3 weights must be positive and finite");
            e.log_weights_[i] = std::log(weights[i]);
        }
        return e;
    }

    std::size_t arm_count() const noexcept { return log_weights_.size(); }
    double gamma() const noexcept { return gamma_; }
    double eta() const noexcept { return eta_; }
    std::span<const double> log_weights() const noexcept { return log_weights_; }

    std::vector<double> weights() const {
        std::vector<double> w(log_weights_.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_weights_[i]);
        return w;
    }

    ArmDistribution distribution() const {
        auto p = detail::normalize_log_weights(log_weights_);
        const double floor = gamma_ / static_cast<double>(p.size());
        for (double& v : p) v = (1.0 - gamma_) * v + floor;
        return ArmDistribution(std::move(p));
    }

    template <class URBG>
    ArmDraw select(URBG& rng) const {
        const auto dist = distribution();
        const std::size_t arm = dist.sample(rng);
        return {arm, dist[arm]};
    }

    void update(std::size_t arm, double loss, double played_prob) {
        detail::check_arm(arm, arm_count());
        detail::check_unit_interval(loss, "EXP3 loss");
        if (!(played_prob > 0.0) || played_prob > 1.0 || !std::isfinite(played_prob))
            throw std::invalid_argument("EXP3 played_prob must lie in (0,1]");
        log_weights_[arm] -= eta_ * loss / played_prob;
    }

private:
    std::vector<double> log_weights_;
    double gamma_;
    double eta_ = 0.0;
};

}  // namespace cbandit
