#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbandit/policies/arm_distribution.hpp"

namespace cbandit {

/// Full-information exponential weights. Weights are kept in log space.
class Hedge {
public:
    Hedge(std::size_t arms, double eta) : log_weights_(arms, 0.0), eta_(eta) {
        if (arms == 0) throw std::invalid_argument("Hedge needs at least one arm");
        if (!std::isfinite(eta) || eta < 0.0) throw std::invalid_argument("Hedge eta must be >= 0");
    }

    static Hedge from_weights(std::span<const double> weights, double eta) {
        Hedge h(weights.size(), eta);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
                throw std::invalid_argument("Hedge weights must be positive and finite");
            h.log_weights_[i] = std::log(weights[i]);
        }
        return h;
    }

    std::size_t arm_count() const noexcept { return log_weights_.size(); }
    double eta() const noexcept { return eta_; }
    std::span<const double> log_weights() const noexcept { return log_weights_; }

    std::vector<double> weights() const {
        std::vector<double> w(log_weights_.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_weights_[i]);
        return w;
    }

    ArmDistribution distribution() const {
        return ArmDistribution(detail::normalize_log_weights(log_weights_));
    }

    /// w_j <- w_j * exp(-eta * loss_j) for every arm.
    void update(std::span<const double> losses) {
        if (losses.size() != log_weights_.size())
            throw std::invalid_argument("Hedge loss vector has wrong length");
        for (double l : losses) detail::check_unit_interval(l, "Hedge loss");
        for (std::size_t i = 0; i < losses.size(); ++i) log_weights_[i] -= eta_ * losses[i];
    }

private:
    std::vector<double> log_weights_;
    double eta_;
};

}  // namespace cbandit
