#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cbandit/random.hpp"

namespace cbandit {

/// Per-arm store of rewards observed on rounds executed by non-certified
/// strategies. A certified strategy that did not execute a round may be
/// credited with one cached reward for the arm it would have played, drawn
/// uniformly and removed. Crediting is disabled until every arm has at least
/// one entry.
///
/// Lists are unbounded, so memory grows linearly with the horizon.
class ReplayCache {
public:
    explicit ReplayCache(std::size_t arms) : entries_(arms) {
        if (arms < 1) throw std::invalid_argument("replay cache needs at least one arm");
    }

    std::size_t arm_count() const noexcept { return entries_.size(); }

    void push(std::size_t arm, double reward) { entries_.at(arm).push_back(reward); }

    bool ready() const noexcept {
        return std::none_of(entries_.begin(), entries_.end(),
                            [](const auto& v) { return v.empty(); });
    }

    template <class URBG>
    std::optional<double> credit(std::size_t certified_arm, URBG& rng) {
        auto& list = entries_.at(certified_arm);
        if (!ready()) return std::nullopt;
        const std::size_t idx = uniform_index(rng, list.size());
        const double reward = list[idx];
        // Remaining order is irrelevant to uniform draws.
        list[idx] = list.back();
        list.pop_back();
        return reward;
    }

    const std::vector<double>& entries(std::size_t arm) const { return entries_.at(arm); }

private:
    std::vector<std::vector<double>> entries_;
};

}  // namespace cbandit
