#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cbandit/policies/arm_distribution.hpp"
#include "cbandit/random.hpp"

namespace cbandit {

/// The four deterministic compliance behaviors for two arms.
enum class Subpopulation : std::uint8_t { NeverTaker = 0, AlwaysTaker = 1, Complier = 2, Defier = 3 };

inline constexpr std::array<Subpopulation, 4> kSubpopulations = {
    Subpopulation::NeverTaker, Subpopulation::AlwaysTaker, Subpopulation::Complier,
    Subpopulation::Defier};

inline constexpr std::string_view to_string(Subpopulation s) noexcept {
    switch (s) {
        case Subpopulation::NeverTaker: return "N";
        case Subpopulation::AlwaysTaker: return "A";
        case Subpopulation::Complier: return "C";
        case Subpopulation::Defier: return "D";
    }
    return "?";
}

/// Reward-crediting rule: which arm, if any, receives the observed reward.
enum class Protocol : std::uint8_t { Chosen = 0, Actual = 1, Comply = 2 };

inline constexpr std::array<Protocol, 3> kProtocols = {Protocol::Chosen, Protocol::Actual,
                                                       Protocol::Comply};

inline constexpr std::string_view to_string(Protocol p) noexcept {
    switch (p) {
        case Protocol::Chosen: return "chosen";
        case Protocol::Actual: return "actual";
        case Protocol::Comply: return "comply";
    }
    return "?";
}

inline Protocol parse_protocol(std::string_view name) {
    for (Protocol p : kProtocols)
        if (to_string(p) == name) return p;
    throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

/// Arm actually taken by a member of `s` who was advised `chosen`.
inline std::size_t apply_behavior(Subpopulation s, std::size_t chosen) {
    if (chosen > 1) throw std::out_of_range("compliance behaviors are defined for arms 0 and 1");
    switch (s) {
        case Subpopulation::NeverTaker: return 0;
        case Subpopulation::AlwaysTaker: return 1;
        case Subpopulation::Complier: return chosen;
        case Subpopulation::Defier: return 1 - chosen;
    }
    throw std::logic_error("unreachable subpopulation");
}

/// How rewards are realized from their means.
enum class RewardMode : std::uint8_t {
    Bernoulli,          // reward ~ Bernoulli(r_{s,j})
    DeterministicMean,  // reward = r_{s,j}; used by oracle tests
};

/// Two-arm population: mixture over the four subpopulations and the mean
/// reward r_{s,j} of subpopulation s taking arm j.
class PopulationModel {
public:
    using Probs = std::array<double, 4>;
    using Means = std::array<std::array<double, 2>, 4>;

    PopulationModel(Probs probs, Means reward_means)
        : probs_(probs), means_(reward_means) {
        double total = 0.0;
        for (double p : probs_) {
            detail::check_unit_interval(p, "subpopulation probability");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw std::invalid_argument("subpopulation probabilities must sum to 1");
        for (const auto& row : means_)
            for (double r : row) detail::check_unit_interval(r, "reward mean");
    }

    /// Rewards depend on the arm taken only: r_{s,j} = r_j for every s.
    static PopulationModel with_arm_rewards(Probs probs, std::array<double, 2> arm_means) {
        Means m{};
        for (auto& row : m) row = arm_means;
        return PopulationModel(probs, m);
    }

    static constexpr std::size_t arm_count() noexcept { return 2; }
    const Probs& probs() const noexcept { return probs_; }
    const Means& reward_means() const noexcept { return means_; }
    double prob(Subpopulation s) const noexcept { return probs_[static_cast<std::size_t>(s)]; }
    double reward_mean(Subpopulation s, std::size_t arm) const {
        detail::check_arm(arm, 2);
        return means_[static_cast<std::size_t>(s)][arm];
    }

    /// Expected reward of advising `chosen` to a random patient.
    double chosen_arm_value(std::size_t chosen) const {
        double v = 0.0;
        for (Subpopulation s : kSubpopulations) v += prob(s) * reward_mean(s, apply_behavior(s, chosen));
        return v;
    }

    friend bool operator==(const PopulationModel&, const PopulationModel&) = default;

private:
    Probs probs_;
    Means means_;
};

/// One round's observables, plus the hidden subpopulation for diagnostics.
/// Policies never read `subpop`.
struct InteractionRecord {
    std::size_t chosen = 0;
    std::size_t actual = 0;
    double reward = 0.0;
    std::optional<Subpopulation> subpop;
};

template <class URBG>
Subpopulation sample_patient(const PopulationModel& model, URBG& rng) {
    return kSubpopulations[sample_discrete(rng, std::span<const double>(model.probs()))];
}

template <class URBG>
double realize_reward(const PopulationModel& model, Subpopulation s, std::size_t actual, URBG& rng,
                      RewardMode mode = RewardMode::Bernoulli) {
    const double mean = model.reward_mean(s, actual);
    if (mode == RewardMode::DeterministicMean) return mean;
    return bernoulli(rng, mean) ? 1.0 : 0.0;
}

/// An (arm, reward) pair credited to a policy.
struct Credit {
    std::size_t arm = 0;
    double reward = 0.0;
    friend bool operator==(const Credit&, const Credit&) = default;
};

inline std::optional<Credit> protocol_route(Protocol p, const InteractionRecord& rec) {
    switch (p) {
        case Protocol::Chosen: return Credit{rec.chosen, rec.reward};
        case Protocol::Actual: return Credit{rec.actual, rec.reward};
        case Protocol::Comply:
            if (rec.chosen == rec.actual) return Credit{rec.chosen, rec.reward};
            return std::nullopt;
    }
    throw std::logic_error("unreachable protocol");
}

/// Expected reward credited to `arm` under protocol `p` when the bandit pulls
/// arms with probabilities `pull_probs`. Computed by enumerating
/// (subpopulation, chosen arm) pairs; empty when the crediting event has
/// probability zero.
inline std::optional<double> expected_protocol_reward(const PopulationModel& model, Protocol p,
                                                      std::size_t arm,
                                                      const ArmDistribution& pull_probs) {
    detail::check_arm(arm, 2);
    if (pull_probs.size() != 2) throw std::invalid_argument("pull distribution must cover two arms");
    double mass = 0.0;
    double weighted = 0.0;
    for (Subpopulation s : kSubpopulations) {
        for (std::size_t c = 0; c < 2; ++c) {
            const double w = model.prob(s) * pull_probs[c];
            if (w <= 0.0) continue;
            const InteractionRecord rec{c, apply_behavior(s, c), 0.0, s};
            const auto credit = protocol_route(p, rec);
            if (!credit || credit->arm != arm) continue;
            mass += w;
            weighted += w * model.reward_mean(s, rec.actual);
        }
    }
    if (!(mass > 0.0)) return std::nullopt;
    return weighted / mass;
}

// JSON: {"probs": {"N":..,"A":..,"C":..,"D":..}, "reward_means": [[N0,N1],[A0,A1],[C0,C1],[D0,D1]]}

inline nlohmann::json to_json_value(const PopulationModel& m) {
    nlohmann::json probs = nlohmann::json::object();
    for (Subpopulation s : kSubpopulations) probs[std::string(to_string(s))] = m.prob(s);
    nlohmann::json means = nlohmann::json::array();
    for (const auto& row : m.reward_means()) means.push_back({row[0], row[1]});
    return {{"probs", probs}, {"reward_means", means}};
}

inline PopulationModel population_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("probs") || !j.contains("reward_means"))
        throw std::invalid_argument("population model needs 'probs' and 'reward_means'");
    PopulationModel::Probs probs{};
    for (Subpopulation s : kSubpopulations) {
        const std::string key(to_string(s));
        probs[static_cast<std::size_t>(s)] = j.at("probs").value(key, 0.0);
    }
    const auto& rm = j.at("reward_means");
    if (!rm.is_array() || rm.size() != 4)
        throw std::invalid_argument("reward_means must be a 4x2 array ordered N, A, C, D");
    PopulationModel::Means means{};
    for (std::size_t s = 0; s < 4; ++s) {
        if (!rm[s].is_array() || rm[s].size() != 2)
            throw std::invalid_argument("reward_means rows must have two entries");
        means[s] = {rm[s][0].get<double>(), rm[s][1].get<double>()};
    }
    return PopulationModel(probs, means);
}

}  // namespace cbandit
