#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cbandit/compliance.hpp"
#include "cbandit/ist_data.hpp"
#include "cbandit/random.hpp"

namespace cbandit {

struct StepOutcome {
    std::size_t actual = 0;
    double reward = 0.0;
    std::optional<Subpopulation> subpop;
};

/// i.i.d. patients from a two-arm population model.
class PopulationEnvironment {
public:
    explicit PopulationEnvironment(PopulationModel model, RewardMode mode = RewardMode::Bernoulli)
        : model_(std::move(model)), mode_(mode) {}

    const PopulationModel& model() const noexcept { return model_; }
    std::size_t arm_count() const noexcept { return 2; }

    std::vector<double> chosen_arm_values() const {
        return {model_.chosen_arm_value(0), model_.chosen_arm_value(1)};
    }

    template <class URBG>
    StepOutcome step(std::size_t chosen, URBG& rng) const {
        const Subpopulation s = sample_patient(model_, rng);
        const std::size_t actual = apply_behavior(s, chosen);
        return {actual, realize_reward(model_, s, actual, rng, mode_), s};
    }

private:
    PopulationModel model_;
    RewardMode mode_;
};

/// Counterfactual patients resampled from a trial table.
class TrialEnvironment {
public:
    TrialEnvironment(std::shared_ptr<const TrialTable> table, SamplingMode mode)
        : sampler_(std::move(table), mode) {}

    const TrialTable& table() const noexcept { return sampler_.table(); }
    std::size_t arm_count() const noexcept { return table().arm_count(); }
    std::vector<double> chosen_arm_values() const { return table().group_means(); }

    template <class URBG>
    StepOutcome step(std::size_t chosen, URBG& rng) {
        const auto s = sampler_.step(chosen, rng);
        return {s.actual, s.reward, std::nullopt};
    }

private:
    CounterfactualSampler sampler_;
};

/// A round generator: step(chosen) -> (actual, reward), together with the
/// expected reward of advising each arm. The best advised arm's value is the
/// regret reference and the mean over arms is the uniform-random baseline.
class Environment {
public:
    Environment(PopulationEnvironment env) : impl_(std::move(env)) {}
    Environment(TrialEnvironment env) : impl_(std::move(env)) {}

    std::size_t arm_count() const {
        return std::visit([](const auto& e) { return e.arm_count(); }, impl_);
    }

    std::vector<double> chosen_arm_values() const {
        return std::visit([](const auto& e) { return e.chosen_arm_values(); }, impl_);
    }

    double best_value() const {
        const auto v = chosen_arm_values();
        return *std::max_element(v.begin(), v.end());
    }

    double baseline() const {
        const auto v = chosen_arm_values();
        return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    }

    template <class URBG>
    StepOutcome step(std::size_t chosen, URBG& rng) {
        if (chosen >= arm_count()) throw std::out_of_range("chosen arm out of range");
        return std::visit([&](auto& e) { return e.step(chosen, rng); }, impl_);
    }

    const PopulationEnvironment* population() const { return std::get_if<PopulationEnvironment>(&impl_); }

private:
    std::variant<PopulationEnvironment, TrialEnvironment> impl_;
};

/// Everyone defies advice; the treatment helps. Advising arm 0 is optimal.
inline PopulationEnvironment make_defier_env() {
    PopulationModel::Means means{};
    means[static_cast<std::size_t>(Subpopulation::Defier)] = {0.0, 1.0};
    return PopulationEnvironment(PopulationModel({0.0, 0.0, 0.0, 1.0}, means));
}

/// Half rich always-takers (untreated 1.0, treated 0.75), half poor
/// compliers (untreated 0.5, treated 0.25).
inline PopulationEnvironment make_rich_poor_env() {
    PopulationModel::Means means{};
    means[static_cast<std::size_t>(Subpopulation::AlwaysTaker)] = {1.0, 0.75};
    means[static_cast<std::size_t>(Subpopulation::Complier)] = {0.5, 0.25};
    return PopulationEnvironment(PopulationModel({0.0, 0.5, 0.5, 0.0}, means));
}

/// Standard two-arm Bernoulli bandit: everyone complies.
inline PopulationEnvironment make_bernoulli_env(std::array<double, 2> arm_means) {
    return PopulationEnvironment(PopulationModel::with_arm_rewards({0.0, 0.0, 1.0, 0.0}, arm_means));
}

/// How compliance is randomized in the small-T world.
enum class SmallTCompliance : std::uint8_t {
    PerInstance,  // behavior mixture drawn uniformly from the simplex per instance
    PerRound,     // every round's behavior uniform over the four behaviors
};

/// Random small-T instance: arm rewards ~ U(0,1), depending on the arm taken
/// only, with randomized compliance.
template <class URBG>
PopulationEnvironment make_small_t_env(URBG& rng, SmallTCompliance mode = SmallTCompliance::PerInstance) {
    const std::array<double, 2> means{uniform01(rng), uniform01(rng)};
    PopulationModel::Probs probs{0.25, 0.25, 0.25, 0.25};
    if (mode == SmallTCompliance::PerInstance) {
        // Dirichlet(1,1,1,1) via normalized exponentials.
        std::exponential_distribution<double> expo(1.0);
        double total = 0.0;
        for (double& p : probs) total += (p = expo(rng));
        for (double& p : probs) p /= total;
        probs[3] = std::max(0.0, 1.0 - probs[0] - probs[1] - probs[2]);
    }
    return PopulationEnvironment(PopulationModel::with_arm_rewards(probs, means));
}

}  // namespace cbandit
