#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "cbandit/compliance.hpp"
#include "cbandit/policies.hpp"

namespace cbandit {

enum class BaseKind : std::uint8_t { Exp3, EpsilonGreedy, Thompson };

inline constexpr std::string_view to_string(BaseKind k) noexcept {
    switch (k) {
        case BaseKind::Exp3: return "exp3";
        case BaseKind::EpsilonGreedy: return "epsilon_greedy";
        case BaseKind::Thompson: return "thompson";
    }
    return "?";
}

inline BaseKind parse_base_kind(std::string_view name) {
    if (name == "exp3") return BaseKind::Exp3;
    if (name == "epsilon_greedy" || name == "egreedy") return BaseKind::EpsilonGreedy;
    if (name == "thompson" || name == "bts") return BaseKind::Thompson;
    throw std::invalid_argument("unknown base policy '" + std::string(name) + "'");
}

struct PolicyParams {
    double gamma = kDefaultExp3Gamma;
    std::optional<double> eta;  // defaults to gamma / k
    double epsilon_constant = kDefaultEpsilonConstant;
};

/// A drawn arm. `prob` is known for EXP3 and epsilon-greedy; Thompson
/// selection probabilities have no closed form and are left empty.
struct PolicyDraw {
    std::size_t arm = 0;
    std::optional<double> prob;
};

/// One of the core policies behind a uniform select/observe surface.
///
/// observe() takes an importance probability p: EXP3 divides the loss by p,
/// Thompson adds pseudo-counts of 1/p, epsilon-greedy ignores it.
class BasePolicy {
public:
    BasePolicy(BaseKind kind, std::size_t arms, const PolicyParams& params = {})
        : state_(make(kind, arms, params)) {}

    BaseKind kind() const noexcept { return static_cast<BaseKind>(state_.index()); }

    std::size_t arm_count() const {
        return std::visit([](const auto& s) { return s.arm_count(); }, state_);
    }

    /// `prior` is the Beta prior pseudo-count for Thompson and ignored otherwise.
    template <class URBG>
    PolicyDraw select(URBG& rng, double prior = 1.0) const {
        if (const auto* t = std::get_if<ThompsonSampler>(&state_)) return {t->select(rng, prior), {}};
        if (const auto* e = std::get_if<Exp3>(&state_)) {
            const auto d = e->select(rng);
            return {d.arm, d.prob};
        }
        const auto d = std::get<EpsilonGreedy>(state_).select(rng);
        return {d.arm, d.prob};
    }

    template <class URBG>
    void observe(const Credit& credit, double importance_prob, URBG& rng) {
        if (auto* t = std::get_if<ThompsonSampler>(&state_)) {
            t->update(credit.arm, credit.reward, bts_weight(importance_prob), rng);
        } else if (auto* e = std::get_if<Exp3>(&state_)) {
            e->update(credit.arm, 1.0 - credit.reward, importance_prob);
        } else {
            std::get<EpsilonGreedy>(state_).update(credit.arm, credit.reward);
        }
    }

    template <class T>
    const T& as() const {
        return std::get<T>(state_);
    }

private:
    using State = std::variant<Exp3, EpsilonGreedy, ThompsonSampler>;

    static State make(BaseKind kind, std::size_t arms, const PolicyParams& params) {
        switch (kind) {
            case BaseKind::Exp3: return Exp3(arms, params.gamma, params.eta);
            case BaseKind::EpsilonGreedy: return EpsilonGreedy(arms, params.epsilon_constant);
            case BaseKind::Thompson: return ThompsonSampler(arms);
        }
        throw std::invalid_argument("unknown base kind");
    }

    State state_;
};

}  // namespace cbandit
