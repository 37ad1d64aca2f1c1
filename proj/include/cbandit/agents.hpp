#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "cbandit/base_policy.hpp"
#include "cbandit/compliance.hpp"
#include "cbandit/hierarchical.hpp"
#include "cbandit/thompson_bounded.hpp"

namespace cbandit {

/// A single core policy learning under one reward protocol.
///
/// EXP3 importance-weights the credited loss by the probability of the arm
/// it advised, since that draw is what produced the observation.
class ProtocolBandit {
public:
    ProtocolBandit(BaseKind kind, Protocol protocol, std::size_t arms, const PolicyParams& params = {})
        : policy_(kind, arms, params), protocol_(protocol) {}

    Protocol protocol() const noexcept { return protocol_; }
    const BasePolicy& policy() const noexcept { return policy_; }

    template <class URBG>
    std::size_t select(URBG& rng) {
        last_ = policy_.select(rng);
        return last_->arm;
    }

    template <class URBG>
    void observe(const InteractionRecord& rec, URBG& rng) {
        if (!last_ || last_->arm != rec.chosen)
            throw std::logic_error("observe does not follow the matching select");
        const double p = last_->prob.value_or(1.0);
        last_.reset();
        if (const auto credit = protocol_route(protocol_, rec)) policy_.observe(*credit, p, rng);
    }

private:
    BasePolicy policy_;
    Protocol protocol_;
    std::optional<PolicyDraw> last_;
};

/// Always advises the same arm.
struct FixedArmAgent {
    std::size_t arm = 0;
    template <class URBG>
    std::size_t select(URBG&) { return arm; }
    template <class URBG>
    void observe(const InteractionRecord&, URBG&) {}
};

/// Advises a uniformly random arm.
struct UniformAgent {
    std::size_t arms = 2;
    template <class URBG>
    std::size_t select(URBG& rng) { return uniform_index(rng, arms); }
    template <class URBG>
    void observe(const InteractionRecord&, URBG&) {}
};

/// Adapts the hybrid algorithms to select/observe.
class HierarchicalAgent {
public:
    HierarchicalAgent(std::size_t arms, const HierarchicalConfig& config) : hb_(arms, config) {}
    const HierarchicalBandit& bandit() const noexcept { return hb_; }
    template <class URBG>
    std::size_t select(URBG& rng) { return hb_.select(rng).arm; }
    template <class URBG>
    void observe(const InteractionRecord& rec, URBG& rng) { hb_.update(rec, rng); }

private:
    HierarchicalBandit hb_;
};

class ThompsonBoundedAgent {
public:
    ThompsonBoundedAgent(std::size_t arms, const ThompsonBoundedConfig& config) : tb_(arms, config) {}
    const ThompsonBounded& bandit() const noexcept { return tb_; }
    template <class URBG>
    std::size_t select(URBG& rng) {
        const auto d = tb_.select(rng);
        source_ = d.source;
        return d.arm;
    }
    template <class URBG>
    void observe(const InteractionRecord& rec, URBG& rng) { tb_.update(rec, source_, rng); }

private:
    ThompsonBounded tb_;
    TbSource source_ = TbSource::Thompson;
};

using Agent = std::variant<ProtocolBandit, HierarchicalAgent, ThompsonBoundedAgent, FixedArmAgent, UniformAgent>;

template <class URBG>
std::size_t agent_select(Agent& agent, URBG& rng) {
    return std::visit([&](auto& a) { return a.select(rng); }, agent);
}

template <class URBG>
void agent_observe(Agent& agent, const InteractionRecord& rec, URBG& rng) {
    std::visit([&](auto& a) { a.observe(rec, rng); }, agent);
}

}  // namespace cbandit
