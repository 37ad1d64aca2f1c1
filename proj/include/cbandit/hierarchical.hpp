#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "cbandit/base_policy.hpp"
#include "cbandit/compliance.hpp"
#include "cbandit/policies.hpp"
#include "cbandit/replay_cache.hpp"

namespace cbandit {

struct HierarchicalConfig {
    BaseKind base_kind = BaseKind::EpsilonGreedy;
    PolicyParams base_params{};
    double top_gamma = kDefaultExp3Gamma;
    std::optional<double> top_eta;  // defaults to top_gamma / 3
    bool recycling = true;
};

/// Outcome of drawing a base bandit and then an arm from it.
struct HbDraw {
    std::size_t base = 0;
    std::size_t arm = 0;
    double base_prob = 1.0;
    std::optional<double> arm_prob;
};

/// Two-level bandit: an EXP3 selector over three base bandits that learn
/// under the Chosen, Actual and Comply protocols (in that order).
///
/// Base 0 is the certified strategy. It learns from Chosen-routed rewards
/// only: on its own rounds directly and, with recycling on, on other rounds
/// from the replay cache. Bases 1 and 2 see every round through their
/// protocol, except EXP3 bases, which only learn on rounds they executed.
class HierarchicalBandit {
public:
    static constexpr std::size_t kBases = 3;
    static constexpr std::array<Protocol, kBases> kBaseProtocols = {
        Protocol::Chosen, Protocol::Actual, Protocol::Comply};

    HierarchicalBandit(std::size_t arms, const HierarchicalConfig& config = {})
        : config_(config),
          top_(kBases, config.top_gamma, config.top_eta),
          bases_{BasePolicy(config.base_kind, arms, config.base_params),
                 BasePolicy(config.base_kind, arms, config.base_params),
                 BasePolicy(config.base_kind, arms, config.base_params)},
          cache_(arms) {
        if (arms < 2) throw std::invalid_argument("hierarchical bandit needs at least two arms");
    }

    std::size_t arm_count() const { return bases_[0].arm_count(); }
    const HierarchicalConfig& config() const noexcept { return config_; }
    const Exp3& top() const noexcept { return top_; }
    const BasePolicy& base(std::size_t i) const { return bases_.at(i); }
    const ReplayCache& cache() const noexcept { return cache_; }
    const std::optional<HbDraw>& last_draw() const noexcept { return last_draw_; }

    /// Number of updates each base received, by the protocol that routed them.
    const std::array<std::array<std::uint64_t, 3>, kBases>& update_sources() const noexcept {
        return update_sources_;
    }
    std::uint64_t credited_updates() const noexcept { return credited_updates_; }

    template <class URBG>
    HbDraw select(URBG& rng) {
        const auto top_dist = top_.distribution();
        const std::size_t i = top_dist.sample(rng);
        const auto draw = bases_[i].select(rng, thompson_prior(i, top_dist[i]));
        last_draw_ = HbDraw{i, draw.arm, top_dist[i], draw.prob};
        return *last_draw_;
    }

    template <class URBG>
    void update(const InteractionRecord& rec, URBG& rng) {
        if (!last_draw_) throw std::logic_error("hierarchical update without a preceding select");
        if (rec.chosen != last_draw_->arm)
            throw std::invalid_argument("record's chosen arm does not match the last draw");
        const HbDraw d = *last_draw_;
        last_draw_.reset();

        top_.update(d.base, 1.0 - rec.reward, d.base_prob);

        if (d.base == 0) {
            observe(0, Protocol::Chosen, *protocol_route(Protocol::Chosen, rec),
                    certified_prob(d.base_prob, d.arm_prob), rng);
        } else if (config_.recycling) {
            cache_.push(rec.chosen, rec.reward);
            const auto would_be = bases_[0].select(rng);
            if (const auto r = cache_.credit(would_be.arm, rng)) {
                observe(0, Protocol::Chosen, Credit{would_be.arm, *r},
                        certified_prob(d.base_prob, would_be.prob), rng);
                ++credited_updates_;
            }
        }

        for (std::size_t b = 1; b < kBases; ++b) {
            const bool executed = b == d.base;
            if (config_.base_kind == BaseKind::Exp3 && !executed) continue;
            const auto credit = protocol_route(kBaseProtocols[b], rec);
            if (!credit) continue;
            const double p = config_.base_kind == BaseKind::Exp3 ? d.base_prob * d.arm_prob.value() : 1.0;
            observe(b, kBaseProtocols[b], *credit, p, rng);
        }
    }

private:
    // Importance probability for the certified base. With recycling it is
    // updated on (nearly) every round, so only its own arm probability counts.
    double certified_prob(double base_prob, std::optional<double> arm_prob) const {
        const double call = config_.recycling ? 1.0 : base_prob;
        if (config_.base_kind == BaseKind::Exp3) return call * arm_prob.value();
        return call;
    }

    double thompson_prior(std::size_t base, double base_prob) const {
        if (config_.base_kind != BaseKind::Thompson || base != 0 || config_.recycling) return 1.0;
        return bts_weight(base_prob);
    }

    template <class URBG>
    void observe(std::size_t base, Protocol source, const Credit& credit, double importance_prob,
                 URBG& rng) {
        bases_[base].observe(credit, importance_prob, rng);
        ++update_sources_[base][static_cast<std::size_t>(source)];
    }

    HierarchicalConfig config_;
    Exp3 top_;
    std::array<BasePolicy, kBases> bases_;
    ReplayCache cache_;
    std::optional<HbDraw> last_draw_;
    std::array<std::array<std::uint64_t, 3>, kBases> update_sources_{};
    std::uint64_t credited_updates_ = 0;
};

}  // namespace cbandit
