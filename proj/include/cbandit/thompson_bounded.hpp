#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "cbandit/compliance.hpp"
#include "cbandit/hierarchical.hpp"
#include "cbandit/policies/thompson.hpp"
#include "cbandit/replay_cache.hpp"

namespace cbandit {

enum class TbSource : std::uint8_t { Thompson, Hierarchical };

struct ThompsonBoundedConfig {
    HierarchicalConfig hierarchical{};
    bool recycling = true;  // recycling for the Thompson component
};

struct TbDraw {
    std::size_t arm = 0;
    TbSource source = TbSource::Thompson;
};

/// Thompson sampler under the Chosen protocol that defers to a hierarchical
/// bandit whenever two independent Thompson draws disagree. The deferral
/// probability is 1 - sum_j p_j^2 <= 2 p_F, where p_F is the probability
/// that Thompson misses its favourite arm.
class ThompsonBounded {
public:
    ThompsonBounded(std::size_t arms, const ThompsonBoundedConfig& config = {})
        : config_(config), thompson_(arms), hb_(arms, config.hierarchical), cache_(arms) {}

    std::size_t arm_count() const noexcept { return thompson_.arm_count(); }
    const ThompsonSampler& thompson() const noexcept { return thompson_; }
    const HierarchicalBandit& hierarchical() const noexcept { return hb_; }
    const ReplayCache& cache() const noexcept { return cache_; }
    std::optional<TbSource> last_source() const noexcept { return last_source_; }
    std::uint64_t credited_updates() const noexcept { return credited_updates_; }

    template <class URBG>
    TbDraw select(URBG& rng) {
        const std::size_t first = thompson_.select(rng);
        const std::size_t second = thompson_.select(rng);
        TbDraw d;
        if (first == second) {
            d = {thompson_.select(rng), TbSource::Thompson};
        } else {
            d = {hb_.select(rng).arm, TbSource::Hierarchical};
        }
        last_source_ = d.source;
        return d;
    }

    template <class URBG>
    void update(const InteractionRecord& rec, TbSource source, URBG& rng) {
        if (!last_source_ || *last_source_ != source)
            throw std::invalid_argument("update source does not match the last selection");
        last_source_.reset();
        if (source == TbSource::Thompson) {
            const auto credit = *protocol_route(Protocol::Chosen, rec);
            thompson_.update(credit.arm, credit.reward, rng);
            return;
        }
        hb_.update(rec, rng);
        if (config_.recycling) {
            cache_.push(rec.chosen, rec.reward);
            const std::size_t would_be = thompson_.select(rng);
            if (const auto r = cache_.credit(would_be, rng)) {
                thompson_.update(would_be, *r, rng);
                ++credited_updates_;
            }
        }
    }

private:
    ThompsonBoundedConfig config_;
    ThompsonSampler thompson_;
    HierarchicalBandit hb_;
    ReplayCache cache_;
    std::optional<TbSource> last_source_;
    std::uint64_t credited_updates_ = 0;
};

}  // namespace cbandit
