#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cbandit/hhedge.hpp"
#include "cbandit/hierarchical.hpp"
#include "cbandit/replay_cache.hpp"
#include "cbandit/thompson_bounded.hpp"

using namespace cbandit;

namespace {

// Re-draws until the top level picks `base`; select() has no side effects
// beyond remembering the draw.
HbDraw select_base(HierarchicalBandit& hb, std::size_t base, Rng& rng) {
    for (;;) {
        const auto d = hb.select(rng);
        if (d.base == base) return d;
    }
}

InteractionRecord random_record(Rng& rng, std::size_t chosen) {
    const std::size_t actual = bernoulli(rng, 0.7) ? chosen : 1 - chosen;
    return {chosen, actual, bernoulli(rng, 0.5) ? 1.0 : 0.0, std::nullopt};
}

HierarchicalConfig config(BaseKind kind, bool recycling) {
    HierarchicalConfig c;
    c.base_kind = kind;
    c.recycling = recycling;
    return c;
}

}  // namespace

TEST(ReplayCache, CreditsOnlyWhenEveryArmHasEntries) {
    Rng rng(1);
    ReplayCache cache(2);
    cache.push(0, 1.0);
    cache.push(0, 0.0);
    EXPECT_FALSE(cache.ready());
    EXPECT_FALSE(cache.credit(0, rng).has_value());
    EXPECT_EQ(cache.entries(0).size(), 2u);
    cache.push(1, 0.5);
    EXPECT_TRUE(cache.ready());
    EXPECT_EQ(cache.credit(1, rng), 0.5);
    EXPECT_TRUE(cache.entries(1).empty());
    EXPECT_FALSE(cache.ready());
    EXPECT_THROW(cache.push(2, 0.0), std::out_of_range);
}

TEST(ReplayCache, SamplesWithoutReplacementUniformly) {
    Rng rng(2);
    std::array<int, 3> first{};
    for (int trial = 0; trial < 30000; ++trial) {
        ReplayCache cache(2);
        cache.push(1, 0.0);
        for (double r : {0.0, 0.5, 1.0}) cache.push(0, r);
        const double r = *cache.credit(0, rng);
        ++first[static_cast<int>(r * 2)];
        // The remaining two entries are exactly the others.
        EXPECT_EQ(cache.entries(0).size(), 2u);
    }
    for (int c : first) EXPECT_NEAR(c / 30000.0, 1.0 / 3, 0.015);
}

TEST(Hierarchical, RequiresMatchingSelect) {
    Rng rng(3);
    HierarchicalBandit hb(2);
    EXPECT_THROW(hb.update({0, 0, 1.0, {}}, rng), std::logic_error);
    const auto d = hb.select(rng);
    EXPECT_THROW(hb.update({1 - d.arm, 0, 1.0, {}}, rng), std::invalid_argument);
    EXPECT_THROW(HierarchicalBandit(1), std::invalid_argument);
}

TEST(Hierarchical, CertifiedBaseOnlyLearnsFromChosen) {
    for (BaseKind kind : {BaseKind::Exp3, BaseKind::EpsilonGreedy, BaseKind::Thompson}) {
        for (bool recycling : {false, true}) {
            Rng rng(4);
            HierarchicalBandit hb(2, config(kind, recycling));
            for (int t = 0; t < 2000; ++t) {
                const auto d = hb.select(rng);
                hb.update(random_record(rng, d.arm), rng);
            }
            const auto& src = hb.update_sources();
            EXPECT_EQ(src[0][static_cast<int>(Protocol::Actual)], 0u);
            EXPECT_EQ(src[0][static_cast<int>(Protocol::Comply)], 0u);
            EXPECT_GT(src[0][static_cast<int>(Protocol::Chosen)], 0u);
            EXPECT_EQ(src[1][static_cast<int>(Protocol::Chosen)] + src[1][static_cast<int>(Protocol::Comply)], 0u);
            EXPECT_EQ(src[2][static_cast<int>(Protocol::Chosen)] + src[2][static_cast<int>(Protocol::Actual)], 0u);
            if (!recycling) EXPECT_EQ(hb.credited_updates(), 0u);
        }
    }
}

TEST(Hierarchical, TopUpdateIsImportanceWeighted) {
    Rng rng(5);
    HierarchicalBandit hb(2, config(BaseKind::EpsilonGreedy, true));
    for (int t = 0; t < 50; ++t) hb.update(random_record(rng, hb.select(rng).arm), rng);
    const auto d = hb.select(rng);
    const std::vector<double> before(hb.top().log_weights().begin(), hb.top().log_weights().end());
    const double x = hb.top().distribution()[d.base];
    EXPECT_DOUBLE_EQ(d.base_prob, x);
    hb.update({d.arm, d.arm, 0.0, {}}, rng);
    for (std::size_t i = 0; i < 3; ++i) {
        const double expected = i == d.base ? before[i] - hb.top().eta() * 1.0 / x : before[i];
        EXPECT_NEAR(hb.top().log_weights()[i], expected, 1e-12);
    }
    EXPECT_NEAR(hb.top().eta(), kDefaultExp3Gamma / 3, 1e-15);
}

TEST(Hierarchical, Exp3BasesLearnOnlyWhenExecuted) {
    Rng rng(6);
    HierarchicalBandit hb(2, config(BaseKind::Exp3, false));
    const auto d = select_base(hb, 1, rng);
    const auto w0 = hb.base(0).as<Exp3>().weights();
    const auto w2 = hb.base(2).as<Exp3>().weights();
    const auto w1 = hb.base(1).as<Exp3>().log_weights()[d.arm];
    const double y = *d.arm_prob;
    hb.update({d.arm, d.arm, 0.0, {}}, rng);
    EXPECT_EQ(hb.base(0).as<Exp3>().weights(), w0);
    EXPECT_EQ(hb.base(2).as<Exp3>().weights(), w2);
    const auto& e1 = hb.base(1).as<Exp3>();
    EXPECT_NEAR(e1.log_weights()[d.arm], w1 - e1.eta() * 1.0 / (d.base_prob * y), 1e-12);
}

TEST(Hierarchical, CertifiedExp3ProbabilityWithAndWithoutRecycling) {
    for (bool recycling : {false, true}) {
        Rng rng(7);
        HierarchicalBandit hb(2, config(BaseKind::Exp3, recycling));
        const auto d = select_base(hb, 0, rng);
        const double before = hb.base(0).as<Exp3>().log_weights()[d.arm];
        hb.update({d.arm, 1 - d.arm, 0.0, {}}, rng);
        const auto& e0 = hb.base(0).as<Exp3>();
        const double p = (recycling ? 1.0 : d.base_prob) * *d.arm_prob;
        EXPECT_NEAR(e0.log_weights()[d.arm], before - e0.eta() / p, 1e-12) << recycling;
    }
}

TEST(Hierarchical, BtsWeightWithoutRecycling) {
    Rng rng(8);
    HierarchicalBandit hb(2, config(BaseKind::Thompson, false));
    const auto d = select_base(hb, 0, rng);
    hb.update({d.arm, d.arm, 1.0, {}}, rng);
    EXPECT_DOUBLE_EQ(hb.base(0).as<ThompsonSampler>().total_pseudo_counts(), 1.0 / d.base_prob);
    // Non-certified Thompson bases count each observation once.
    EXPECT_DOUBLE_EQ(hb.base(1).as<ThompsonSampler>().total_pseudo_counts(), 1.0);
}

TEST(Hierarchical, RecyclingFeedsTheCertifiedBase) {
    Rng rng(9);
    HierarchicalBandit hb(2, config(BaseKind::Thompson, true));
    for (int t = 0; t < 3000; ++t) hb.update(random_record(rng, hb.select(rng).arm), rng);
    EXPECT_GT(hb.credited_updates(), 0u);
    const auto chosen_updates = hb.update_sources()[0][0];
    const double counts = hb.base(0).as<ThompsonSampler>().total_pseudo_counts();
    EXPECT_DOUBLE_EQ(counts, static_cast<double>(chosen_updates));
    // Cached pairs are either pending or consumed, never duplicated.
    const std::size_t pending = hb.cache().entries(0).size() + hb.cache().entries(1).size();
    EXPECT_LE(hb.credited_updates() + pending, 3000u);
}

TEST(Hierarchical, NoRecyclingLeavesCacheEmpty) {
    Rng rng(10);
    HierarchicalBandit hb(2, config(BaseKind::EpsilonGreedy, false));
    for (int t = 0; t < 500; ++t) hb.update(random_record(rng, hb.select(rng).arm), rng);
    EXPECT_TRUE(hb.cache().entries(0).empty());
    EXPECT_TRUE(hb.cache().entries(1).empty());
}

TEST(ThompsonBounded, SourceMustMatchSelection) {
    Rng rng(11);
    ThompsonBounded tb(2);
    EXPECT_THROW(tb.update({0, 0, 1.0, {}}, TbSource::Thompson, rng), std::invalid_argument);
    const auto d = tb.select(rng);
    const auto wrong = d.source == TbSource::Thompson ? TbSource::Hierarchical : TbSource::Thompson;
    EXPECT_THROW(tb.update({d.arm, d.arm, 1.0, {}}, wrong, rng), std::invalid_argument);
    EXPECT_NO_THROW(tb.update({d.arm, d.arm, 1.0, {}}, d.source, rng));
}

TEST(ThompsonBounded, DeviationRateIsOneMinusSumOfSquares) {
    Rng rng(12);
    ThompsonBounded tb(2);
    for (int t = 0; t < 30; ++t) {
        const auto d = tb.select(rng);
        tb.update({d.arm, d.arm, d.arm == 0 ? 0.7 : 0.4, {}}, d.source, rng);
    }
    // p_j for the current posterior, estimated from an independent copy.
    const ThompsonSampler probe = tb.thompson();
    const int n = 40000;
    int wins0 = 0;
    for (int i = 0; i < n; ++i) wins0 += probe.select(rng) == 0;
    const double p0 = wins0 / double(n);
    const double rate = 1.0 - p0 * p0 - (1 - p0) * (1 - p0);
    int deviations = 0;
    for (int i = 0; i < n; ++i) deviations += tb.select(rng).source == TbSource::Hierarchical;
    EXPECT_NEAR(deviations / double(n), rate, 0.015);
}

TEST(ThompsonBounded, ConcentratedPosteriorNeverDefers) {
    Rng rng(13);
    ThompsonBounded tb(2);
    for (int t = 0; t < 4000; ++t) {
        const auto d = tb.select(rng);
        tb.update({d.arm, d.arm, d.arm == 0 ? 1.0 : 0.0, {}}, d.source, rng);
    }
    int hb_rounds = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto d = tb.select(rng);
        hb_rounds += d.source == TbSource::Hierarchical;
        tb.update({d.arm, d.arm, d.arm == 0 ? 1.0 : 0.0, {}}, d.source, rng);
    }
    EXPECT_LT(hb_rounds, 10);
}

TEST(ThompsonBounded, ThompsonRoundsUpdateByChosen) {
    Rng rng(14);
    ThompsonBoundedConfig cfg;
    cfg.recycling = false;
    ThompsonBounded tb(2, cfg);
    std::size_t thompson_rounds = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto d = tb.select(rng);
        thompson_rounds += d.source == TbSource::Thompson;
        tb.update({d.arm, 1 - d.arm, 1.0, {}}, d.source, rng);
    }
    EXPECT_DOUBLE_EQ(tb.thompson().total_pseudo_counts(), static_cast<double>(thompson_rounds));
    EXPECT_EQ(tb.credited_updates(), 0u);
}

TEST(HHedge, RoundMatchesClosedForm) {
    const double eta = 0.5;
    Hedge top = Hedge::from_weights(std::vector<double>{1.0, 3.0}, eta);
    std::vector<Hedge> bases{Hedge::from_weights(std::vector<double>{1.0, 1.0, 2.0}, eta),
                             Hedge::from_weights(std::vector<double>{2.0, 1.0, 1.0}, eta)};
    const std::vector<std::vector<double>> losses{{0.0, 1.0, 0.5}, {1.0, 0.2, 0.0}};
    const auto r = hhedge_round(top, bases, losses);
    const double l0 = 0.25 * 0.0 + 0.25 * 1.0 + 0.5 * 0.5;
    const double l1 = 0.5 * 1.0 + 0.25 * 0.2 + 0.25 * 0.0;
    EXPECT_NEAR(r.compound_losses[0], l0, 1e-12);
    EXPECT_NEAR(r.compound_losses[1], l1, 1e-12);
    EXPECT_NEAR(r.incurred_loss, 0.25 * l0 + 0.75 * l1, 1e-12);
    const double t0 = 1.0 * std::exp(-eta * l0), t1 = 3.0 * std::exp(-eta * l1);
    EXPECT_NEAR(top.distribution()[0], t0 / (t0 + t1), 1e-12);
    const double b1 = std::exp(-eta * 1.0);
    EXPECT_NEAR(bases[0].distribution()[1], b1 / (1.0 + b1 + 2.0 * std::exp(-eta * 0.5)), 1e-12);
}

TEST(HHedge, SingleBaseReducesToHedge) {
    Rng gen(15);
    Hedge top(1, 0.3);
    std::vector<Hedge> bases{Hedge(4, 0.3)};
    Hedge plain(4, 0.3);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::vector<double>> l{std::vector<double>(4)};
        for (double& v : l[0]) v = uniform01(gen);
        const auto y = plain.distribution();
        double expected = 0.0;
        for (std::size_t j = 0; j < 4; ++j) expected += l[0][j] * y[j];
        const auto r = hhedge_round(top, bases, l);
        plain.update(l[0]);
        EXPECT_NEAR(r.incurred_loss, expected, 1e-12);
    }
    Hedge one(1, 0.3);
    std::vector<Hedge> single{Hedge(1, 0.3)};
    EXPECT_NEAR(hhedge_round(one, single, std::vector<std::vector<double>>{{0.4}}).incurred_loss, 0.4, 1e-15);
}

TEST(HHedge, PropertyRegretAgainstBestExpert) {
    // Full-information regret of the compound learner against the best
    // (base, arm) pair stays within the sum of both Hedge bounds.
    Rng gen(16);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 1 + uniform_index(gen, 4), n = 1 + uniform_index(gen, 4);
        const std::size_t T = 2000;
        const double eta_top = std::sqrt(8 * std::log(double(m) + 1) / T);
        const double eta_base = std::sqrt(8 * std::log(double(n) + 1) / T);
        Hedge top(m, eta_top);
        std::vector<Hedge> bases(m, Hedge(n, eta_base));
        std::vector<std::vector<double>> cumulative(m, std::vector<double>(n, 0.0));
        std::vector<double> bias(m * n);
        for (double& b : bias) b = uniform01(gen);
        double incurred = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            std::vector<std::vector<double>> l(m, std::vector<double>(n));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    l[i][j] = bernoulli(gen, bias[i * n + j]) ? 1.0 : 0.0;
                    cumulative[i][j] += l[i][j];
                }
            incurred += hhedge_round(top, bases, l).incurred_loss;
        }
        double best = 1e300;
        for (const auto& row : cumulative)
            for (double v : row) best = std::min(best, v);
        const double bound = std::sqrt(T * std::log(double(m) + 1) / 2) + std::sqrt(T * std::log(double(n) + 1) / 2);
        EXPECT_LE(incurred - best, bound + 1e-9) << m << "x" << n;
    }
}

TEST(HHedge, RejectsShapeMismatch) {
    Hedge top(2, 0.1);
    std::vector<Hedge> bases{Hedge(2, 0.1)};
    EXPECT_THROW(hhedge_round(top, bases, std::vector<std::vector<double>>{{0.0, 0.0}}), std::invalid_argument);
    std::vector<Hedge> two{Hedge(2, 0.1), Hedge(2, 0.1)};
    EXPECT_THROW(hhedge_round(top, two, std::vector<std::vector<double>>{{0.0}, {0.0, 0.0}}), std::invalid_argument);
}
