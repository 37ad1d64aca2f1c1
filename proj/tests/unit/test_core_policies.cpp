#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "cbandit/policies.hpp"
#include "cbandit/random.hpp"

using namespace cbandit;

namespace {

// Generator for property tests: random probability vector of length k.
std::vector<double> random_simplex(Rng& rng, std::size_t k) {
    std::vector<double> v(k);
    double s = 0.0;
    for (auto& x : v) s += (x = -std::log(1.0 - uniform01(rng)));
    for (auto& x : v) x /= s;
    return v;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::vector<double> to_vec(const ArmDistribution& d) { return {d.probs().begin(), d.probs().end()}; }

}  // namespace

TEST(Random, DeriveSeedIsStableAndSeparatesStreams) {
    EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
    std::set<std::uint64_t> seen;
    for (std::uint64_t run = 0; run < 50; ++run)
        for (std::uint64_t stream = 0; stream < 4; ++stream) seen.insert(derive_seed(9, run, stream));
    EXPECT_EQ(seen.size(), 200u);
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(Random, SampleDiscreteFrequencies) {
    Rng rng(11);
    const std::vector<double> p{0.1, 0.0, 0.6, 0.3};
    std::vector<int> hits(4, 0);
    const int n = 200000;
    for (int i = 0; i < n; ++i) ++hits[sample_discrete(rng, std::span<const double>(p))];
    EXPECT_EQ(hits[1], 0);
    for (std::size_t i = 0; i < 4; ++i) {
        const double se = std::sqrt(p[i] * (1 - p[i]) / n) + 1e-12;
        EXPECT_LE(std::abs(hits[i] / double(n) - p[i]), 4 * se) << i;
    }
}

TEST(Random, ArgmaxBreaksTiesUniformly) {
    Rng rng(3);
    const std::vector<double> v{0.2, 0.9, 0.9, 0.1, 0.9};
    std::vector<int> hits(5, 0);
    for (int i = 0; i < 30000; ++i) ++hits[argmax_random_tie(rng, std::span<const double>(v))];
    EXPECT_EQ(hits[0] + hits[3], 0);
    for (int i : {1, 2, 4}) EXPECT_NEAR(hits[i] / 30000.0, 1.0 / 3, 0.015);
}

TEST(Random, ArgmaxWithoutTieConsumesNoRandomness) {
    Rng a(5), b(5);
    const std::vector<double> v{0.1, 0.7, 0.3};
    EXPECT_EQ(argmax_random_tie(a, std::span<const double>(v)), 1u);
    EXPECT_EQ(a(), b());
}

TEST(Random, BetaMeanAndVariance) {
    Rng rng(8);
    const double a = 2.5, b = 4.0;
    const int n = 100000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_beta(rng, a, b);
        s += x;
        s2 += x * x;
    }
    const double mean = a / (a + b);
    const double var = a * b / ((a + b) * (a + b) * (a + b + 1));
    EXPECT_NEAR(s / n, mean, 4 * std::sqrt(var / n));
    EXPECT_NEAR(s2 / n - (s / n) * (s / n), var, 0.002);
}

TEST(ArmDistribution, Validation) {
    EXPECT_THROW(ArmDistribution({}), std::invalid_argument);
    EXPECT_THROW(ArmDistribution({0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(ArmDistribution({-0.1, 1.1}), std::invalid_argument);
    EXPECT_THROW(ArmDistribution({NAN, 1.0}), std::invalid_argument);
    EXPECT_NO_THROW(ArmDistribution({1.0}));
    const auto u = ArmDistribution::uniform(4);
    EXPECT_DOUBLE_EQ(u[3], 0.25);
    EXPECT_THROW(u[4], std::out_of_range);
}

TEST(Hedge, MultiplicativeUpdateMatchesClosedForm) {
    const double eta = 0.3;
    Hedge h = Hedge::from_weights(std::vector<double>{1.0, 2.0, 0.5}, eta);
    const std::vector<double> loss{0.2, 1.0, 0.0};
    h.update(loss);
    std::vector<double> w{1.0 * std::exp(-eta * 0.2), 2.0 * std::exp(-eta * 1.0), 0.5};
    const double z = sum(w);
    const auto d = h.distribution();
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(d[i], w[i] / z, 1e-12);
}

TEST(Hedge, RejectsBadInput) {
    Hedge h(2, 0.1);
    EXPECT_THROW(h.update(std::vector<double>{0.1}), std::invalid_argument);
    EXPECT_THROW(h.update(std::vector<double>{0.1, 1.5}), std::invalid_argument);
    EXPECT_THROW(Hedge(0, 0.1), std::invalid_argument);
    EXPECT_THROW(Hedge(2, -1.0), std::invalid_argument);
}

TEST(Exp3, DefaultEtaIsGammaOverK) {
    Exp3 e(4);
    EXPECT_DOUBLE_EQ(e.gamma(), 0.085);
    EXPECT_DOUBLE_EQ(e.eta(), 0.085 / 4);
    EXPECT_DOUBLE_EQ(Exp3(4, 0.2, 0.01).eta(), 0.01);
}

TEST(Exp3, DistributionMixesUniformExploration) {
    const double g = 0.1;
    Exp3 e = Exp3::from_weights(std::vector<double>{3.0, 1.0}, g);
    const auto d = e.distribution();
    EXPECT_NEAR(d[0], (1 - g) * 0.75 + g / 2, 1e-12);
    EXPECT_NEAR(d[1], (1 - g) * 0.25 + g / 2, 1e-12);
}

TEST(Exp3, ImportanceWeightedUpdate) {
    const double g = 0.1, eta = 0.05;
    Exp3 e(3, g, eta);
    e.update(1, 0.4, 0.2);
    // w_1 = exp(-eta * 0.4 / 0.2); others stay 1.
    const double w1 = std::exp(-eta * 2.0);
    const double z = 2.0 + w1;
    const auto d = e.distribution();
    EXPECT_NEAR(d[1], (1 - g) * w1 / z + g / 3, 1e-12);
    EXPECT_NEAR(d[0], (1 - g) / z + g / 3, 1e-12);
    EXPECT_THROW(e.update(0, 0.5, 0.0), std::invalid_argument);
    EXPECT_THROW(e.update(0, 1.5, 0.5), std::invalid_argument);
    EXPECT_THROW(e.update(3, 0.5, 0.5), std::out_of_range);
}

TEST(Exp3, PropertyDistributionStaysValidAndFloored) {
    Rng gen(101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 2 + uniform_index(gen, 5);
        const double g = 0.01 + 0.5 * uniform01(gen);
        Exp3 e(k, g);
        for (int t = 0; t < 300; ++t) {
            const auto d = e.select(gen);
            EXPECT_GT(d.prob, 0.0);
            e.update(d.arm, uniform01(gen), d.prob);
        }
        const auto d = to_vec(e.distribution());
        EXPECT_NEAR(sum(d), 1.0, 1e-9);
        for (double p : d) EXPECT_GE(p, g / double(k) - 1e-12);
    }
}

TEST(Exp3, SelectReportsItsOwnProbability) {
    Rng rng(2);
    Exp3 e = Exp3::from_weights(std::vector<double>{5.0, 1.0, 1.0}, 0.2);
    for (int i = 0; i < 20; ++i) {
        const auto d = e.select(rng);
        EXPECT_DOUBLE_EQ(d.prob, e.distribution()[d.arm]);
    }
}

TEST(Thompson, UpdateAddsWeightToOutcome) {
    Rng rng(4);
    ThompsonSampler t(2);
    EXPECT_TRUE(t.update(0, 1.0, 2.0, rng));
    EXPECT_FALSE(t.update(1, 0.0, 0.5, rng));
    EXPECT_DOUBLE_EQ(t.successes()[0], 2.0);
    EXPECT_DOUBLE_EQ(t.failures()[1], 0.5);
    EXPECT_DOUBLE_EQ(t.total_pseudo_counts(), 2.5);
    EXPECT_THROW(t.update(0, 0.5, 0.0, rng), std::invalid_argument);
    EXPECT_THROW(t.update(0, 1.2, 1.0, rng), std::invalid_argument);
}

TEST(Thompson, FractionalRewardIsBernoulliTrial) {
    Rng rng(6);
    ThompsonSampler t(1);
    for (int i = 0; i < 40000; ++i) t.update(0, 0.3, rng);
    EXPECT_NEAR(t.successes()[0] / 40000.0, 0.3, 4 * std::sqrt(0.21 / 40000));
}

TEST(Thompson, PosteriorMean) {
    ThompsonSampler t({3.0, 0.0}, {1.0, 0.0});
    EXPECT_DOUBLE_EQ(t.posterior_mean(0), 4.0 / 6.0);
    EXPECT_DOUBLE_EQ(t.posterior_mean(1), 0.5);
    EXPECT_DOUBLE_EQ(t.posterior_mean(0, 2.0), 5.0 / 8.0);
    EXPECT_THROW(ThompsonSampler({1.0}, {1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(ThompsonSampler({-1.0}, {1.0}), std::invalid_argument);
}

TEST(Thompson, SelectFrequencyMatchesBetaComparison) {
    // P(theta_0 > theta_1) for Beta(2,1) vs Beta(1,1) is 2/3.
    Rng rng(12);
    ThompsonSampler t({1.0, 0.0}, {0.0, 0.0});
    int zero = 0;
    const int n = 60000;
    for (int i = 0; i < n; ++i) zero += t.select(rng) == 0;
    EXPECT_NEAR(zero / double(n), 2.0 / 3.0, 4 * std::sqrt(2.0 / 9.0 / n));
}

TEST(Thompson, LargerPriorShrinksTowardsHalf) {
    // With counts S=(8,0), F=(0,0), arm 0's advantage shrinks under a large prior.
    Rng rng(13);
    ThompsonSampler t({8.0, 0.0}, {0.0, 0.0});
    int weak = 0, strong = 0;
    for (int i = 0; i < 20000; ++i) {
        weak += t.select(rng, 1.0) == 0;
        strong += t.select(rng, 50.0) == 0;
    }
    EXPECT_GT(weak, strong);
    EXPECT_THROW(t.select(rng, 0.0), std::invalid_argument);
}

TEST(Thompson, BtsWeight) {
    EXPECT_DOUBLE_EQ(bts_weight(0.25), 4.0);
    EXPECT_DOUBLE_EQ(bts_weight(1.0), 1.0);
    EXPECT_THROW(bts_weight(0.0), std::invalid_argument);
    EXPECT_THROW(bts_weight(1.5), std::invalid_argument);
}

TEST(EpsilonGreedy, ScheduleIsMinOneCkOverT) {
    EpsilonGreedy g(2, 5.0);
    EXPECT_DOUBLE_EQ(g.epsilon(), 1.0);
    for (int i = 0; i < 19; ++i) g.update(0, 0.0);
    EXPECT_DOUBLE_EQ(g.epsilon(), 0.5);  // t = 20
    const auto h = EpsilonGreedy::from_state({50, 49}, {0.2, 0.7}, 1000, 5.0);
    EXPECT_DOUBLE_EQ(h.epsilon(), 0.01);
}

TEST(EpsilonGreedy, RunningMeans) {
    EpsilonGreedy g(2);
    g.update(1, 1.0);
    g.update(1, 0.0);
    g.update(1, 0.5);
    EXPECT_DOUBLE_EQ(g.mean_rewards()[1], 0.5);
    EXPECT_EQ(g.counts()[1], 3u);
    EXPECT_EQ(g.round(), 4u);
    EXPECT_THROW(g.update(2, 0.0), std::out_of_range);
}

TEST(EpsilonGreedy, DistributionAndSelectAgree) {
    const auto g = EpsilonGreedy::from_state({10, 10, 10}, {0.3, 0.6, 0.6}, 50, 5.0);
    const double eps = 15.0 / 50.0;
    const auto d = g.distribution();
    EXPECT_NEAR(d[0], eps / 3, 1e-12);
    EXPECT_NEAR(d[1], eps / 3 + (1 - eps) / 2, 1e-12);
    Rng rng(21);
    std::vector<int> hits(3, 0);
    const int n = 60000;
    for (int i = 0; i < n; ++i) {
        const auto s = g.select(rng);
        EXPECT_DOUBLE_EQ(s.prob, d[s.arm]);
        ++hits[s.arm];
    }
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(hits[i] / double(n), d[i], 4 * std::sqrt(d[i] * (1 - d[i]) / n));
}

TEST(EpsilonGreedy, FromStateRejectsInconsistentState) {
    EXPECT_THROW(EpsilonGreedy::from_state({1}, {0.2, 0.3}, 3), std::invalid_argument);
    EXPECT_THROW(EpsilonGreedy::from_state({1, 1}, {0.2, 0.3}, 0), std::invalid_argument);
    EXPECT_THROW(EpsilonGreedy(2, 0.0), std::invalid_argument);
}

TEST(Policies, PropertyGreedyLearnersFindTheBestArm) {
    Rng gen(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto means = random_simplex(gen, 3);
        const std::size_t best = std::max_element(means.begin(), means.end()) - means.begin();
        std::vector<double> sorted = means;
        std::sort(sorted.rbegin(), sorted.rend());
        if (sorted[0] - sorted[1] < 0.1) continue;
        ThompsonSampler ts(3);
        EpsilonGreedy eg(3);
        int ts_best = 0, eg_best = 0;
        for (int t = 0; t < 3000; ++t) {
            const std::size_t a = ts.select(gen);
            ts.update(a, bernoulli(gen, means[a]) ? 1.0 : 0.0, gen);
            const auto b = eg.select(gen);
            eg.update(b.arm, bernoulli(gen, means[b.arm]) ? 1.0 : 0.0);
            if (t >= 2000) {
                ts_best += a == best;
                eg_best += b.arm == best;
            }
        }
        EXPECT_GT(ts_best, 850) << trial;
        EXPECT_GT(eg_best, 850) << trial;
    }
}
