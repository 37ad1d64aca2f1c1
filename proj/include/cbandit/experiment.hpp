#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbandit/agents.hpp"
#include "cbandit/environments.hpp"
#include "cbandit/ist_data.hpp"
#include "cbandit/random.hpp"

namespace cbandit {

inline constexpr int kOutputSchemaVersion = 1;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Metrics

/// Cumulative reward minus `baseline` per round.
inline double surplus(std::span<const double> rewards, double baseline) {
    const double total = std::accumulate(rewards.begin(), rewards.end(), 0.0);
    return total - static_cast<double>(rewards.size()) * baseline;
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

namespace detail {
/// Linear-interpolation quantile of sorted data.
inline double sorted_quantile(std::span<const double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}
}  // namespace detail

/// Percentile-bootstrap interval for the mean of `samples`.
inline Interval confidence_interval(std::span<const double> samples, double level = 0.95,
                                    std::uint64_t seed = 0, std::size_t resamples = 10'000) {
    if (samples.size() < 2) throw std::invalid_argument("confidence interval needs at least 2 samples");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0,1)");
    Rng rng(derive_seed(seed, 0, 0xb0075));
    std::vector<double> means(resamples);
    const std::size_t n = samples.size();
    for (auto& m : means) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += samples[uniform_index(rng, n)];
        m = s / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());
    const double tail = (1.0 - level) / 2.0;
    return {detail::sorted_quantile(means, tail), detail::sorted_quantile(means, 1.0 - tail)};
}

/// Powers of two up to T, plus T itself.
inline std::vector<std::size_t> regret_checkpoints(std::size_t horizon) {
    std::vector<std::size_t> out;
    for (std::size_t t = 1; t <= horizon; t *= 2) out.push_back(t);
    if (out.empty() || out.back() != horizon) out.push_back(horizon);
    return out;
}

inline double mean_of(std::span<const double> v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------
// Configuration

struct EnvironmentSpec {
    enum class Kind { Defier, RichPoor, Bernoulli, Population, SmallT, Trial };
    Kind kind = Kind::RichPoor;
    std::array<double, 2> bernoulli_means{0.6, 0.4};
    std::optional<PopulationModel> model;
    SmallTCompliance small_t = SmallTCompliance::PerInstance;
    std::string csv_path;
    std::string map_path;
    SamplingMode sampling = SamplingMode::WithReplacement;
    std::shared_ptr<const TrialTable> table;  // loaded by prepare()
};

struct AlgorithmSpec {
    enum class Kind { Protocol, Hierarchical, ThompsonBounded, Fixed, Uniform };
    Kind kind = Kind::Protocol;
    Protocol protocol = Protocol::Chosen;
    BaseKind base = BaseKind::Thompson;
    std::size_t fixed_arm = 0;
};

struct ExperimentConfig {
    std::string name = "experiment";
    EnvironmentSpec environment;
    AlgorithmSpec algorithm;
    std::size_t horizon = 10'000;
    std::size_t runs = 200;
    std::uint64_t seed = 1;
    double gamma = kDefaultExp3Gamma;
    std::optional<double> eta;
    double epsilon_constant = kDefaultEpsilonConstant;
    bool recycling = true;
    std::string output;
    bool emit_curves = false;
    std::string pool;  // sweep pooling group; empty = not pooled
    std::vector<std::size_t> checkpoints;  // empty = regret_checkpoints(horizon)
};

/// Rounds at which regret is recorded, ascending and unique.
inline std::vector<std::size_t> checkpoints_for(const ExperimentConfig& c) {
    if (c.checkpoints.empty()) return regret_checkpoints(c.horizon);
    std::vector<std::size_t> out = c.checkpoints;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::string algorithm_label(const AlgorithmSpec& a) {
    switch (a.kind) {
        case AlgorithmSpec::Kind::Protocol:
            return std::string(to_string(a.protocol)) + "/" + std::string(to_string(a.base));
        case AlgorithmSpec::Kind::Hierarchical: return "hb/" + std::string(to_string(a.base));
        case AlgorithmSpec::Kind::ThompsonBounded: return "tb/" + std::string(to_string(a.base));
        case AlgorithmSpec::Kind::Fixed: return "fixed/" + std::to_string(a.fixed_arm);
        case AlgorithmSpec::Kind::Uniform: return "uniform";
    }
    return "?";
}

inline std::string environment_label(const EnvironmentSpec& e) {
    using K = EnvironmentSpec::Kind;
    switch (e.kind) {
        case K::Defier: return "defier";
        case K::RichPoor: return "rich_poor";
        case K::Bernoulli: return "bernoulli";
        case K::Population: return "population";
        case K::SmallT: return "small_t";
        case K::Trial: return "trial";
    }
    return "?";
}

namespace detail {

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

inline EnvironmentSpec environment_from_json(const nlohmann::json& j, const std::filesystem::path& base) {
    EnvironmentSpec e;
    const auto kind = j.at("kind").get<std::string>();
    using K = EnvironmentSpec::Kind;
    if (kind == "defier") {
        e.kind = K::Defier;
    } else if (kind == "rich_poor") {
        e.kind = K::RichPoor;
    } else if (kind == "bernoulli") {
        e.kind = K::Bernoulli;
        const auto m = j.at("means").get<std::vector<double>>();
        if (m.size() != 2) throw ConfigError("bernoulli environment needs two means");
        e.bernoulli_means = {m[0], m[1]};
        for (double v : m)
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("bernoulli means must lie in [0,1]");
    } else if (kind == "population") {
        e.kind = K::Population;
        e.model = population_from_json(j.at("model"));
    } else if (kind == "small_t") {
        e.kind = K::SmallT;
        const auto mode = j.value("compliance", std::string("per_instance"));
        if (mode == "per_instance") e.small_t = SmallTCompliance::PerInstance;
        else if (mode == "per_round") e.small_t = SmallTCompliance::PerRound;
        else throw ConfigError("small_t compliance must be per_instance or per_round");
    } else if (kind == "trial") {
        e.kind = K::Trial;
        e.csv_path = resolve(base, j.at("csv").get<std::string>()).string();
        e.map_path = resolve(base, j.at("map").get<std::string>()).string();
        const auto s = j.value("sampling", std::string("with_replacement"));
        if (s == "with_replacement") e.sampling = SamplingMode::WithReplacement;
        else if (s == "without_replacement") e.sampling = SamplingMode::WithoutReplacement;
        else throw ConfigError("sampling must be with_replacement or without_replacement");
    } else {
        throw ConfigError("unknown environment kind '" + kind + "'");
    }
    return e;
}

inline AlgorithmSpec algorithm_from_json(const nlohmann::json& j) {
    AlgorithmSpec a;
    const auto kind = j.at("kind").get<std::string>();
    using K = AlgorithmSpec::Kind;
    if (kind == "protocol") {
        a.kind = K::Protocol;
        a.protocol = parse_protocol(j.at("protocol").get<std::string>());
        a.base = parse_base_kind(j.at("base").get<std::string>());
    } else if (kind == "hb") {
        a.kind = K::Hierarchical;
        a.base = parse_base_kind(j.value("base", std::string("epsilon_greedy")));
    } else if (kind == "tb") {
        a.kind = K::ThompsonBounded;
        a.base = parse_base_kind(j.value("base", std::string("epsilon_greedy")));
    } else if (kind == "fixed") {
        a.kind = K::Fixed;
        a.fixed_arm = j.at("arm").get<std::size_t>();
    } else if (kind == "uniform") {
        a.kind = K::Uniform;
    } else {
        throw ConfigError("unknown algorithm kind '" + kind + "'");
    }
    return a;
}

}  // namespace detail

/// Parses a config object. Relative input paths resolve against `base_dir`.
inline ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
    ExperimentConfig c;
    try {
        c.name = j.value("name", c.name);
        c.environment = detail::environment_from_json(j.at("environment"), base_dir);
        c.algorithm = detail::algorithm_from_json(j.at("algorithm"));
        c.horizon = j.value("horizon", c.horizon);
        c.runs = j.value("runs", c.runs);
        c.seed = j.value("seed", c.seed);
        c.gamma = j.value("gamma", c.gamma);
        if (j.contains("eta") && !j.at("eta").is_null()) c.eta = j.at("eta").get<double>();
        c.epsilon_constant = j.value("epsilon_constant", c.epsilon_constant);
        c.recycling = j.value("recycling", c.recycling);
        c.output = j.value("output", c.output);
        c.emit_curves = j.value("emit_curves", c.emit_curves);
        c.pool = j.value("pool", c.pool);
        c.checkpoints = j.value("checkpoints", c.checkpoints);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid experiment config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j, path.parent_path());
}

/// Loads data files and checks arm counts. Throws ConfigError before any
/// run starts.
inline void prepare(ExperimentConfig& c) {
    if (c.horizon < 1) throw ConfigError("horizon must be >= 1");
    if (c.runs < 1) throw ConfigError("runs must be >= 1");
    if (!(c.gamma >= 0.0 && c.gamma <= 1.0)) throw ConfigError("gamma must lie in [0,1]");
    if (c.eta && !(*c.eta >= 0.0)) throw ConfigError("eta must be >= 0");
    if (!(c.epsilon_constant > 0.0)) throw ConfigError("epsilon_constant must be > 0");
    for (std::size_t t : c.checkpoints)
        if (t < 1 || t > c.horizon) throw ConfigError("checkpoints must lie in [1, horizon]");
    std::size_t arms = 2;
    if (c.environment.kind == EnvironmentSpec::Kind::Trial) {
        if (!c.environment.table) {
            try {
                const auto map = load_column_map(c.environment.map_path);
                auto parsed = parse_trial_csv(c.environment.csv_path, map);
                c.environment.table = std::make_shared<const TrialTable>(map.trial, std::move(parsed.records));
            } catch (const TrialParseError& e) {
                throw ConfigError(std::string("trial data: ") + e.what());
            } catch (const std::exception& e) {
                throw ConfigError(std::string("trial data: ") + e.what());
            }
        }
        arms = c.environment.table->arm_count();
    }
    if (c.algorithm.kind == AlgorithmSpec::Kind::Fixed && c.algorithm.fixed_arm >= arms)
        throw ConfigError("fixed arm is outside the environment's arms");
}

inline Environment make_environment(const EnvironmentSpec& e, Rng& env_rng) {
    using K = EnvironmentSpec::Kind;
    switch (e.kind) {
        case K::Defier: return make_defier_env();
        case K::RichPoor: return make_rich_poor_env();
        case K::Bernoulli: return make_bernoulli_env(e.bernoulli_means);
        case K::Population: return PopulationEnvironment(e.model.value());
        case K::SmallT: return make_small_t_env(env_rng, e.small_t);
        case K::Trial:
            if (!e.table) throw ConfigError("trial environment used before prepare()");
            return TrialEnvironment(e.table, e.sampling);
    }
    throw ConfigError("unknown environment");
}

inline Agent make_agent(const ExperimentConfig& c, std::size_t arms) {
    const PolicyParams params{c.gamma, c.eta, c.epsilon_constant};
    HierarchicalConfig hb{c.algorithm.base, params, c.gamma, std::nullopt, c.recycling};
    using K = AlgorithmSpec::Kind;
    switch (c.algorithm.kind) {
        case K::Protocol: return ProtocolBandit(c.algorithm.base, c.algorithm.protocol, arms, params);
        case K::Hierarchical: return HierarchicalAgent(arms, hb);
        case K::ThompsonBounded: return ThompsonBoundedAgent(arms, ThompsonBoundedConfig{hb, c.recycling});
        case K::Fixed: return FixedArmAgent{c.algorithm.fixed_arm};
        case K::Uniform: return UniformAgent{arms};
    }
    throw ConfigError("unknown algorithm");
}

// ---------------------------------------------------------------------------
// Running

struct RunResult {
    std::size_t run_id = 0;
    std::uint64_t seed = 0;
    double cum_reward = 0.0;
    double surplus = 0.0;
    double expected_surplus = 0.0;     // sum of advised arms' expected rewards minus T * baseline
    std::vector<double> regret;        // best * t - cumulative reward, at checkpoints
    std::vector<double> pseudo_regret; // best * t - sum of advised arms' expected rewards
};

struct RunSummary {
    std::string name;
    std::string algorithm;
    std::string environment;
    std::size_t horizon = 0;
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    double baseline = 0.0;
    double best_value = 0.0;
    double mean_cum_reward = 0.0;
    double mean_surplus = 0.0;
    Interval surplus_ci;
    double mean_expected_surplus = 0.0;
    Interval expected_surplus_ci;
    std::vector<std::size_t> checkpoints;
    std::vector<double> mean_regret;
    std::vector<double> mean_pseudo_regret;
};

struct ExperimentResult {
    RunSummary summary;
    std::vector<RunResult> runs;
};

inline RunResult run_single(const ExperimentConfig& c, std::size_t run_index) {
    RunResult out;
    out.run_id = run_index;
    out.seed = derive_seed(c.seed, run_index);
    Rng env_rng = make_rng(c.seed, run_index, 0);
    Rng policy_rng = make_rng(c.seed, run_index, 1);
    Environment env = make_environment(c.environment, env_rng);
    Agent agent = make_agent(c, env.arm_count());
    const auto values = env.chosen_arm_values();
    const double best = *std::max_element(values.begin(), values.end());
    const double baseline = env.baseline();
    const auto checkpoints = checkpoints_for(c);
    std::size_t next_cp = 0;
    double expected = 0.0;
    for (std::size_t t = 1; t <= c.horizon; ++t) {
        const std::size_t chosen = agent_select(agent, policy_rng);
        const StepOutcome step = env.step(chosen, env_rng);
        const InteractionRecord rec{chosen, step.actual, step.reward, step.subpop};
        agent_observe(agent, rec, policy_rng);
        out.cum_reward += step.reward;
        expected += values[chosen];
        if (next_cp < checkpoints.size() && checkpoints[next_cp] == t) {
            out.regret.push_back(best * static_cast<double>(t) - out.cum_reward);
            out.pseudo_regret.push_back(best * static_cast<double>(t) - expected);
            ++next_cp;
        }
    }
    const double horizon = static_cast<double>(c.horizon);
    out.surplus = out.cum_reward - horizon * baseline;
    out.expected_surplus = expected - horizon * baseline;
    return out;
}

struct ExecutionOptions {
    std::size_t threads = 0;  // 0 = from CBANDIT_THREADS, else hardware concurrency
    bool serial = false;
};

inline std::size_t resolve_thread_count(const ExecutionOptions& opt) {
    if (opt.serial) return 1;
    if (opt.threads > 0) return opt.threads;
    if (const char* env = std::getenv("CBANDIT_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs every replicate and aggregates in run-index order. Output does not
/// depend on the thread count.
inline ExperimentResult run_experiment(ExperimentConfig config, const ExecutionOptions& opt = {}) {
    prepare(config);
    std::vector<RunResult> runs(config.runs);
    const std::size_t threads = std::min(resolve_thread_count(opt), config.runs);
    if (threads <= 1) {
        for (std::size_t r = 0; r < config.runs; ++r) runs[r] = run_single(config, r);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t r; (r = next.fetch_add(1)) < config.runs;) {
                    try {
                        runs[r] = run_single(config, r);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    RunSummary s;
    s.name = config.name;
    s.algorithm = algorithm_label(config.algorithm);
    s.environment = environment_label(config.environment);
    s.horizon = config.horizon;
    s.runs = config.runs;
    s.seed = config.seed;
    // Small-T draws a fresh instance per run, so its baseline is averaged.
    double baseline_sum = 0.0;
    double best_sum = 0.0;
    for (std::size_t r = 0; r < config.runs; ++r) {
        if (config.environment.kind != EnvironmentSpec::Kind::SmallT && r > 0) break;
        Rng env_rng = make_rng(config.seed, r, 0);
        const Environment e = make_environment(config.environment, env_rng);
        baseline_sum += e.baseline();
        best_sum += e.best_value();
    }
    const double n_envs = config.environment.kind == EnvironmentSpec::Kind::SmallT ? static_cast<double>(config.runs) : 1.0;
    s.baseline = baseline_sum / n_envs;
    s.best_value = best_sum / n_envs;

    std::vector<double> cum(runs.size()), sur(runs.size()), exp_sur(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) {
        cum[r] = runs[r].cum_reward;
        sur[r] = runs[r].surplus;
        exp_sur[r] = runs[r].expected_surplus;
    }
    s.mean_cum_reward = mean_of(cum);
    s.mean_surplus = mean_of(sur);
    s.mean_expected_surplus = mean_of(exp_sur);
    if (runs.size() >= 2) {
        s.surplus_ci = confidence_interval(sur, 0.95, config.seed);
        s.expected_surplus_ci = confidence_interval(exp_sur, 0.95, config.seed);
    } else {
        s.surplus_ci = {s.mean_surplus, s.mean_surplus};
        s.expected_surplus_ci = {s.mean_expected_surplus, s.mean_expected_surplus};
    }
    s.checkpoints = checkpoints_for(config);
    s.mean_regret.assign(s.checkpoints.size(), 0.0);
    s.mean_pseudo_regret.assign(s.checkpoints.size(), 0.0);
    for (const auto& r : runs) {
        for (std::size_t i = 0; i < s.checkpoints.size(); ++i) {
            s.mean_regret[i] += r.regret[i];
            s.mean_pseudo_regret[i] += r.pseudo_regret[i];
        }
    }
    for (std::size_t i = 0; i < s.checkpoints.size(); ++i) {
        s.mean_regret[i] /= static_cast<double>(runs.size());
        s.mean_pseudo_regret[i] /= static_cast<double>(runs.size());
    }
    return {std::move(s), std::move(runs)};
}

// ---------------------------------------------------------------------------
// Output

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string runs_csv(const std::vector<RunResult>& runs) {
    std::string out = "run_id,seed,cum_reward,surplus\n";
    for (const auto& r : runs) {
        out += std::to_string(r.run_id) + ',' + std::to_string(r.seed) + ',' + format_double(r.cum_reward) +
               ',' + format_double(r.surplus) + '\n';
    }
    return out;
}

inline std::string curves_csv(const RunSummary& s) {
    std::string out = "t,mean_regret,mean_pseudo_regret\n";
    for (std::size_t i = 0; i < s.checkpoints.size(); ++i)
        out += std::to_string(s.checkpoints[i]) + ',' + format_double(s.mean_regret[i]) + ',' +
               format_double(s.mean_pseudo_regret[i]) + '\n';
    return out;
}

inline nlohmann::ordered_json summary_json(const RunSummary& s) {
    nlohmann::ordered_json j;
    j["schema_version"] = kOutputSchemaVersion;
    j["name"] = s.name;
    j["algorithm"] = s.algorithm;
    j["environment"] = s.environment;
    j["horizon"] = s.horizon;
    j["runs"] = s.runs;
    j["seed"] = s.seed;
    j["baseline"] = s.baseline;
    j["best_value"] = s.best_value;
    j["mean_cum_reward"] = s.mean_cum_reward;
    j["mean_surplus"] = s.mean_surplus;
    j["surplus_ci"] = {s.surplus_ci.lo, s.surplus_ci.hi};
    j["mean_expected_surplus"] = s.mean_expected_surplus;
    j["expected_surplus_ci"] = {s.expected_surplus_ci.lo, s.expected_surplus_ci.hi};
    j["final_mean_regret"] = s.mean_regret.empty() ? 0.0 : s.mean_regret.back();
    j["final_mean_pseudo_regret"] = s.mean_pseudo_regret.empty() ? 0.0 : s.mean_pseudo_regret.back();
    return j;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

/// Writes summary.json, runs.csv and optionally curves.csv into `dir`.
inline void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir, bool emit_curves) {
    write_text(dir / "summary.json", summary_json(r.summary).dump(2) + "\n");
    write_text(dir / "runs.csv", runs_csv(r.runs));
    if (emit_curves) write_text(dir / "curves.csv", curves_csv(r.summary));
}

/// Per-run surpluses summed across experiments with identical run counts,
/// e.g. the aspirin and heparin simulations of one algorithm.
inline nlohmann::ordered_json pooled_summary(const std::string& pool,
                                             const std::vector<const ExperimentResult*>& parts,
                                             std::uint64_t seed) {
    if (parts.empty()) throw std::invalid_argument("nothing to pool");
    const std::size_t n = parts.front()->runs.size();
    std::vector<double> total(n, 0.0);
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (const auto* p : parts) {
        if (p->runs.size() != n) throw ConfigError("pooled experiments must have the same run count");
        for (std::size_t r = 0; r < n; ++r) total[r] += p->runs[r].surplus;
        members.push_back(p->summary.name);
    }
    nlohmann::ordered_json j;
    j["schema_version"] = kOutputSchemaVersion;
    j["pool"] = pool;
    j["members"] = members;
    j["runs"] = n;
    j["mean_surplus"] = mean_of(total);
    if (n >= 2) {
        const auto ci = confidence_interval(total, 0.95, seed);
        j["surplus_ci"] = {ci.lo, ci.hi};
    } else {
        j["surplus_ci"] = {mean_of(total), mean_of(total)};
    }
    return j;
}

}  // namespace cbandit
