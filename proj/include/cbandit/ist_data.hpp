#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbandit/compliance.hpp"
#include "cbandit/random.hpp"

namespace cbandit {

enum class Trial : std::uint8_t { Aspirin, Heparin };

inline constexpr std::string_view to_string(Trial t) noexcept {
    return t == Trial::Aspirin ? "aspirin" : "heparin";
}

inline Trial parse_trial(std::string_view name) {
    if (name == "aspirin") return Trial::Aspirin;
    if (name == "heparin") return Trial::Heparin;
    throw std::invalid_argument("unknown trial '" + std::string(name) + "'");
}

/// Aspirin: 0 = control, 1 = aspirin. Heparin: 0 = none, 1 = low, 2 = medium.
inline constexpr std::size_t trial_arm_count(Trial t) noexcept { return t == Trial::Aspirin ? 2 : 3; }

namespace heparin {
inline constexpr std::size_t kNone = 0;
inline constexpr std::size_t kLow = 1;
inline constexpr std::size_t kMedium = 2;
}  // namespace heparin

/// Arm actually taken. Aspirin non-compliers take the opposite arm. Heparin
/// non-compliers assigned low or medium take none; those assigned none take low.
inline std::size_t derive_actual_arm(Trial trial, std::size_t assigned, bool complied) {
    if (assigned >= trial_arm_count(trial))
        throw std::out_of_range("assigned arm " + std::to_string(assigned) + " is invalid for the " +
                                std::string(to_string(trial)) + " trial");
    if (complied) return assigned;
    if (trial == Trial::Aspirin) return 1 - assigned;
    return assigned == heparin::kNone ? heparin::kLow : heparin::kNone;
}

struct PatientRecord {
    Trial trial = Trial::Aspirin;
    std::size_t assigned = 0;
    bool complied = true;
    int outcome14 = 0;  // 1 = alive at 14 days
    std::size_t actual = 0;

    friend bool operator==(const PatientRecord&, const PatientRecord&) = default;
};

inline PatientRecord make_patient(Trial trial, std::size_t assigned, bool complied, int outcome14) {
    if (outcome14 != 0 && outcome14 != 1) throw std::invalid_argument("outcome14 must be 0 or 1");
    return {trial, assigned, complied, outcome14, derive_actual_arm(trial, assigned, complied)};
}

/// Structured ingestion error. `row` is the 1-based line of the record in
/// the file (the header is line 1); 0 when the error concerns the header.
class TrialParseError : public std::runtime_error {
public:
    TrialParseError(std::size_t row, std::string column, std::string value, const std::string& what)
        : std::runtime_error(what), row_(row), column_(std::move(column)), value_(std::move(value)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }
    const std::string& value() const noexcept { return value_; }

private:
    std::size_t row_;
    std::string column_;
    std::string value_;
};

/// Which CSV columns hold assignment, compliance and the 14-day outcome, and
/// how their raw values decode.
struct ColumnMap {
    Trial trial = Trial::Aspirin;
    std::string assignment_col;
    std::string compliance_col;
    std::string outcome_col;
    std::map<std::string, std::size_t> assignment_values;
    std::map<std::string, bool> compliance_values;
    std::map<std::string, int> outcome_values;  // raw -> survived (0/1)
    std::set<std::string> missing_values{""};
};

inline ColumnMap column_map_from_json(const nlohmann::json& j) {
    ColumnMap m;
    try {
        m.trial = parse_trial(j.at("trial").get<std::string>());
        m.assignment_col = j.at("assignment_col").get<std::string>();
        m.compliance_col = j.at("compliance_col").get<std::string>();
        m.outcome_col = j.at("outcome_col").get<std::string>();
        const auto& vm = j.at("value_maps");
        for (const auto& [k, v] : vm.at("assignment").items()) m.assignment_values[k] = v.get<std::size_t>();
        for (const auto& [k, v] : vm.at("compliance").items()) m.compliance_values[k] = v.get<bool>();
        for (const auto& [k, v] : vm.at("outcome").items()) m.outcome_values[k] = v.get<int>();
        if (j.contains("missing_values")) m.missing_values = j.at("missing_values").get<std::set<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid column mapping: ") + e.what());
    }
    for (const auto& [raw, arm] : m.assignment_values)
        if (arm >= trial_arm_count(m.trial))
            throw std::invalid_argument("column mapping sends '" + raw + "' to an arm outside the trial");
    for (const auto& [raw, y] : m.outcome_values)
        if (y != 0 && y != 1) throw std::invalid_argument("outcome values must map to 0 or 1");
    return m;
}

inline ColumnMap load_column_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open column mapping '" + path + "'");
    return column_map_from_json(nlohmann::json::parse(in));
}

/// Mapping for the canonical export written by write_canonical_csv.
inline ColumnMap canonical_column_map(Trial trial) {
    ColumnMap m;
    m.trial = trial;
    m.assignment_col = "assigned";
    m.compliance_col = "complied";
    m.outcome_col = "outcome14";
    for (std::size_t a = 0; a < trial_arm_count(trial); ++a) m.assignment_values[std::to_string(a)] = a;
    m.compliance_values = {{"0", false}, {"1", true}};
    m.outcome_values = {{"0", 0}, {"1", 1}};
    return m;
}

namespace csv {

/// Reads one RFC 4180 record. Returns false at end of input.
inline bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false;
    char ch;
    while (in.get(ch)) {
        if (quoted) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            break;
        } else if (ch != '\r') {
            field += ch;
        }
    }
    fields.push_back(std::move(field));
    return true;
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace csv

struct ParseResult {
    std::vector<PatientRecord> records;
    std::size_t rows_read = 0;
    std::size_t excluded_missing_outcome = 0;
    std::size_t excluded_missing_other = 0;
};

inline ParseResult parse_trial_csv(std::istream& in, const ColumnMap& map) {
    std::vector<std::string> fields;
    if (!csv::read_record(in, fields)) throw TrialParseError(0, "", "", "CSV input is empty");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < fields.size(); ++i) index[csv::trim(fields[i])] = i;
    auto column = [&](const std::string& name) {
        const auto it = index.find(name);
        if (it == index.end()) throw TrialParseError(0, name, "", "missing column '" + name + "'");
        return it->second;
    };
    const std::size_t assign_idx = column(map.assignment_col);
    const std::size_t comply_idx = column(map.compliance_col);
    const std::size_t outcome_idx = column(map.outcome_col);
    const std::size_t width = std::max({assign_idx, comply_idx, outcome_idx}) + 1;

    ParseResult out;
    std::size_t line = 1;
    while (csv::read_record(in, fields)) {
        ++line;
        if (fields.size() == 1 && csv::trim(fields[0]).empty()) continue;  // blank line
        ++out.rows_read;
        if (fields.size() < width)
            throw TrialParseError(line, "", "", "row " + std::to_string(line) + " has " +
                                                    std::to_string(fields.size()) + " fields");
        const std::string a = csv::trim(fields[assign_idx]);
        const std::string c = csv::trim(fields[comply_idx]);
        const std::string o = csv::trim(fields[outcome_idx]);

        auto decode = [&](const auto& values, const std::string& raw, const std::string& col) {
            const auto it = values.find(raw);
            if (it == values.end())
                throw TrialParseError(line, col, raw,
                                      "row " + std::to_string(line) + ": unknown value '" + raw +
                                          "' in column '" + col + "'");
            return it->second;
        };
        if (map.missing_values.count(o)) {
            ++out.excluded_missing_outcome;
            continue;
        }
        if (map.missing_values.count(a) || map.missing_values.count(c)) {
            ++out.excluded_missing_other;
            continue;
        }
        const std::size_t assigned = decode(map.assignment_values, a, map.assignment_col);
        const bool complied = decode(map.compliance_values, c, map.compliance_col);
        const int survived = decode(map.outcome_values, o, map.outcome_col);
        out.records.push_back(make_patient(map.trial, assigned, complied, survived));
    }
    return out;
}

inline ParseResult parse_trial_csv(const std::string& path, const ColumnMap& map) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trial CSV '" + path + "'");
    return parse_trial_csv(in, map);
}

/// Audit export: trial,assigned,complied,actual,outcome14.
inline void write_canonical_csv(std::ostream& out, const std::vector<PatientRecord>& records) {
    out << "trial,assigned,complied,actual,outcome14\n";
    for (const auto& r : records)
        out << to_string(r.trial) << ',' << r.assigned << ',' << (r.complied ? 1 : 0) << ','
            << r.actual << ',' << r.outcome14 << '\n';
}

/// Patients grouped by assigned arm. Every group is non-empty.
class TrialTable {
public:
    TrialTable(Trial trial, std::vector<PatientRecord> records)
        : trial_(trial), groups_(trial_arm_count(trial)) {
        for (auto& r : records) {
            if (r.trial != trial) throw std::invalid_argument("record belongs to a different trial");
            if (r.actual != derive_actual_arm(r.trial, r.assigned, r.complied))
                throw std::invalid_argument("record's actual arm disagrees with its derivation");
            groups_.at(r.assigned).push_back(r);
        }
        for (std::size_t a = 0; a < groups_.size(); ++a)
            if (groups_[a].empty())
                throw std::invalid_argument("trial table has no patients assigned to arm " +
                                            std::to_string(a));
    }

    Trial trial() const noexcept { return trial_; }
    std::size_t arm_count() const noexcept { return groups_.size(); }
    const std::vector<PatientRecord>& group(std::size_t arm) const { return groups_.at(arm); }

    double group_mean(std::size_t arm) const {
        const auto& g = group(arm);
        double s = 0.0;
        for (const auto& r : g) s += r.outcome14;
        return s / static_cast<double>(g.size());
    }

    std::vector<double> group_means() const {
        std::vector<double> m(arm_count());
        for (std::size_t a = 0; a < m.size(); ++a) m[a] = group_mean(a);
        return m;
    }

private:
    Trial trial_;
    std::vector<std::vector<PatientRecord>> groups_;
};

/// Expected per-round reward of a uniformly random arm.
inline double table_baseline(const TrialTable& table) {
    const auto m = table.group_means();
    return std::accumulate(m.begin(), m.end(), 0.0) / static_cast<double>(m.size());
}

struct TrialStep {
    std::size_t actual = 0;
    double reward = 0.0;
};

/// Counterfactual patient: one record drawn uniformly (with replacement)
/// from every assigned-arm group; the chosen group's record is revealed.
template <class URBG>
TrialStep counterfactual_step(const TrialTable& table, std::size_t chosen, URBG& rng) {
    if (chosen >= table.arm_count()) throw std::out_of_range("chosen arm out of range");
    TrialStep out;
    for (std::size_t a = 0; a < table.arm_count(); ++a) {
        const auto& g = table.group(a);
        const auto& r = g[uniform_index(rng, g.size())];
        if (a == chosen) out = {r.actual, static_cast<double>(r.outcome14)};
    }
    return out;
}

enum class SamplingMode : std::uint8_t { WithReplacement, WithoutReplacement };

/// Per-run counterfactual sampler. Without replacement, each group is
/// consumed as a random permutation and reshuffled once exhausted.
class CounterfactualSampler {
public:
    CounterfactualSampler(std::shared_ptr<const TrialTable> table, SamplingMode mode)
        : table_(std::move(table)), mode_(mode), pools_(table_->arm_count()) {}

    const TrialTable& table() const noexcept { return *table_; }

    template <class URBG>
    TrialStep step(std::size_t chosen, URBG& rng) {
        if (mode_ == SamplingMode::WithReplacement) return counterfactual_step(*table_, chosen, rng);
        if (chosen >= table_->arm_count()) throw std::out_of_range("chosen arm out of range");
        TrialStep out;
        for (std::size_t a = 0; a < table_->arm_count(); ++a) {
            auto& pool = pools_[a];
            if (pool.empty()) {
                pool.resize(table_->group(a).size());
                std::iota(pool.begin(), pool.end(), std::size_t{0});
                std::shuffle(pool.begin(), pool.end(), rng);
            }
            const auto& r = table_->group(a)[pool.back()];
            pool.pop_back();
            if (a == chosen) out = {r.actual, static_cast<double>(r.outcome14)};
        }
        return out;
    }

private:
    std::shared_ptr<const TrialTable> table_;
    SamplingMode mode_;
    std::vector<std::vector<std::size_t>> pools_;
};

}  // namespace cbandit
