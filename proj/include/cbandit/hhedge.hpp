#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbandit/policies/hedge.hpp"

namespace cbandit {

struct HHedgeRound {
    double incurred_loss = 0.0;          // sum_i x_i sum_j l_ij y_ij
    std::vector<double> compound_losses;  // l~_i = sum_j l_ij y_ij
};

/// One full-information round of hierarchical Hedge over M bases with N arms
/// each. The top Hedge is charged the compound loss of each base; base i is
/// charged row i of `losses`. Works for any M, N >= 1.
inline HHedgeRound hhedge_round(Hedge& top, std::span<Hedge> bases,
                                std::span<const std::vector<double>> losses) {
    const std::size_t m = top.arm_count();
    if (bases.size() != m || losses.size() != m)
        throw std::invalid_argument("hierarchical Hedge: top arms, bases and loss rows disagree");
    const auto x = top.distribution();
    HHedgeRound out;
    out.compound_losses.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (losses[i].size() != bases[i].arm_count())
            throw std::invalid_argument("hierarchical Hedge: loss row has wrong length");
        const auto y = bases[i].distribution();
        double compound = 0.0;
        for (std::size_t j = 0; j < losses[i].size(); ++j) {
            detail::check_unit_interval(losses[i][j], "hierarchical Hedge loss");
            compound += losses[i][j] * y[j];
        }
        out.compound_losses[i] = std::min(compound, 1.0);  // rounding can overshoot
        out.incurred_loss += x[i] * compound;
    }
    top.update(out.compound_losses);
    for (std::size_t i = 0; i < m; ++i) bases[i].update(losses[i]);
    return out;
}

}  // namespace cbandit
