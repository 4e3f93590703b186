#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "statsolve/combinatorics.hpp"
#include "statsolve/rational.hpp"
#include "statsolve/rng.hpp"
#include "statsolve/simplex.hpp"

namespace statsolve {

// Transferable-utility cooperative game over players {0,...,n-1}; coalition
// values are nonnegative with v(empty) = 0. The value map may be an oracle;
// explicit games store a table indexed by coalition bitmask.
struct TUGame {
    int n = 0;
    std::function<Rational(std::uint64_t coalition)> value;

    Rational operator()(std::uint64_t coalition) const { return value(coalition); }

    static TUGame from_table(int n, std::vector<Rational> table) {
        if (table.size() != (1ULL << n)) throw std::invalid_argument("TU table size must be 2^n");
        if (!table[0].is_zero()) throw std::invalid_argument("TU game requires v(empty) = 0");
        TUGame g;
        g.n = n;
        g.value = [tab = std::move(table)](std::uint64_t c) { return tab[c]; };
        return g;
    }
};

using PayoffVector = std::vector<Rational>;

inline Rational coalition_payoff(const PayoffVector& x, std::uint64_t coalition) {
    Rational total(0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (coalition >> i & 1) total += x[i];
    return total;
}

// 1 iff the coalition can profitably deviate: x(S) < v(S). The empty
// coalition never blocks.
inline bool tu_blocking_loss(std::uint64_t coalition, const TUGame& game, const PayoffVector& x) {
    if (coalition == 0) return false;
    return coalition_payoff(x, coalition) < game(coalition);
}

struct CoalitionSample {
    std::uint64_t coalition;
    Rational value;
};

// Minimal-subsidy payoff for the sampled constraints: minimize total payoff
// subject to x(S_j) >= v_j and x >= 0. Exact simplex keeps the output
// deterministic; the result satisfies every sampled constraint, so its
// empirical blocking loss is zero by construction.
inline PayoffVector solve_core_lp(const std::vector<CoalitionSample>& batch, int n) {
    if (n <= 0) throw std::invalid_argument("solve_core_lp: need at least one player");
    // one constraint per distinct coalition, keeping the largest demand
    std::vector<std::pair<std::uint64_t, Rational>> demands;
    for (const auto& s : batch) {
        if (s.coalition == 0) continue;
        if (s.value < Rational(0)) throw std::invalid_argument("solve_core_lp: negative value");
        bool merged = false;
        for (auto& d : demands)
            if (d.first == s.coalition) {
                if (s.value > d.second) d.second = s.value;
                merged = true;
                break;
            }
        if (!merged) demands.emplace_back(s.coalition, s.value);
    }
    if (demands.empty()) return PayoffVector(n, Rational(0));

    LinearProgram lp;
    lp.num_vars = n;
    lp.objective.assign(n, Rational(1));
    for (const auto& [coalition, value] : demands) {
        LinearConstraint c;
        c.coeffs.assign(n, Rational(0));
        for (int i = 0; i < n; ++i)
            if (coalition >> i & 1) c.coeffs[i] = Rational(1);
        c.rel = Relation::GreaterEq;
        c.rhs = value;
        lp.constraints.push_back(std::move(c));
    }
    const LpSolution sol = simplex_solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::logic_error("solve_core_lp: LP unexpectedly not optimal");
    return sol.x;
}

struct RescaleResult {
    PayoffVector payoff;
    bool subsidy_required = false;
};

// Distribute the surplus v(N) - x(N) equally. Payoffs only increase, so no
// sampled constraint breaks. If the payoff already exceeds the grand value,
// the core is empty relative to the samples: x is returned unchanged with the
// subsidy flag set.
inline RescaleResult rescale_to_efficiency(const PayoffVector& x, const Rational& grand_value) {
    Rational total(0);
    for (const auto& xi : x) total += xi;
    if (total > grand_value) return {x, true};
    const Rational bump = (grand_value - total) / Rational(static_cast<std::int64_t>(x.size()));
    RescaleResult out{x, false};
    for (auto& xi : out.payoff) xi += bump;
    return out;
}

// --- generator families (deterministic per seed) ---

// v(S) = total weight of edges inside S; such games always have nonempty
// cores (split each edge weight between its endpoints).
inline TUGame make_induced_subgraph_game(int n, const std::vector<std::vector<Rational>>& weights) {
    TUGame g;
    g.n = n;
    g.value = [n, weights](std::uint64_t c) {
        Rational total(0);
        for (int i = 0; i < n; ++i) {
            if (!(c >> i & 1)) continue;
            for (int j = i + 1; j < n; ++j)
                if (c >> j & 1) total += weights[i][j];
        }
        return total;
    };
    return g;
}

inline TUGame make_induced_subgraph_game(int n, std::uint64_t seed, int max_weight = 10) {
    SplitMix64 rng(substream_seed(seed, 0));
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            w[i][j] = w[j][i] = Rational(static_cast<std::int64_t>(rng.below(max_weight + 1)));
    return make_induced_subgraph_game(n, w);
}

// v(S) = 1 iff T is contained in S.
inline TUGame make_unanimity_game(int n, std::uint64_t required) {
    TUGame g;
    g.n = n;
    g.value = [required](std::uint64_t c) {
        return ((c & required) == required) ? Rational(1) : Rational(0);
    };
    return g;
}

// v(S) = (sum of member stakes)^2, a supermodular family.
inline TUGame make_supermodular_game(int n, std::uint64_t seed, int max_stake = 5) {
    SplitMix64 rng(substream_seed(seed, 1));
    std::vector<Rational> stake(n);
    for (int i = 0; i < n; ++i) stake[i] = Rational(static_cast<std::int64_t>(rng.below(max_stake + 1)));
    TUGame g;
    g.n = n;
    g.value = [stake](std::uint64_t c) {
        Rational sum(0);
        for (std::size_t i = 0; i < stake.size(); ++i)
            if (c >> i & 1) sum += stake[i];
        return sum * sum;
    };
    return g;
}

}  // namespace statsolve
