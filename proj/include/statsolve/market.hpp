#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "statsolve/combinatorics.hpp"
#include "statsolve/rational.hpp"
#include "statsolve/simplex.hpp"

namespace statsolve {

// Fisher market with indivisible goods: n players with budgets, k goods,
// bundle valuations with v_i(empty) = 0.
struct FisherInstance {
    int n = 0;
    int k = 0;
    std::vector<Rational> budgets;
    std::function<Rational(int player, std::uint64_t bundle)> value;

    void validate() const {
        if (n < 1 || k < 1) throw std::invalid_argument("market needs players and goods");
        if (static_cast<int>(budgets.size()) != n)
            throw std::invalid_argument("budget count does not match players");
        for (const auto& b : budgets)
            if (b < Rational(0)) throw std::invalid_argument("negative budget");
    }
};

struct MarketSample {
    std::uint64_t bundle;
    std::vector<Rational> values;  // v_i(bundle) for each player
};

struct MarketBatch {
    std::vector<MarketSample> samples;
};

struct MarketOutcome {
    std::vector<std::uint64_t> assignment;   // per player: empty or a sampled bundle
    std::vector<Rational> prices;            // per good
    std::vector<Rational> perturbed_budgets;
    Rational zeta;
    Rational price_slack;
    Rational excess_sq;                      // ||sum of assignments - all-ones||_2^2
    bool excess_within_bound = false;        // excess_sq <= (k/2)^2, reported not enforced
};

inline Rational bundle_price(std::uint64_t bundle, const std::vector<Rational>& prices) {
    Rational total(0);
    for (std::size_t j = 0; j < prices.size(); ++j)
        if (bundle >> j & 1) total += prices[j];
    return total;
}

// Total price at most the budget; the empty bundle is always affordable.
inline bool affordability(std::uint64_t bundle, const std::vector<Rational>& prices,
                          const Rational& budget) {
    return bundle_price(bundle, prices) <= budget;
}

// Player i's loss on bundle S: S is affordable under the perturbed budget and
// strictly preferred to the assigned bundle.
inline bool ce_player_loss(std::uint64_t bundle, const FisherInstance& instance,
                           const MarketOutcome& outcome, int player) {
    if (!affordability(bundle, outcome.prices, outcome.perturbed_budgets[player])) return false;
    return instance.value(player, bundle) > instance.value(player, outcome.assignment[player]);
}

// Aggregate loss: some player both affords and strictly prefers the bundle.
inline bool ce_loss(std::uint64_t bundle, const FisherInstance& instance,
                    const MarketOutcome& outcome) {
    for (int i = 0; i < instance.n; ++i)
        if (ce_player_loss(bundle, instance, outcome, i)) return true;
    return false;
}

inline std::vector<bool> ce_player_losses(std::uint64_t bundle, const FisherInstance& instance,
                                          const MarketOutcome& outcome) {
    std::vector<bool> out(instance.n);
    for (int i = 0; i < instance.n; ++i) out[i] = ce_player_loss(bundle, instance, outcome, i);
    return out;
}

// ||sum_i assignment(i) - 1||_2^2 with bundles read as 0/1 vectors; exact.
inline Rational excess_allocation_sq(const std::vector<std::uint64_t>& assignment, int k) {
    Rational total(0);
    for (int j = 0; j < k; ++j) {
        std::int64_t count = 0;
        for (const auto a : assignment)
            if (a >> j & 1) ++count;
        const Rational d(count - 1);
        total += d * d;
    }
    return total;
}

inline bool excess_within_bound(const Rational& excess_sq, int k) {
    return excess_sq <= Rational(static_cast<std::int64_t>(k) * k, 4);
}

namespace detail {

struct MarketLpLayout {
    int num_observed = 0;
    std::vector<int> good_var;  // good -> LP variable, -1 when unobserved
    int budget_base = 0;        // beta* variables
    int up_base = 0;            // positive budget deviation
    int down_base = 0;          // negative budget deviation
    int num_vars = 0;
};

inline MarketLpLayout market_layout(int n, int k, std::uint64_t observed_mask) {
    MarketLpLayout lay;
    lay.good_var.assign(k, -1);
    for (int j = 0; j < k; ++j)
        if (observed_mask >> j & 1) lay.good_var[j] = lay.num_observed++;
    lay.budget_base = lay.num_observed;
    lay.up_base = lay.budget_base + n;
    lay.down_base = lay.up_base + n;
    lay.num_vars = lay.down_base + n;
    return lay;
}

}  // namespace detail

// Constructive search for a consistent market outcome. Assignments are drawn
// from the sampled bundles plus the empty bundle; for each assignment an
// exact LP decides whether prices and zeta-perturbed budgets exist making
// every assigned bundle affordable and every affordable alternative
// non-preferred on the samples (strict preference realized with an explicit
// price slack). Among feasible assignments the one minimizing the squared
// excess-allocation norm wins, ties to the lexicographically first; the
// returned vertex is canonical: minimal total budget perturbation first, then
// maximal total price. Goods outside every sampled bundle are priced at
// sum(budgets) + 1 so they are never individually demandable.
//
// The empty batch short-circuits to the all-empty assignment with zero prices
// and unperturbed budgets; every constraint is vacuous there.
inline std::optional<MarketOutcome> consistent_outcome_search(const FisherInstance& instance,
                                                              const MarketBatch& batch,
                                                              const Rational& zeta,
                                                              const Rational& price_slack,
                                                              int player_cap = 4,
                                                              int sample_cap = 4) {
    instance.validate();
    if (zeta <= Rational(0)) throw std::invalid_argument("zeta must be positive");
    if (price_slack <= Rational(0)) throw std::invalid_argument("price_slack must be positive");
    const int n = instance.n;
    const int k = instance.k;
    const int m = static_cast<int>(batch.samples.size());
    if (n > player_cap) throw std::invalid_argument("player count exceeds search cap");
    if (m > sample_cap) throw std::invalid_argument("sample count exceeds search cap");
    for (const auto& s : batch.samples) {
        if ((s.bundle >> k) != 0) throw std::invalid_argument("sampled bundle outside good set");
        if (static_cast<int>(s.values.size()) != n)
            throw std::invalid_argument("sample needs one value per player");
        for (const auto& v : s.values)
            if (v < Rational(0)) throw std::invalid_argument("negative bundle value");
    }

    Rational budget_sum(0);
    for (const auto& b : instance.budgets) budget_sum += b;

    if (batch.samples.empty()) {
        MarketOutcome out;
        out.assignment.assign(n, 0);
        out.prices.assign(k, Rational(0));
        out.perturbed_budgets = instance.budgets;
        out.zeta = zeta;
        out.price_slack = price_slack;
        out.excess_sq = excess_allocation_sq(out.assignment, k);
        out.excess_within_bound = excess_within_bound(out.excess_sq, k);
        return out;
    }

    std::uint64_t observed = 0;
    for (const auto& s : batch.samples) observed |= s.bundle;
    const auto lay = detail::market_layout(n, k, observed);
    const Rational price_cap = budget_sum + zeta + price_slack + Rational(1);

    // value of a choice index: 0 = empty bundle, l >= 1 = sample l-1
    const auto choice_bundle = [&](int t) -> std::uint64_t {
        return t == 0 ? 0 : batch.samples[t - 1].bundle;
    };
    const auto choice_value = [&](int player, int t) -> Rational {
        return t == 0 ? Rational(0) : batch.samples[t - 1].values[player];
    };

    const auto bundle_coeffs = [&](std::uint64_t bundle, std::vector<Rational>& coeffs) {
        for (int j = 0; j < k; ++j)
            if (bundle >> j & 1) coeffs[lay.good_var[j]] += Rational(1);
    };

    struct Best {
        Rational excess;
        std::vector<int> choice;
        LpSolution vertex;
        bool found = false;
    } best;

    std::vector<int> choice(n, 0);
    for (;;) {
        // constraints shared by both LP stages
        std::vector<LinearConstraint> cons;
        for (int i = 0; i < n; ++i) {
            // beta*_i - u_i + w_i = beta_i
            LinearConstraint eq;
            eq.coeffs.assign(lay.num_vars, Rational(0));
            eq.coeffs[lay.budget_base + i] = Rational(1);
            eq.coeffs[lay.up_base + i] = Rational(-1);
            eq.coeffs[lay.down_base + i] = Rational(1);
            eq.rel = Relation::Equal;
            eq.rhs = instance.budgets[i];
            cons.push_back(std::move(eq));

            LinearConstraint hi;
            hi.coeffs.assign(lay.num_vars, Rational(0));
            hi.coeffs[lay.budget_base + i] = Rational(1);
            hi.rel = Relation::LessEq;
            hi.rhs = instance.budgets[i] + zeta;
            cons.push_back(std::move(hi));

            LinearConstraint lo;
            lo.coeffs.assign(lay.num_vars, Rational(0));
            lo.coeffs[lay.budget_base + i] = Rational(1);
            lo.rel = Relation::GreaterEq;
            lo.rhs = instance.budgets[i] - zeta;
            cons.push_back(std::move(lo));

            // assigned bundle affordable: p(assignment_i) <= beta*_i
            LinearConstraint afford;
            afford.coeffs.assign(lay.num_vars, Rational(0));
            bundle_coeffs(choice_bundle(choice[i]), afford.coeffs);
            afford.coeffs[lay.budget_base + i] -= Rational(1);
            afford.rel = Relation::LessEq;
            afford.rhs = Rational(0);
            cons.push_back(std::move(afford));

            // strictly preferred samples must be unaffordable with slack
            for (int l = 0; l < m; ++l) {
                if (!(batch.samples[l].values[i] > choice_value(i, choice[i]))) continue;
                LinearConstraint demand;
                demand.coeffs.assign(lay.num_vars, Rational(0));
                bundle_coeffs(batch.samples[l].bundle, demand.coeffs);
                demand.coeffs[lay.budget_base + i] -= Rational(1);
                demand.rel = Relation::GreaterEq;
                demand.rhs = price_slack;
                cons.push_back(std::move(demand));
            }
        }
        for (int v = 0; v < lay.num_observed; ++v) {
            LinearConstraint cap;
            cap.coeffs.assign(lay.num_vars, Rational(0));
            cap.coeffs[v] = Rational(1);
            cap.rel = Relation::LessEq;
            cap.rhs = price_cap;
            cons.push_back(std::move(cap));
        }

        // stage 1: smallest total budget perturbation
        LinearProgram stage1;
        stage1.num_vars = lay.num_vars;
        stage1.constraints = cons;
        stage1.objective.assign(lay.num_vars, Rational(0));
        for (int i = 0; i < n; ++i) {
            stage1.objective[lay.up_base + i] = Rational(1);
            stage1.objective[lay.down_base + i] = Rational(1);
        }
        const LpSolution s1 = simplex_solve(stage1);
        if (s1.status == LpStatus::Optimal) {
            // stage 2: fix the perturbation budget, push prices up
            LinearProgram stage2 = stage1;
            LinearConstraint fix;
            fix.coeffs = stage1.objective;
            fix.rel = Relation::LessEq;
            fix.rhs = s1.objective;
            stage2.constraints.push_back(std::move(fix));
            stage2.objective.assign(lay.num_vars, Rational(0));
            for (int v = 0; v < lay.num_observed; ++v) stage2.objective[v] = Rational(1);
            stage2.maximize = true;
            const LpSolution s2 = simplex_solve(stage2);
            if (s2.status != LpStatus::Optimal)
                throw std::logic_error("market stage-2 LP unexpectedly not optimal");

            std::vector<std::uint64_t> assignment(n);
            for (int i = 0; i < n; ++i) assignment[i] = choice_bundle(choice[i]);
            const Rational excess = excess_allocation_sq(assignment, k);
            if (!best.found || excess < best.excess) {
                best.found = true;
                best.excess = excess;
                best.choice = choice;
                best.vertex = s2;
            }
        }

        // odometer over assignment tuples, last player fastest: lexicographic
        int pos = n - 1;
        while (pos >= 0 && choice[pos] == m) choice[pos--] = 0;
        if (pos < 0) break;
        ++choice[pos];
    }

    if (!best.found) return std::nullopt;

    MarketOutcome out;
    out.assignment.resize(n);
    for (int i = 0; i < n; ++i) out.assignment[i] = choice_bundle(best.choice[i]);
    out.prices.assign(k, budget_sum + Rational(1));
    for (int j = 0; j < k; ++j)
        if (lay.good_var[j] >= 0) out.prices[j] = best.vertex.x[lay.good_var[j]];
    out.perturbed_budgets.resize(n);
    for (int i = 0; i < n; ++i) out.perturbed_budgets[i] = best.vertex.x[lay.budget_base + i];
    out.zeta = zeta;
    out.price_slack = price_slack;
    out.excess_sq = excess_allocation_sq(out.assignment, k);
    out.excess_within_bound = excess_within_bound(out.excess_sq, k);
    return out;
}

// FisherInstance whose valuations replay a batch: sampled bundles take their
// sampled values, the empty bundle is worth zero, anything else throws. Handy
// for re-validating search output strictly on observed data.
inline FisherInstance fisher_from_batch(int n, int k, std::vector<Rational> budgets,
                                        const MarketBatch& batch) {
    FisherInstance f;
    f.n = n;
    f.k = k;
    f.budgets = std::move(budgets);
    f.value = [samples = batch.samples](int player, std::uint64_t bundle) -> Rational {
        if (bundle == 0) return Rational(0);
        for (const auto& s : samples)
            if (s.bundle == bundle) return s.values[player];
        throw std::invalid_argument("fisher_from_batch: value queried on an unsampled bundle");
    };
    return f;
}

// Soundness replay for a search result: assignment drawn from the sampled
// bundles plus empty, budgets inside the zeta box, assigned bundles
// affordable, zero ce-loss on every sample, and a correct excess report.
inline bool outcome_revalidates(const FisherInstance& instance, const MarketBatch& batch,
                                const MarketOutcome& outcome) {
    const int n = instance.n;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t a = outcome.assignment[i];
        bool known = (a == 0);
        for (const auto& s : batch.samples) known = known || (s.bundle == a);
        if (!known) return false;
        if ((outcome.perturbed_budgets[i] - instance.budgets[i]).abs() > outcome.zeta) return false;
        if (!affordability(a, outcome.prices, outcome.perturbed_budgets[i])) return false;
    }
    for (const auto& s : batch.samples)
        if (ce_loss(s.bundle, instance, outcome)) return false;
    if (outcome.excess_sq != excess_allocation_sq(outcome.assignment, instance.k)) return false;
    if (outcome.excess_within_bound != excess_within_bound(outcome.excess_sq, instance.k))
        return false;
    return true;
}

}  // namespace statsolve
