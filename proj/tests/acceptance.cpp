// Acceptance suite: runs every contract the toolkit promises, one line per
// criterion, nonzero exit when anything fails. Tolerances and thresholds are
// pinned here in code.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "domain_instances.hpp"
#include "market_oracle.hpp"
#include "oracle_helpers.hpp"
#include "statsolve/condorcet.hpp"
#include "statsolve/dimension.hpp"
#include "statsolve/experiments.hpp"
#include "statsolve/json_io.hpp"
#include "statsolve/market.hpp"
#include "statsolve/montecarlo.hpp"

using namespace statsolve;

namespace {

int g_failures = 0;

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d %s — %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// ---- 1. TU-core PAC contract ----
void criterion_tu_pac() {
    const auto start = std::chrono::steady_clock::now();
    PacParameters params;
    params.epsilon = Rational(1, 5);
    params.delta = Rational(1, 10);

    TuPipelineConfig tu;
    tu.n = 6;
    tu.generator = "induced-subgraph";

    ValidationConfig vc;
    vc.epsilon = params.epsilon;
    vc.delta = params.delta;
    vc.sample_size = consistent_sample_size(6, params);
    vc.trials = 200;
    vc.holdout = 20000;
    vc.seed = 20250801;
    vc.threads = 4;

    const auto dist = uniform_nonempty_subsets_dist(6, 0);
    const auto rep = validate_pac(make_tu_trial_runner(tu, dist, vc), vc);
    const double elapsed = seconds_since(start);
    const double threshold = 0.1 + 2.0 * std::sqrt(0.09 / 200.0);
    const bool pass =
        rep.failure_fraction.to_double() <= threshold && elapsed < 60.0;
    report(1, "TU-core PAC contract (n=6, m=" + std::to_string(vc.sample_size) + ", R=200, H=20000)",
           pass,
           "failure_fraction " + rep.failure_fraction.str() + " vs " + fmt(threshold) + ", " +
               fmt(elapsed) + "s");
}

// ---- 2. consistency soundness across all four domains ----
void criterion_consistency_soundness() {
    int silent_violations = 0;
    int explicit_errors = 0;

    // TU: the LP payoff must satisfy every sampled constraint
    {
        const auto dist = uniform_nonempty_subsets_dist(6, 0);
        for (int trial = 0; trial < 1000; ++trial) {
            SplitMix64 rng(substream_seed(100000, trial));
            const int n = 3 + static_cast<int>(rng.below(4));
            const DistributionSpec d = uniform_nonempty_subsets_dist(n, 0);
            const TUGame game = (trial % 3 == 2) ? make_supermodular_game(n, trial)
                                                 : make_induced_subgraph_game(n, trial);
            std::vector<CoalitionSample> batch;
            const int m = 1 + static_cast<int>(rng.below(15));
            for (int j = 0; j < m; ++j) {
                const std::uint64_t mask = d.draw_subset(substream_seed(5, trial), j);
                batch.push_back({mask, game(mask)});
            }
            const auto x = solve_core_lp(batch, n);
            for (const auto& s : batch)
                if (tu_blocking_loss(s.coalition, game, x)) ++silent_violations;
        }
    }
    // hedonic: partition replays to zero loss, or the miss is explicit and honest
    {
        for (int trial = 0; trial < 1000; ++trial) {
            SplitMix64 rng(substream_seed(200000, trial));
            const int n = 3 + static_cast<int>(rng.below(3));
            const DistributionSpec d = uniform_nonempty_subsets_dist(n, 0);
            const HedonicGame game =
                (trial % 2 == 0)
                    ? make_additively_separable_game(n, trial, 8, trial % 4 == 0)
                    : make_friend_appreciation_game(n, trial);
            std::vector<HedonicSample> batch;
            const int m = 1 + static_cast<int>(rng.below(8));
            for (int j = 0; j < m; ++j)
                batch.push_back(make_hedonic_sample(d.draw_subset(substream_seed(6, trial), j), game));
            const auto pi = consistent_partition_bruteforce(batch, game);
            if (!pi) {
                ++explicit_errors;
                // honesty replay: every partition really is blocked by a sample
                Partition probe;
                first_rgs(probe.rgs, n);
                do {
                    bool blocked = false;
                    for (const auto& s : batch)
                        blocked = blocked || hedonic_blocking_loss(s.coalition, game, probe);
                    if (!blocked) ++silent_violations;
                } while (next_rgs(probe.rgs));
                continue;
            }
            for (const auto& s : batch)
                if (hedonic_blocking_loss(s.coalition, game, *pi)) ++silent_violations;
        }
    }
    // condorcet: sampled winner beats every sampled rival, or none exists
    {
        for (int trial = 0; trial < 1000; ++trial) {
            SplitMix64 rng(substream_seed(300000, trial));
            const int c = 3 + static_cast<int>(rng.below(4));
            PreferenceProfile profile;
            if (trial % 2 == 0) {
                std::vector<int> axis(c);
                for (int i = 0; i < c; ++i) axis[i] = i;
                profile = generate_single_peaked(axis, 7, substream_seed(7, trial));
            } else {
                profile = generate_random_profile(c, 5, substream_seed(8, trial));
            }
            std::vector<int> sample;
            const int m = 1 + static_cast<int>(rng.below(6));
            for (int j = 0; j < m; ++j) sample.push_back(static_cast<int>(rng.below(c)));
            const auto w = empirical_condorcet_winner(profile, sample);
            const auto t = build_tournament(profile);
            if (w) {
                for (int cand : sample)
                    if (cand != *w && !t.beats(*w, cand)) ++silent_violations;
            } else {
                ++explicit_errors;
                // honesty replay: no sampled candidate beats all sampled rivals
                for (int cand : sample) {
                    bool all = true;
                    for (int other : sample)
                        if (other != cand && !t.beats(cand, other)) all = false;
                    if (all) ++silent_violations;
                }
            }
        }
    }
    // market: the found outcome re-validates in full
    {
        for (int trial = 0; trial < 1000; ++trial) {
            SplitMix64 rng(substream_seed(400000, trial));
            const int n = 1 + static_cast<int>(rng.below(2));
            const int k = 1 + static_cast<int>(rng.below(2));
            const int m = 1 + static_cast<int>(rng.below(2));
            FisherInstance inst;
            inst.n = n;
            inst.k = k;
            for (int i = 0; i < n; ++i)
                inst.budgets.push_back(Rational(static_cast<std::int64_t>(rng.below(4))));
            MarketBatch batch;
            for (int j = 0; j < m; ++j) {
                MarketSample s;
                s.bundle = 1 + rng.below((1ULL << k) - 1);
                bool dup = false;
                for (const auto& prev : batch.samples) dup = dup || prev.bundle == s.bundle;
                if (dup) continue;
                for (int i = 0; i < n; ++i)
                    s.values.push_back(Rational(static_cast<std::int64_t>(rng.below(7))));
                batch.samples.push_back(std::move(s));
            }
            inst.value = [samples = batch.samples](int i, std::uint64_t b) -> Rational {
                if (b == 0) return Rational(0);
                for (const auto& s : samples)
                    if (s.bundle == b) return s.values[i];
                return Rational(0);
            };
            const auto out = consistent_outcome_search(inst, batch, Rational(1, 8), Rational(1, 100));
            if (!out) {
                ++explicit_errors;
                if (testing::market_feasible_oracle(inst, batch, Rational(1, 8), Rational(1, 100)))
                    ++silent_violations;
                continue;
            }
            if (!outcome_revalidates(inst, batch, *out)) ++silent_violations;
        }
    }
    report(2, "consistency soundness (1000 game/batch pairs per domain)", silent_violations == 0,
           "silent violations " + std::to_string(silent_violations) + ", explicit errors " +
               std::to_string(explicit_errors));
}

// ---- 3. argmax dimension ----
void criterion_argmax_dimension() {
    const auto start = std::chrono::steady_clock::now();
    const auto instance = builtin_argmax_instance(4);
    const auto r = solution_dimension(instance);
    const double elapsed = seconds_since(start);
    const bool pass = r.dimension == 1 && witness_revalidates(instance, r.witness) && elapsed < 1.0;
    report(3, "argmax instance (|X| = 4) has dimension exactly 1", pass,
           "d = " + std::to_string(r.dimension) + ", " + fmt(elapsed) + "s");
}

// ---- 4. hedonic dimension bound ----
void criterion_hedonic_dimension() {
    const auto start = std::chrono::steady_clock::now();
    int checked = 0;
    bool all_ok = true;
    for (int i = 0; i < 20; ++i) {
        const int n = (i < 10) ? 3 : 4;
        std::vector<HedonicGame> games;
        for (int g = 0; g < 2; ++g)
            games.push_back(
                make_additively_separable_game(n, substream_seed(7000 + i, g), 6, true));
        const auto instance = testing::hedonic_instance(n, games);
        all_ok = all_ok && verify_dimension_bound(instance, n);
        ++checked;
    }
    const double elapsed = seconds_since(start);
    report(4, "hedonic dimension <= n on 20 explicit instances (n in {3,4})",
           all_ok && checked == 20 && elapsed < 30.0,
           std::to_string(checked) + " instances, " + fmt(elapsed) + "s");
}

// ---- 5. VC collapse ----
void criterion_vc_collapse() {
    const int vc = vc_dimension(4, threshold_hypotheses(4));
    const int sd = solution_dimension(builtin_threshold_instance(4)).dimension;
    report(5, "thresholds on a line: solution dimension = VC dimension = 1", vc == 1 && sd == 1,
           "Sd = " + std::to_string(sd) + ", VC = " + std::to_string(vc));
}

// ---- 6. condorcet ----
void criterion_condorcet() {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = true;

    // (a) the appendix cycle profile has no empirical winner
    PreferenceProfile cycle;
    cycle.num_candidates = 3;
    cycle.rankings = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    const bool a = !empirical_condorcet_winner(cycle, {0, 1, 2}).has_value();
    pass = pass && a;
    detail += std::string("cycle->none ") + (a ? "ok" : "FAIL");

    // (b) 100 seeded single-peaked profiles: transitive, winners always exist
    {
        bool ok = true;
        std::vector<int> axis{0, 1, 2, 3, 4, 5};
        for (int seed = 0; seed < 100; ++seed) {
            const auto p = generate_single_peaked(axis, 9, substream_seed(8000, seed));
            ok = ok && is_transitive(build_tournament(p));
            SplitMix64 rng(substream_seed(8001, seed));
            std::vector<int> sample;
            for (int j = 0; j < 5; ++j) sample.push_back(static_cast<int>(rng.below(6)));
            ok = ok && empirical_condorcet_winner(p, sample).has_value();
        }
        pass = pass && ok;
        detail += std::string(", 100 single-peaked ") + (ok ? "ok" : "FAIL");
    }

    // (c) PAC run at eps = 1/10, delta = 1/20, m = 30, R = 200
    {
        CondorcetPipelineConfig cc;
        cc.num_candidates = 10;
        cc.num_voters = 11;
        ValidationConfig vc;
        vc.epsilon = Rational(1, 10);
        vc.delta = Rational(1, 20);
        vc.sample_size = condorcet_sample_size(vc.epsilon, vc.delta);  // = 30
        vc.trials = 200;
        vc.seed = 20250802;
        vc.threads = 4;
        const auto rep = validate_pac(make_condorcet_trial_runner(cc, uniform_points_dist(0), vc), vc);
        const bool ok = vc.sample_size == 30 && rep.pass;
        pass = pass && ok;
        detail += ", PAC m=30 failure_fraction " + rep.failure_fraction.str() +
                  (ok ? " ok" : " FAIL");
    }

    // (d) every generated tie-free tournament on <= 5 candidates obeys
    //     2^d <= three_cycle_core_size + 2
    {
        bool ok = true;
        int graphs = 0;
        std::vector<PreferenceProfile> profiles{cycle};
        std::vector<int> axis{0, 1, 2, 3, 4};
        for (int seed = 0; seed < 30; ++seed)
            profiles.push_back(generate_single_peaked(axis, 7, substream_seed(8100, seed)));
        for (int seed = 0; seed < 40; ++seed)
            profiles.push_back(generate_random_profile(5, 5, substream_seed(8200, seed)));
        for (const auto& profile : profiles) {
            const auto t = build_tournament(profile);
            if (t.has_ties()) continue;
            ++graphs;
            const int k = three_cycle_core_size(t);
            const int d = solution_dimension(condorcet_instance({profile})).dimension;
            ok = ok && ((1 << d) <= k + 2);
        }
        pass = pass && ok && graphs >= 50;
        detail += ", " + std::to_string(graphs) + " tournaments vs log2(k+2) " + (ok ? "ok" : "FAIL");
    }

    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 120.0;
    report(6, "condorcet: cycle, single-peaked corpus, PAC run, cycle-core bound", pass,
           detail + ", " + fmt(elapsed) + "s");
}

// ---- 7. market search vs oracle ----
void criterion_market() {
    const auto start = std::chrono::steady_clock::now();
    const Rational zeta(1, 4);
    const Rational slack(1, 100);
    bool pass = true;
    int found = 0;
    for (int trial = 0; trial < 20; ++trial) {
        SplitMix64 rng(substream_seed(9000, trial));
        const int n = 1 + static_cast<int>(rng.below(3));
        const int k = 1 + static_cast<int>(rng.below(4));
        const int m = 1 + static_cast<int>(rng.below(3));
        FisherInstance inst;
        inst.n = n;
        inst.k = k;
        for (int i = 0; i < n; ++i)
            inst.budgets.push_back(Rational(static_cast<std::int64_t>(rng.below(5))));
        MarketBatch batch;
        for (int j = 0; j < m; ++j) {
            MarketSample s;
            s.bundle = 1 + rng.below((1ULL << k) - 1);
            bool dup = false;
            for (const auto& prev : batch.samples) dup = dup || prev.bundle == s.bundle;
            if (dup) continue;
            for (int i = 0; i < n; ++i)
                s.values.push_back(Rational(static_cast<std::int64_t>(rng.below(9))));
            batch.samples.push_back(std::move(s));
        }
        inst.value = [samples = batch.samples](int i, std::uint64_t b) -> Rational {
            if (b == 0) return Rational(0);
            for (const auto& s : samples)
                if (s.bundle == b) return s.values[i];
            return Rational(0);
        };

        const auto got = consistent_outcome_search(inst, batch, zeta, slack);
        const bool oracle = testing::market_feasible_oracle(inst, batch, zeta, slack);
        pass = pass && (got.has_value() == oracle);
        if (got) {
            ++found;
            pass = pass && outcome_revalidates(inst, batch, *got);
            for (int i = 0; i < n; ++i)
                pass = pass && (got->perturbed_budgets[i] - inst.budgets[i]).abs() <= zeta;
            for (const auto& s : batch.samples) pass = pass && !ce_loss(s.bundle, inst, *got);
            pass = pass && got->excess_sq == excess_allocation_sq(got->assignment, k);
        }
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 60.0;
    report(7, "market search vs exhaustive oracle on 20 seeded instances", pass,
           std::to_string(found) + " found, all re-validated, " + fmt(elapsed) + "s");
}

// ---- 8. LP exactness ----
void criterion_lp_exactness() {
    bool pass = true;
    int compared = 0;

    const auto check_lp = [&](const LinearProgram& lp) {
        const auto got = simplex_solve(lp);
        const auto oracle = testing::bfs_minimum(lp);
        if (got.status == LpStatus::Optimal) {
            pass = pass && oracle.has_value() && got.objective == *oracle;
            ++compared;
        } else if (got.status == LpStatus::Infeasible) {
            pass = pass && !oracle.has_value();
        }
    };

    {
        LinearProgram lp;  // min x s.t. x >= 3
        lp.num_vars = 1;
        lp.objective = {Rational(1)};
        lp.constraints.push_back({{Rational(1)}, Relation::GreaterEq, Rational(3)});
        check_lp(lp);
    }
    {
        LinearProgram lp;  // min x1 + x2 s.t. x1 + x2 >= 1
        lp.num_vars = 2;
        lp.objective = {Rational(1), Rational(1)};
        lp.constraints.push_back({{Rational(1), Rational(1)}, Relation::GreaterEq, Rational(1)});
        check_lp(lp);
        const auto got = simplex_solve(lp);
        pass = pass && got.x == std::vector<Rational>{Rational(1), Rational(0)};
    }
    {
        LinearProgram lp;  // infeasible box
        lp.num_vars = 1;
        lp.objective = {Rational(1)};
        lp.constraints.push_back({{Rational(1)}, Relation::GreaterEq, Rational(1)});
        lp.constraints.push_back({{Rational(1)}, Relation::LessEq, Rational(0)});
        check_lp(lp);
    }

    SplitMix64 rng(10000);
    for (int trial = 0; trial < 100; ++trial) {
        LinearProgram lp;
        lp.num_vars = 1 + static_cast<int>(rng.below(4));
        lp.objective.resize(lp.num_vars);
        for (auto& c : lp.objective) c = Rational(static_cast<std::int64_t>(rng.below(5)));
        const int rows = 1 + static_cast<int>(rng.below(6));
        for (int r = 0; r < rows; ++r) {
            LinearConstraint c;
            c.coeffs.resize(lp.num_vars);
            for (auto& v : c.coeffs) v = Rational(static_cast<std::int64_t>(rng.below(7)) - 3);
            const auto kind = rng.below(5);
            c.rel = kind <= 1 ? Relation::LessEq
                              : (kind <= 3 ? Relation::GreaterEq : Relation::Equal);
            c.rhs = Rational(static_cast<std::int64_t>(rng.below(9)) - 1);
            lp.constraints.push_back(std::move(c));
        }
        check_lp(lp);
    }
    report(8, "LP exactness: simplex equals BFS enumeration (zero tolerance)", pass,
           std::to_string(compared) + " optima compared exactly");
}

// ---- 9. ERM equivalence ----
void criterion_erm() {
    bool pass = true;
    SplitMix64 rng(11000);
    for (int trial = 0; trial < 50; ++trial) {
        const int points = 4 + static_cast<int>(rng.below(3));
        const int games = 2 + static_cast<int>(rng.below(3));
        const int sols = 3 + static_cast<int>(rng.below(4));
        ProblemInstance p;
        for (int i = 0; i < points; ++i) p.points.push_back("x" + std::to_string(i));
        p.labels = {"0", "1"};
        p.games.assign(games, std::vector<int>(points));
        for (auto& g : p.games)
            for (auto& y : g) y = static_cast<int>(rng.below(2));
        for (int i = 0; i < sols; ++i) p.solutions.push_back("s" + std::to_string(i));
        std::vector<std::vector<std::vector<bool>>> tab(
            games, std::vector<std::vector<bool>>(sols, std::vector<bool>(points)));
        for (auto& per_game : tab)
            for (auto& row : per_game)
                for (std::size_t x = 0; x < row.size(); ++x) row[x] = rng.below(2) == 1;
        p.loss = [tab](int x, int g, int s) { return tab[g][s][x]; };

        const int label_game = static_cast<int>(rng.below(games));
        SampleBatch batch;
        const int m = 2 + static_cast<int>(rng.below(5));
        for (int j = 0; j < m; ++j) {
            const int x = static_cast<int>(rng.below(points));
            batch.points.emplace_back(x, p.games[label_game][x]);
        }

        // oracles: raw loops, recomputing losses from the table
        const auto agree = [&](int g) {
            for (const auto& [x, y] : batch.points)
                if (p.games[g][x] != y) return false;
            return true;
        };
        const auto loss_of = [&](int g, int s) {
            std::int64_t cnt = 0;
            for (const auto& [x, y] : batch.points)
                if (tab[g][s][x]) ++cnt;
            return Rational(cnt, static_cast<std::int64_t>(batch.size()));
        };

        {
            Rational best(2);
            int best_s = -1;
            for (int s = 0; s < sols; ++s) {
                Rational worst(0);
                for (int g = 0; g < games; ++g)
                    if (agree(g) && loss_of(g, s) > worst) worst = loss_of(g, s);
                if (worst < best) {
                    best = worst;
                    best_s = s;
                }
            }
            const auto got = erm_worst_case(p, batch);
            pass = pass && got.solution == best_s && got.objective == best;
        }
        {
            std::vector<Rational> prior(games, Rational(0));
            std::int64_t rest = 10;
            for (int g = 0; g + 1 < games; ++g) {
                const std::int64_t part = static_cast<std::int64_t>(rng.below(rest + 1));
                prior[g] = Rational(part, 10);
                rest -= part;
            }
            prior[games - 1] = Rational(rest, 10);
            Rational mass(0);
            for (int g = 0; g < games; ++g)
                if (agree(g)) mass += prior[g];
            if (mass.is_zero()) continue;
            Rational best(2);
            int best_s = -1;
            for (int s = 0; s < sols; ++s) {
                Rational avg(0);
                for (int g = 0; g < games; ++g)
                    if (agree(g)) avg += (prior[g] / mass) * loss_of(g, s);
                if (avg < best) {
                    best = avg;
                    best_s = s;
                }
            }
            const auto got = erm_bayesian(p, prior, batch);
            pass = pass && got.solution == best_s && got.objective == best;
        }
    }
    report(9, "ERM solvers equal exhaustive min-max / min-average oracles", pass,
           "50 random instances, exact objective equality");
}

// ---- 10. combinator laws ----
void criterion_combinators() {
    bool truth_tables = true;
    bool union_bound = true;
    bool restricted_lemma = true;  // dimension of the fixed-s2 restriction <= part dimension
    int dim_violations = 0;
    SplitMix64 rng(12000);

    const auto random_parts = [&](int points, int games, int sols) {
        ProblemInstance p;
        for (int i = 0; i < points; ++i) p.points.push_back("x" + std::to_string(i));
        p.labels = {"0", "1"};
        p.games.assign(games, std::vector<int>(points));
        for (auto& g : p.games)
            for (auto& y : g) y = static_cast<int>(rng.below(2));
        for (int i = 0; i < sols; ++i) p.solutions.push_back("s" + std::to_string(i));
        std::vector<std::vector<std::vector<bool>>> tab(
            games, std::vector<std::vector<bool>>(sols, std::vector<bool>(points)));
        for (auto& per_game : tab)
            for (auto& row : per_game)
                for (std::size_t x = 0; x < row.size(); ++x) row[x] = rng.below(2) == 1;
        p.loss = [tab](int x, int g, int s) { return tab[g][s][x]; };
        return p;
    };

    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_parts(4, 2, 3);
        auto b = random_parts(4, 2, 3);
        b.games = a.games;
        const auto conj = conjoin_losses(a, b);
        for (int x = 0; x < 4; ++x)
            for (int g = 0; g < 2; ++g)
                for (int s = 0; s < conj.num_solutions(); ++s) {
                    const auto [s1, s2] = split_conjoined_solution(s, b.num_solutions());
                    truth_tables = truth_tables &&
                                   conj.loss(x, g, s) == (a.loss(x, g, s1) && b.loss(x, g, s2));
                }
        auto c = random_parts(4, 2, 3);
        c.games = a.games;
        const auto disj = disjoin_losses({a, c});
        const auto weights = uniform_points_dist(0).point_weights(4);
        for (int g = 0; g < 2; ++g)
            for (int s = 0; s < 3; ++s) {
                for (int x = 0; x < 4; ++x)
                    truth_tables = truth_tables &&
                                   disj.loss(x, g, s) == (a.loss(x, g, s) || c.loss(x, g, s));
                union_bound = union_bound &&
                              exact_statistical_loss(disj, weights, g, s) <=
                                  exact_statistical_loss(a, weights, g, s) +
                                      exact_statistical_loss(c, weights, g, s);
            }

        // separable-conjunction dimension check on the composite
        const int d1 = solution_dimension(a).dimension;
        const int d2 = solution_dimension(b).dimension;
        const int dc = solution_dimension(conj).dimension;
        if (dc > std::max(d1, d2)) ++dim_violations;

        // what provably holds: restricting the conjunction to any fixed s2
        // never exceeds the first part's dimension
        for (int s2 = 0; s2 < b.num_solutions(); ++s2) {
            auto restricted = a;
            restricted.loss = [la = a.loss, lb = b.loss, s2](int x, int g, int s1) {
                return la(x, g, s1) && lb(x, g, s2);
            };
            restricted_lemma =
                restricted_lemma && solution_dimension(restricted).dimension <= d1;
        }
    }
    // The composite-dimension <= max-part-dimension inequality is checked as
    // stated and reported honestly: it is false in general (a minimal
    // counterexample with part dimensions 1, 1 and composite dimension 2 is
    // pinned in test_dimension.cpp), so random corpora violate it routinely.
    const bool dim_bound = dim_violations == 0;
    const std::string dim_text =
        dim_bound ? std::string("dim <= max parts ok")
                  : "dim <= max parts FAILS on " + std::to_string(dim_violations) +
                        "/20 (inequality false in general; counterexample in test_dimension.cpp)";
    report(10, "combinator laws: truth tables, union bound, composite dimension",
           truth_tables && union_bound && dim_bound,
           std::string("truth tables ") + (truth_tables ? "ok" : "FAIL") + ", union bound " +
               (union_bound ? "ok" : "FAIL") + ", " + dim_text + ", fixed-s2 restriction bound " +
               (restricted_lemma ? "holds" : "FAILS"));
}

// ---- 11. reproducibility ----
void criterion_reproducibility() {
    TuPipelineConfig tu;
    tu.n = 5;
    ValidationConfig vc;
    vc.epsilon = Rational(1, 5);
    vc.delta = Rational(1, 10);
    vc.sample_size = 40;
    vc.trials = 60;
    vc.holdout = 2000;
    vc.seed = 424242;
    const auto dist = uniform_nonempty_subsets_dist(5, 0);

    const auto run = [&](int threads) {
        auto c = vc;
        c.threads = threads;
        const auto rep = validate_pac(make_tu_trial_runner(tu, dist, c), c, "{\"suite\":\"acceptance\"}");
        return report_to_json(rep).dump() + "\n" + report_to_csv(rep);
    };
    const std::string base = run(1);
    const bool same_run = run(1) == base;
    const bool thread_invariant = run(4) == base && run(3) == base;

    CondorcetPipelineConfig cc;
    cc.num_candidates = 8;
    cc.num_voters = 9;
    ValidationConfig cv;
    cv.epsilon = Rational(1, 8);
    cv.delta = Rational(1, 10);
    cv.sample_size = 12;
    cv.trials = 50;
    cv.seed = 99999;
    const auto crun = [&](int threads) {
        auto c = cv;
        c.threads = threads;
        const auto rep = validate_pac(make_condorcet_trial_runner(cc, uniform_points_dist(0), c), c);
        return report_to_json(rep).dump();
    };
    const bool condorcet_invariant = crun(1) == crun(5);

    report(11, "byte-identical reports under replay and any thread count",
           same_run && thread_invariant && condorcet_invariant,
           std::string("replay ") + (same_run ? "ok" : "FAIL") + ", threads " +
               (thread_invariant && condorcet_invariant ? "ok" : "FAIL"));
}

}  // namespace

int main() {
    std::printf("statsolve acceptance suite\n");
    criterion_tu_pac();
    criterion_consistency_soundness();
    criterion_argmax_dimension();
    criterion_hedonic_dimension();
    criterion_vc_collapse();
    criterion_condorcet();
    criterion_market();
    criterion_lp_exactness();
    criterion_erm();
    criterion_combinators();
    criterion_reproducibility();
    if (g_failures == 0) {
        std::printf("all 11 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
