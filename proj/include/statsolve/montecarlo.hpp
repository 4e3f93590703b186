#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "statsolve/dimension.hpp"
#include "statsolve/framework.hpp"
#include "statsolve/rational.hpp"
#include "statsolve/rng.hpp"

namespace statsolve {

// Configuration for an (epsilon, delta) validation run. Sample size may be
// given explicitly or derived by the caller from a dimension bound.
struct ValidationConfig {
    Rational epsilon;
    Rational delta;
    std::uint64_t sample_size = 0;  // m
    std::uint64_t trials = 1;       // R
    std::uint64_t holdout = 1;      // H, for Monte-Carlo loss estimation
    std::uint64_t seed = 0;
    Rational slack_z = Rational(2);
    int threads = 1;

    void validate() const {
        if (epsilon <= Rational(0) || epsilon >= Rational(1))
            throw InvalidParams("validation epsilon must lie in (0, 1)");
        if (delta <= Rational(0) || delta >= Rational(1))
            throw InvalidParams("validation delta must lie in (0, 1)");
        if (trials < 1) throw InvalidParams("validation needs at least one trial");
        if (holdout < 1) throw InvalidParams("validation needs a non-empty holdout");
        if (slack_z < Rational(0)) throw InvalidParams("slack_z must be nonnegative");
    }
};

// One trial: the statistical loss reached by the solver's output (exact or a
// holdout estimate), or a solver error, which counts as a failure.
struct TrialOutcome {
    Rational loss;
    bool solver_error = false;
    std::string note;
};

struct TrialRecord {
    std::uint64_t index = 0;
    Rational loss;
    bool exceeded_epsilon = false;
    bool solver_error = false;
};

struct ValidationReport {
    std::vector<TrialRecord> per_trial;
    Rational failure_fraction;
    double threshold = 0.0;  // delta + z * sqrt(delta (1 - delta) / R)
    bool pass = false;
    std::string provenance;  // resolved config echo, serialized by the caller
};

using TrialRunner = std::function<TrialOutcome(std::uint64_t trial_seed)>;

// Run R independent trials of a solver pipeline and compare the fraction of
// trials whose statistical loss exceeds epsilon against the delta threshold
// (plus normal-approximation slack). Each trial's PRNG stream is keyed by
// (seed, trial index), so the report does not depend on the worker count.
//
// Verdict rule: pass iff failure_fraction <= delta + z * sqrt(delta (1 -
// delta) / R). With the default z = 2, a solver whose true failure
// probability is exactly delta passes with probability >= 0.95 for R >= 100
// (one-sided normal approximation) — the slack absorbs sampling noise without
// hiding real contract violations.
inline ValidationReport validate_pac(const TrialRunner& trial, const ValidationConfig& config,
                                     std::string provenance = {}) {
    config.validate();
    const std::uint64_t R = config.trials;
    std::vector<TrialOutcome> outcomes(R);

    const int workers =
        std::max(1, std::min<int>(config.threads, static_cast<int>(std::min<std::uint64_t>(R, 64))));
    if (workers == 1) {
        for (std::uint64_t t = 0; t < R; ++t) outcomes[t] = trial(substream_seed(config.seed, t));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::uint64_t t = w; t < R; t += workers)
                    outcomes[t] = trial(substream_seed(config.seed, t));
            });
        }
        for (auto& th : pool) th.join();
    }

    ValidationReport report;
    report.per_trial.reserve(R);
    std::int64_t failures = 0;
    for (std::uint64_t t = 0; t < R; ++t) {
        TrialRecord rec;
        rec.index = t;
        rec.loss = outcomes[t].loss;
        rec.solver_error = outcomes[t].solver_error;
        rec.exceeded_epsilon = outcomes[t].solver_error || outcomes[t].loss > config.epsilon;
        if (rec.exceeded_epsilon) ++failures;
        report.per_trial.push_back(std::move(rec));
    }
    report.failure_fraction = Rational(failures, static_cast<std::int64_t>(R));
    const double d = config.delta.to_double();
    report.threshold =
        d + config.slack_z.to_double() * std::sqrt(d * (1.0 - d) / static_cast<double>(R));
    report.pass = report.failure_fraction.to_double() <= report.threshold;
    report.provenance = std::move(provenance);
    return report;
}

// Uniform-convergence check on an explicit finite instance: per trial, label
// a batch with a game drawn uniformly from the class, then test whether the
// worst gap between empirical and exact statistical loss over (agreeing game,
// solution) pairs stays within epsilon. Sample size defaults to
// uc_sample_size at the instance's brute-forced solution dimension.
inline ValidationReport validate_uniform_convergence(const ProblemInstance& problem,
                                                     const DistributionSpec& dist,
                                                     const ValidationConfig& config,
                                                     const PacParameters& params,
                                                     std::string provenance = {}) {
    problem.validate();
    ValidationConfig resolved = config;
    if (resolved.sample_size == 0) {
        const int d = solution_dimension(problem).dimension;
        resolved.sample_size = uc_sample_size(static_cast<std::uint64_t>(d), params);
    }
    const auto weights = dist.point_weights(problem.points.size());

    TrialRunner runner = [&problem, &dist, &weights, &resolved](std::uint64_t trial_seed) {
        SplitMix64 pick(substream_seed(trial_seed, 0));
        const int label_game = static_cast<int>(pick.below(problem.games.size()));
        const SampleBatch batch = draw_batch(problem, label_game, dist,
                                             substream_seed(trial_seed, 1), resolved.sample_size);
        Rational worst_gap(0);
        for (const int g : consistent_games(problem, batch)) {
            for (int s = 0; s < problem.num_solutions(); ++s) {
                const Rational gap =
                    (empirical_loss(problem, batch, g, s) -
                     exact_statistical_loss(problem, weights, g, s))
                        .abs();
                if (gap > worst_gap) worst_gap = gap;
            }
        }
        return TrialOutcome{worst_gap, false, {}};
    };
    return validate_pac(runner, resolved, std::move(provenance));
}

}  // namespace statsolve
