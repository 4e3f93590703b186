#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "statsolve/condorcet.hpp"
#include "statsolve/distribution.hpp"
#include "statsolve/hedonic.hpp"
#include "statsolve/montecarlo.hpp"
#include "statsolve/rational.hpp"
#include "statsolve/tu_core.hpp"

namespace statsolve {

// Standard end-to-end PAC experiments: generate a game, draw a labelled
// batch, run the consistent solver, measure the statistical loss of its
// output. Each trial derives all of its streams from the trial seed alone.

struct TuPipelineConfig {
    int n = 6;
    std::string generator = "induced-subgraph";  // induced-subgraph | unanimity | supermodular
    int max_weight = 10;
    bool exact_loss = false;  // enumerate the distribution support instead of a holdout
};

inline TUGame make_tu_game(const TuPipelineConfig& cfg, std::uint64_t seed) {
    if (cfg.generator == "induced-subgraph")
        return make_induced_subgraph_game(cfg.n, seed, cfg.max_weight);
    if (cfg.generator == "unanimity") {
        SplitMix64 rng(substream_seed(seed, 7));
        const std::uint64_t full = (1ULL << cfg.n) - 1;
        return make_unanimity_game(cfg.n, 1 + rng.below(full));
    }
    if (cfg.generator == "supermodular") return make_supermodular_game(cfg.n, seed, cfg.max_weight);
    throw std::invalid_argument("unknown TU generator: " + cfg.generator);
}

inline TrialRunner make_tu_trial_runner(const TuPipelineConfig& cfg, const DistributionSpec& dist,
                                        const ValidationConfig& vc) {
    if (dist.is_point_kind()) throw std::invalid_argument("TU pipeline needs a subset distribution");
    return [cfg, dist, vc](std::uint64_t trial_seed) -> TrialOutcome {
        const TUGame game = make_tu_game(cfg, substream_seed(trial_seed, 0));
        std::vector<Rational> table(1ULL << cfg.n);
        for (std::uint64_t mask = 0; mask < table.size(); ++mask) table[mask] = game(mask);

        std::vector<CoalitionSample> batch;
        batch.reserve(vc.sample_size);
        const std::uint64_t batch_seed = substream_seed(trial_seed, 1);
        for (std::uint64_t j = 0; j < vc.sample_size; ++j) {
            const std::uint64_t mask = dist.draw_subset(batch_seed, j);
            batch.push_back({mask, table[mask]});
        }
        const PayoffVector payoff = solve_core_lp(batch, cfg.n);

        if (cfg.exact_loss) {
            Rational loss(0);
            for (const auto& [mask, weight] : dist.subset_support())
                if (mask != 0 && coalition_payoff(payoff, mask) < table[mask]) loss += weight;
            return {loss, false, {}};
        }
        const std::uint64_t holdout_seed = substream_seed(trial_seed, 2);
        std::int64_t violations = 0;
        for (std::uint64_t j = 0; j < vc.holdout; ++j) {
            const std::uint64_t mask = dist.draw_subset(holdout_seed, j);
            if (mask != 0 && coalition_payoff(payoff, mask) < table[mask]) ++violations;
        }
        return {Rational(violations, static_cast<std::int64_t>(vc.holdout)), false, {}};
    };
}

struct HedonicPipelineConfig {
    int n = 4;
    std::string generator = "additively-separable";  // additively-separable | friend-appreciation
    int max_weight = 10;
    bool allow_negative = false;
    bool strict = true;
    bool exact_loss = true;
};

inline HedonicGame make_hedonic_game(const HedonicPipelineConfig& cfg, std::uint64_t seed) {
    if (cfg.generator == "additively-separable")
        return make_additively_separable_game(cfg.n, seed, cfg.max_weight, cfg.allow_negative);
    if (cfg.generator == "friend-appreciation") return make_friend_appreciation_game(cfg.n, seed);
    throw std::invalid_argument("unknown hedonic generator: " + cfg.generator);
}

inline TrialRunner make_hedonic_trial_runner(const HedonicPipelineConfig& cfg,
                                             const DistributionSpec& dist,
                                             const ValidationConfig& vc) {
    if (dist.is_point_kind())
        throw std::invalid_argument("hedonic pipeline needs a subset distribution");
    return [cfg, dist, vc](std::uint64_t trial_seed) -> TrialOutcome {
        const HedonicGame game = make_hedonic_game(cfg, substream_seed(trial_seed, 0));

        std::vector<HedonicSample> batch;
        batch.reserve(vc.sample_size);
        const std::uint64_t batch_seed = substream_seed(trial_seed, 1);
        for (std::uint64_t j = 0; j < vc.sample_size; ++j)
            batch.push_back(make_hedonic_sample(dist.draw_subset(batch_seed, j), game));

        const auto partition = consistent_partition_bruteforce(batch, game, cfg.strict);
        if (!partition) return {Rational(1), true, "NoConsistentPartition"};

        if (cfg.exact_loss) {
            Rational loss(0);
            for (const auto& [mask, weight] : dist.subset_support())
                if (mask != 0 && hedonic_blocking_loss(mask, game, *partition, cfg.strict))
                    loss += weight;
            return {loss, false, {}};
        }
        const std::uint64_t holdout_seed = substream_seed(trial_seed, 2);
        std::int64_t violations = 0;
        for (std::uint64_t j = 0; j < vc.holdout; ++j) {
            const std::uint64_t mask = dist.draw_subset(holdout_seed, j);
            if (mask != 0 && hedonic_blocking_loss(mask, game, *partition, cfg.strict)) ++violations;
        }
        return {Rational(violations, static_cast<std::int64_t>(vc.holdout)), false, {}};
    };
}

struct CondorcetPipelineConfig {
    int num_candidates = 10;
    int num_voters = 11;                  // odd keeps the tournament tie-free
    std::string generator = "single-peaked";  // single-peaked | single-crossing
};

inline PreferenceProfile make_condorcet_profile(const CondorcetPipelineConfig& cfg,
                                                std::uint64_t seed) {
    if (cfg.generator == "single-peaked") {
        std::vector<int> axis(cfg.num_candidates);
        for (int i = 0; i < cfg.num_candidates; ++i) axis[i] = i;
        return generate_single_peaked(axis, cfg.num_voters, seed);
    }
    if (cfg.generator == "single-crossing") {
        SplitMix64 rng(substream_seed(seed, 11));
        std::vector<std::pair<Rational, Rational>> params;
        params.reserve(cfg.num_candidates);
        for (int i = 0; i < cfg.num_candidates; ++i)
            params.emplace_back(Rational(static_cast<std::int64_t>(rng.below(1000)), 7),
                                Rational(static_cast<std::int64_t>(rng.below(1000)), 13) -
                                    Rational(500, 13));
        return generate_single_crossing(cfg.num_voters, seed, params);
    }
    throw std::invalid_argument("unknown condorcet generator: " + cfg.generator);
}

// Statistical loss of a chosen candidate: probability that a fresh candidate
// drawn from the distribution beats it.
inline Rational condorcet_statistical_loss(const TournamentGraph& t,
                                           const std::vector<Rational>& weights, int chosen) {
    Rational loss(0);
    for (int c = 0; c < t.num_candidates; ++c)
        if (t.beats(c, chosen)) loss += weights[c];
    return loss;
}

inline TrialRunner make_condorcet_trial_runner(const CondorcetPipelineConfig& cfg,
                                               const DistributionSpec& dist,
                                               const ValidationConfig& vc) {
    if (!dist.is_point_kind())
        throw std::invalid_argument("condorcet pipeline needs a point distribution over candidates");
    return [cfg, dist, vc](std::uint64_t trial_seed) -> TrialOutcome {
        const PreferenceProfile profile = make_condorcet_profile(cfg, substream_seed(trial_seed, 0));
        std::vector<int> sample;
        sample.reserve(vc.sample_size);
        const std::uint64_t batch_seed = substream_seed(trial_seed, 1);
        for (std::uint64_t j = 0; j < vc.sample_size; ++j)
            sample.push_back(
                static_cast<int>(dist.draw_point(batch_seed, j, cfg.num_candidates)));
        const auto winner = empirical_condorcet_winner(profile, sample);
        if (!winner) return {Rational(1), true, "NoEmpiricalWinner"};
        const TournamentGraph t = build_tournament(profile);
        const auto weights = dist.point_weights(cfg.num_candidates);
        return {condorcet_statistical_loss(t, weights, *winner), false, {}};
    };
}

}  // namespace statsolve
