#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "statsolve/distribution.hpp"
#include "statsolve/rational.hpp"
#include "statsolve/rng.hpp"

namespace statsolve {

class EmptyBatch : public std::runtime_error {
public:
    EmptyBatch() : std::runtime_error("empirical loss is undefined on an empty batch") {}
};

class InvalidParams : public std::invalid_argument {
public:
    explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

class NoConsistentGame : public std::runtime_error {
public:
    NoConsistentGame() : std::runtime_error("no game agrees with the batch") {}
};

// An explicit finite statistical-solution problem: a point space, a label
// space, a finite class of games (total maps point -> label), an opaque
// solution list, and a binary local loss over (point, game, solution).
struct ProblemInstance {
    std::vector<std::string> points;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> games;  // games[g][x] = label index
    std::vector<std::string> solutions;
    std::function<bool(int x, int g, int s)> loss;

    int num_points() const { return static_cast<int>(points.size()); }
    int num_labels() const { return static_cast<int>(labels.size()); }
    int num_games() const { return static_cast<int>(games.size()); }
    int num_solutions() const { return static_cast<int>(solutions.size()); }

    void validate() const {
        if (points.empty()) throw std::invalid_argument("instance has no points");
        if (games.empty()) throw std::invalid_argument("instance has no games");
        if (solutions.empty()) throw std::invalid_argument("instance has no solutions");
        for (const auto& g : games) {
            if (static_cast<int>(g.size()) != num_points())
                throw std::invalid_argument("game is not total on the point space");
            for (int y : g)
                if (y < 0 || y >= num_labels())
                    throw std::invalid_argument("game maps to an unknown label");
        }
        if (!loss) throw std::invalid_argument("instance has no loss function");
    }

    // Evaluate the loss over all triples into an explicit table[g][s][x].
    std::vector<std::vector<std::vector<bool>>> materialize_loss() const {
        std::vector<std::vector<std::vector<bool>>> table(num_games());
        for (int g = 0; g < num_games(); ++g) {
            table[g].resize(num_solutions());
            for (int s = 0; s < num_solutions(); ++s) {
                table[g][s].resize(num_points());
                for (int x = 0; x < num_points(); ++x) table[g][s][x] = loss(x, g, s);
            }
        }
        return table;
    }
};

inline ProblemInstance instance_from_loss_table(std::vector<std::string> points,
                                                std::vector<std::string> labels,
                                                std::vector<std::vector<int>> games,
                                                std::vector<std::string> solutions,
                                                std::vector<std::vector<std::vector<bool>>> table) {
    ProblemInstance p;
    p.points = std::move(points);
    p.labels = std::move(labels);
    p.games = std::move(games);
    p.solutions = std::move(solutions);
    p.loss = [tab = std::move(table)](int x, int g, int s) { return tab[g][s][x]; };
    return p;
}

// A labelled i.i.d. sample: (point index, label index) pairs, duplicates
// allowed.
struct SampleBatch {
    std::vector<std::pair<int, int>> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

inline SampleBatch draw_batch(const ProblemInstance& problem, int game,
                              const DistributionSpec& dist, std::uint64_t run_seed,
                              std::size_t m) {
    SampleBatch batch;
    batch.points.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const int x = static_cast<int>(dist.draw_point(run_seed, j, problem.points.size()));
        batch.points.emplace_back(x, problem.games[game][x]);
    }
    return batch;
}

struct PacParameters {
    Rational epsilon;
    Rational delta;
    Rational alpha1 = Rational(8);  // uniform-convergence constant
    Rational alpha2 = Rational(4);  // consistent-solver constant

    void validate() const {
        if (epsilon <= Rational(0) || epsilon >= Rational(1))
            throw InvalidParams("epsilon must lie strictly inside (0, 1)");
        if (delta <= Rational(0) || delta >= Rational(1))
            throw InvalidParams("delta must lie strictly inside (0, 1)");
        if (alpha1 <= Rational(0) || alpha2 <= Rational(0))
            throw InvalidParams("alpha constants must be positive");
    }
};

inline bool game_agrees(const ProblemInstance& problem, int game, const SampleBatch& batch) {
    for (const auto& [x, y] : batch.points)
        if (problem.games[game][x] != y) return false;
    return true;
}

// Fraction of batch points where the loss fires; exact.
inline Rational empirical_loss(const ProblemInstance& problem, const SampleBatch& batch, int game,
                               int solution) {
    if (batch.empty()) throw EmptyBatch();
    if (!game_agrees(problem, game, batch))
        throw std::invalid_argument("empirical_loss: game disagrees with batch labels");
    std::int64_t violations = 0;
    for (const auto& [x, y] : batch.points)
        if (problem.loss(x, game, solution)) ++violations;
    return Rational(violations, static_cast<std::int64_t>(batch.size()));
}

// Indices of all games agreeing with every batch pair; the empty batch keeps
// the whole class.
inline std::vector<int> consistent_games(const ProblemInstance& problem, const SampleBatch& batch) {
    std::vector<int> agreeing;
    for (int g = 0; g < problem.num_games(); ++g)
        if (game_agrees(problem, g, batch)) agreeing.push_back(g);
    return agreeing;
}

// Expected loss under explicit point weights; exact.
inline Rational exact_statistical_loss(const ProblemInstance& problem,
                                       const std::vector<Rational>& point_weights, int game,
                                       int solution) {
    if (point_weights.size() != problem.points.size())
        throw std::invalid_argument("exact_statistical_loss: weight count does not match points");
    Rational total(0);
    for (int x = 0; x < problem.num_points(); ++x)
        if (problem.loss(x, game, solution)) total += point_weights[x];
    return total;
}

inline Rational exact_statistical_loss(const ProblemInstance& problem,
                                       const DistributionSpec& dist, int game, int solution) {
    return exact_statistical_loss(problem, dist.point_weights(problem.points.size()), game,
                                  solution);
}

struct LossEstimate {
    Rational estimate;   // exact violation fraction over the holdout
    double half_width;   // 95% normal-approximation half width
};

// Monte-Carlo statistical loss over a fresh holdout; deterministic given the
// seed.
inline LossEstimate statistical_loss_estimate(const ProblemInstance& problem,
                                              const DistributionSpec& dist, int game, int solution,
                                              std::size_t holdout_size, std::uint64_t run_seed) {
    if (holdout_size == 0) throw std::invalid_argument("statistical_loss_estimate: empty holdout");
    std::int64_t violations = 0;
    for (std::size_t j = 0; j < holdout_size; ++j) {
        const int x = static_cast<int>(dist.draw_point(run_seed, j, problem.points.size()));
        if (problem.loss(x, game, solution)) ++violations;
    }
    const Rational p(violations, static_cast<std::int64_t>(holdout_size));
    const double pd = p.to_double();
    const double hw = 1.96 * std::sqrt(pd * (1.0 - pd) / static_cast<double>(holdout_size));
    return {p, hw};
}

// m >= alpha1 * (d + ln(1/delta)) / eps^2, rounded up.
inline std::uint64_t uc_sample_size(std::uint64_t dimension, const PacParameters& params) {
    params.validate();
    const long double eps = params.epsilon.to_long_double();
    const long double inv_delta = 1.0L / params.delta.to_long_double();
    const long double a1 = params.alpha1.to_long_double();
    const long double m = a1 * (static_cast<long double>(dimension) + std::log(inv_delta)) / (eps * eps);
    return static_cast<std::uint64_t>(std::ceil(m));
}

// m >= (alpha2/eps) * (d * ln(1/eps) + ln(1/delta)), rounded up, with the
// d-term's log clamped below at 1 so the bound stays positive and monotone
// for eps >= 1/e.
inline std::uint64_t consistent_sample_size(std::uint64_t dimension, const PacParameters& params) {
    params.validate();
    const long double eps = params.epsilon.to_long_double();
    const long double inv_delta = 1.0L / params.delta.to_long_double();
    const long double a2 = params.alpha2.to_long_double();
    long double log_inv_eps = std::log(1.0L / eps);
    if (log_inv_eps < 1.0L) log_inv_eps = 1.0L;
    const long double m =
        (a2 / eps) * (static_cast<long double>(dimension) * log_inv_eps + std::log(inv_delta));
    return static_cast<std::uint64_t>(std::ceil(m));
}

// Conjunction of two losses over a paired solution space. Both operands must
// share points, labels and games; the composite solution index is
// s = s1 * |S2| + s2 (row major).
inline ProblemInstance conjoin_losses(const ProblemInstance& first, const ProblemInstance& second) {
    if (first.points.size() != second.points.size() || first.games != second.games)
        throw std::invalid_argument("conjoin_losses: operands must share points and games");
    ProblemInstance composite;
    composite.points = first.points;
    composite.labels = first.labels;
    composite.games = first.games;
    const int s2 = second.num_solutions();
    composite.solutions.reserve(first.solutions.size() * second.solutions.size());
    for (const auto& a : first.solutions)
        for (const auto& b : second.solutions) composite.solutions.push_back(a + "*" + b);
    composite.loss = [l1 = first.loss, l2 = second.loss, s2](int x, int g, int s) {
        return l1(x, g, s / s2) && l2(x, g, s % s2);
    };
    return composite;
}

inline std::pair<int, int> split_conjoined_solution(int composite_solution, int second_size) {
    return {composite_solution / second_size, composite_solution % second_size};
}

// Disjunction of k losses sharing the full tuple (points, labels, games,
// solutions).
inline ProblemInstance disjoin_losses(const std::vector<ProblemInstance>& parts) {
    if (parts.empty()) throw std::invalid_argument("disjoin_losses: needs at least one part");
    for (const auto& p : parts)
        if (p.points.size() != parts[0].points.size() || p.games != parts[0].games ||
            p.solutions.size() != parts[0].solutions.size())
            throw std::invalid_argument("disjoin_losses: parts must share points, games, solutions");
    ProblemInstance composite;
    composite.points = parts[0].points;
    composite.labels = parts[0].labels;
    composite.games = parts[0].games;
    composite.solutions = parts[0].solutions;
    std::vector<std::function<bool(int, int, int)>> fns;
    fns.reserve(parts.size());
    for (const auto& p : parts) fns.push_back(p.loss);
    composite.loss = [fns = std::move(fns)](int x, int g, int s) {
        for (const auto& f : fns)
            if (f(x, g, s)) return true;
        return false;
    };
    return composite;
}

// Union-bound budget per disjunct.
inline Rational epsilon_split(const Rational& epsilon, int k) {
    if (k < 1) throw InvalidParams("epsilon_split: k must be >= 1");
    return epsilon / Rational(k);
}

struct ErmResult {
    int solution;
    Rational objective;
};

// Minimize, over solutions, the worst empirical loss across all games that
// agree with the batch. Ties go to the earliest solution index.
inline ErmResult erm_worst_case(const ProblemInstance& problem, const SampleBatch& batch) {
    if (batch.empty()) throw EmptyBatch();
    const std::vector<int> agreeing = consistent_games(problem, batch);
    if (agreeing.empty()) throw NoConsistentGame();
    ErmResult best{-1, Rational(2)};
    for (int s = 0; s < problem.num_solutions(); ++s) {
        Rational worst(0);
        for (int g : agreeing) {
            const Rational l = empirical_loss(problem, batch, g, s);
            if (l > worst) worst = l;
        }
        if (worst < best.objective) best = {s, worst};
    }
    return best;
}

// Minimize the prior-weighted empirical loss over games that agree with the
// batch, conditioning the prior on agreement.
inline ErmResult erm_bayesian(const ProblemInstance& problem,
                              const std::vector<Rational>& prior, const SampleBatch& batch) {
    if (batch.empty()) throw EmptyBatch();
    if (prior.size() != problem.games.size())
        throw std::invalid_argument("erm_bayesian: prior size does not match game count");
    Rational total(0);
    for (const auto& w : prior) {
        if (w < Rational(0)) throw std::invalid_argument("erm_bayesian: negative prior weight");
        total += w;
    }
    if (total != Rational(1)) throw std::invalid_argument("erm_bayesian: prior must sum to 1");

    const std::vector<int> agreeing = consistent_games(problem, batch);
    Rational mass(0);
    for (int g : agreeing) mass += prior[g];
    if (mass.is_zero()) throw NoConsistentGame();

    ErmResult best{-1, Rational(2)};
    for (int s = 0; s < problem.num_solutions(); ++s) {
        Rational avg(0);
        for (int g : agreeing) {
            if (prior[g].is_zero()) continue;
            avg += (prior[g] / mass) * empirical_loss(problem, batch, g, s);
        }
        if (avg < best.objective) best = {s, avg};
    }
    return best;
}

}  // namespace statsolve
