#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "statsolve/combinatorics.hpp"
#include "statsolve/framework.hpp"

namespace statsolve {

// Witness for a shattered point set: the game (pair of games for the
// Natarajan variant) together with one solution per binary labeling. Bit i of
// a labeling indexes points[i].
struct ShatteringWitness {
    std::vector<int> points;
    int game = -1;
    int game2 = -1;                        // second game, Natarajan shattering only
    std::vector<int> labeling_solutions;   // size 2^|points|, labeling -> solution

    bool empty() const { return points.empty(); }
};

struct DimensionResult {
    int dimension = 0;
    ShatteringWitness witness;
};

constexpr int kDefaultDimensionCap = 12;

namespace detail {

// Per-(game, solution) loss bitmasks over the point space; the subset search
// then runs on integer masks only.
inline std::vector<std::vector<std::uint64_t>> loss_bit_table(const ProblemInstance& problem) {
    if (problem.num_points() > 64)
        throw std::invalid_argument("dimension search supports at most 64 points");
    std::vector<std::vector<std::uint64_t>> bits(problem.num_games());
    for (int g = 0; g < problem.num_games(); ++g) {
        bits[g].resize(problem.num_solutions());
        for (int s = 0; s < problem.num_solutions(); ++s) {
            std::uint64_t m = 0;
            for (int x = 0; x < problem.num_points(); ++x)
                if (problem.loss(x, g, s)) m |= (1ULL << x);
            bits[g][s] = m;
        }
    }
    return bits;
}

inline std::uint32_t extract_bits(std::uint64_t mask, const std::vector<int>& positions) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        out |= static_cast<std::uint32_t>((mask >> positions[i]) & 1ULL) << i;
    return out;
}

}  // namespace detail

// Largest point set such that one game realizes every binary labeling of it
// through solution choices. Searches subset sizes in increasing order with
// canonical (lexicographic subset, lowest game, lowest solution) witnesses;
// stops early at the first size where nothing shatters, which is sound
// because shattered sets are closed under taking subsets.
inline DimensionResult solution_dimension(const ProblemInstance& problem, int max_size = -1) {
    problem.validate();
    const int n = problem.num_points();
    if (max_size < 0) max_size = std::min(n, kDefaultDimensionCap);
    max_size = std::min(max_size, n);
    const auto bits = detail::loss_bit_table(problem);

    DimensionResult result;
    std::vector<int> combo;
    std::vector<int> achiever;
    for (int size = 1; size <= max_size; ++size) {
        bool found = false;
        first_combination(combo, size);
        do {
            for (int g = 0; g < problem.num_games() && !found; ++g) {
                const std::uint32_t want = 1u << size;
                achiever.assign(want, -1);
                std::uint32_t covered = 0;
                for (int s = 0; s < problem.num_solutions(); ++s) {
                    const std::uint32_t lab = detail::extract_bits(bits[g][s], combo);
                    if (achiever[lab] < 0) {
                        achiever[lab] = s;
                        if (++covered == want) break;
                    }
                }
                if (covered == want) {
                    found = true;
                    result.dimension = size;
                    result.witness.points = combo;
                    result.witness.game = g;
                    result.witness.game2 = -1;
                    result.witness.labeling_solutions = achiever;
                }
            }
        } while (!found && next_combination(combo, n));
        if (!found) break;
    }
    return result;
}

// Natarajan-style variant: two games disagreeing on every point of the set,
// with each labeling realized against the first game and its complement
// against the second.
inline DimensionResult natarajan_dimension(const ProblemInstance& problem, int max_size = -1) {
    problem.validate();
    const int n = problem.num_points();
    if (max_size < 0) max_size = std::min(n, kDefaultDimensionCap);
    max_size = std::min(max_size, n);
    const auto bits = detail::loss_bit_table(problem);

    // disagreement masks per game pair
    const int num_games = problem.num_games();
    std::vector<std::vector<std::uint64_t>> disagree(num_games,
                                                     std::vector<std::uint64_t>(num_games, 0));
    for (int g0 = 0; g0 < num_games; ++g0)
        for (int g1 = g0 + 1; g1 < num_games; ++g1) {
            std::uint64_t m = 0;
            for (int x = 0; x < n; ++x)
                if (problem.games[g0][x] != problem.games[g1][x]) m |= (1ULL << x);
            disagree[g0][g1] = m;
        }

    DimensionResult result;
    std::vector<int> combo;
    std::vector<int> achiever;
    for (int size = 1; size <= max_size; ++size) {
        bool found = false;
        first_combination(combo, size);
        do {
            std::uint64_t combo_mask = 0;
            for (int x : combo) combo_mask |= (1ULL << x);
            for (int g0 = 0; g0 < num_games && !found; ++g0) {
                for (int g1 = g0 + 1; g1 < num_games && !found; ++g1) {
                    if ((disagree[g0][g1] & combo_mask) != combo_mask) continue;
                    const std::uint32_t want = 1u << size;
                    const std::uint32_t full = want - 1;
                    achiever.assign(want, -1);
                    std::uint32_t covered = 0;
                    for (int s = 0; s < problem.num_solutions(); ++s) {
                        const std::uint32_t lab0 = detail::extract_bits(bits[g0][s], combo);
                        const std::uint32_t lab1 = detail::extract_bits(bits[g1][s], combo);
                        if (lab1 != (~lab0 & full)) continue;
                        if (achiever[lab0] < 0) {
                            achiever[lab0] = s;
                            if (++covered == want) break;
                        }
                    }
                    if (covered == want) {
                        found = true;
                        result.dimension = size;
                        result.witness.points = combo;
                        result.witness.game = g0;
                        result.witness.game2 = g1;
                        result.witness.labeling_solutions = achiever;
                    }
                }
            }
        } while (!found && next_combination(combo, n));
        if (!found) break;
    }
    return result;
}

// Classical VC dimension of binary hypotheses given as label bitmasks over
// num_points points.
inline int vc_dimension(int num_points, const std::vector<std::uint64_t>& hypotheses) {
    if (num_points > 62) throw std::invalid_argument("vc_dimension supports at most 62 points");
    int best = 0;
    std::vector<int> combo;
    std::vector<bool> seen;
    for (int size = 1; size <= num_points; ++size) {
        bool found = false;
        first_combination(combo, size);
        do {
            const std::uint32_t want = 1u << size;
            seen.assign(want, false);
            std::uint32_t covered = 0;
            for (const std::uint64_t h : hypotheses) {
                const std::uint32_t lab = detail::extract_bits(h, combo);
                if (!seen[lab]) {
                    seen[lab] = true;
                    if (++covered == want) break;
                }
            }
            if (covered == want) found = true;
        } while (!found && next_combination(combo, num_points));
        if (!found) break;
        best = size;
    }
    return best;
}

// True iff the brute-forced solution dimension is at most claimed_bound.
inline bool verify_dimension_bound(const ProblemInstance& problem, int claimed_bound) {
    if (claimed_bound < 0) return false;
    const int cap = std::min(problem.num_points(), claimed_bound + 1);
    return solution_dimension(problem, cap).dimension <= claimed_bound;
}

// Replay a witness through the loss function and confirm every recorded
// labeling. For Natarajan witnesses both games are checked, the second
// against complemented labels, and the games must disagree on all points.
inline bool witness_revalidates(const ProblemInstance& problem, const ShatteringWitness& w) {
    if (w.empty()) return true;
    const std::size_t size = w.points.size();
    if (w.labeling_solutions.size() != (1ULL << size)) return false;
    for (std::uint32_t lab = 0; lab < w.labeling_solutions.size(); ++lab) {
        const int s = w.labeling_solutions[lab];
        if (s < 0 || s >= problem.num_solutions()) return false;
        for (std::size_t i = 0; i < size; ++i) {
            const bool bit = (lab >> i) & 1u;
            if (problem.loss(w.points[i], w.game, s) != bit) return false;
            if (w.game2 >= 0 && problem.loss(w.points[i], w.game2, s) != !bit) return false;
        }
    }
    if (w.game2 >= 0)
        for (int x : w.points)
            if (problem.games[w.game][x] == problem.games[w.game2][x]) return false;
    return true;
}

// Built-in argmax problem: points carry values through a game (an injection
// into a totally ordered label space), solutions are the points themselves,
// and the loss fires when the sampled point strictly beats the chosen one.
inline ProblemInstance builtin_argmax_instance(int size = 4) {
    if (size < 1 || size > 8) throw std::invalid_argument("argmax instance size must be in [1, 8]");
    ProblemInstance p;
    for (int i = 0; i < size; ++i) {
        p.points.push_back("x" + std::to_string(i));
        p.labels.push_back(std::to_string(i + 1));
        p.solutions.push_back("x" + std::to_string(i));
    }
    std::vector<int> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        p.games.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    p.loss = [games = p.games](int x, int g, int s) { return games[g][x] > games[g][s]; };
    return p;
}

// Threshold classifiers on collinear points, h_j(x_i) = [i >= j], as label
// bitmasks for the VC brute force.
inline std::vector<std::uint64_t> threshold_hypotheses(int num_points) {
    std::vector<std::uint64_t> hs;
    for (int j = 0; j <= num_points; ++j) {
        std::uint64_t mask = 0;
        for (int i = j; i < num_points; ++i) mask |= (1ULL << i);
        hs.push_back(mask);
    }
    return hs;
}

// The same thresholds as a statistical-solution instance with solutions =
// games = hypotheses and disagreement loss; its solution dimension collapses
// to the VC dimension.
inline ProblemInstance builtin_threshold_instance(int num_points = 4) {
    const auto hs = threshold_hypotheses(num_points);
    ProblemInstance p;
    for (int i = 0; i < num_points; ++i) p.points.push_back("x" + std::to_string(i));
    p.labels = {"0", "1"};
    for (std::size_t j = 0; j < hs.size(); ++j) {
        std::vector<int> game(num_points);
        for (int i = 0; i < num_points; ++i) game[i] = static_cast<int>((hs[j] >> i) & 1ULL);
        p.games.push_back(std::move(game));
        p.solutions.push_back("t" + std::to_string(j));
    }
    p.loss = [games = p.games](int x, int g, int s) { return games[g][x] != games[s][x]; };
    return p;
}

}  // namespace statsolve
