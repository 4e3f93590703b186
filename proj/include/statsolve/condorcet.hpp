#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "statsolve/combinatorics.hpp"
#include "statsolve/framework.hpp"
#include "statsolve/rational.hpp"
#include "statsolve/rng.hpp"

namespace statsolve {

class TiesPresent : public std::runtime_error {
public:
    TiesPresent() : std::runtime_error("tournament has tied pairs") {}
};

// Strict total orders over a candidate set, best candidate first.
struct PreferenceProfile {
    int num_candidates = 0;
    std::vector<std::vector<int>> rankings;

    void validate() const {
        if (num_candidates < 1) throw std::invalid_argument("profile needs candidates");
        if (rankings.empty()) throw std::invalid_argument("profile needs at least one voter");
        for (const auto& r : rankings) {
            if (static_cast<int>(r.size()) != num_candidates)
                throw std::invalid_argument("ranking is not a permutation of the candidates");
            std::vector<bool> seen(num_candidates, false);
            for (int c : r) {
                if (c < 0 || c >= num_candidates || seen[c])
                    throw std::invalid_argument("ranking is not a permutation of the candidates");
                seen[c] = true;
            }
        }
    }

    int num_voters() const { return static_cast<int>(rankings.size()); }
};

// Pairwise majority graph. rel[a][b] = +1 when a beats b, -1 when a loses,
// 0 on ties and the diagonal. With an odd voter count every off-diagonal
// entry is nonzero.
struct TournamentGraph {
    int num_candidates = 0;
    std::vector<std::vector<int>> rel;

    bool beats(int a, int b) const { return rel[a][b] > 0; }
    bool has_ties() const {
        for (int a = 0; a < num_candidates; ++a)
            for (int b = a + 1; b < num_candidates; ++b)
                if (rel[a][b] == 0) return true;
        return false;
    }
};

// Strict majority: an edge a -> b needs more than half the voters.
inline TournamentGraph build_tournament(const PreferenceProfile& profile) {
    profile.validate();
    const int c = profile.num_candidates;
    const int n = profile.num_voters();
    std::vector<std::vector<int>> position(n, std::vector<int>(c));
    for (int v = 0; v < n; ++v)
        for (int rank = 0; rank < c; ++rank) position[v][profile.rankings[v][rank]] = rank;

    TournamentGraph t;
    t.num_candidates = c;
    t.rel.assign(c, std::vector<int>(c, 0));
    for (int a = 0; a < c; ++a)
        for (int b = a + 1; b < c; ++b) {
            int prefer_a = 0;
            for (int v = 0; v < n; ++v)
                if (position[v][a] < position[v][b]) ++prefer_a;
            if (2 * prefer_a > n) {
                t.rel[a][b] = 1;
                t.rel[b][a] = -1;
            } else if (2 * (n - prefer_a) > n) {
                t.rel[a][b] = -1;
                t.rel[b][a] = 1;
            }
        }
    return t;
}

// The unique sampled candidate beating every other sampled candidate, if any.
// Duplicates in the sample are fine (i.i.d. draws); ties or cycles within the
// sample yield nullopt.
inline std::optional<int> empirical_condorcet_winner(const PreferenceProfile& profile,
                                                     const std::vector<int>& sample) {
    if (sample.empty()) throw std::invalid_argument("empirical winner: empty sample");
    const TournamentGraph t = build_tournament(profile);
    std::vector<int> distinct = sample;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int c : distinct)
        if (c < 0 || c >= profile.num_candidates)
            throw std::invalid_argument("empirical winner: sample candidate out of range");
    for (int c : distinct) {
        bool wins_all = true;
        for (int other : distinct)
            if (other != c && !t.beats(c, other)) {
                wins_all = false;
                break;
            }
        if (wins_all) return c;
    }
    return std::nullopt;
}

inline bool is_transitive(const TournamentGraph& t) {
    if (t.has_ties()) throw TiesPresent();
    const int c = t.num_candidates;
    for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b) {
            if (a == b || !t.beats(a, b)) continue;
            for (int d = 0; d < c; ++d) {
                if (d == a || d == b) continue;
                if (t.beats(b, d) && !t.beats(a, d)) return false;
            }
        }
    return true;
}

namespace detail {

// Whether the (unordered) pair {a, b} lies on some directed 3-cycle.
inline bool pair_on_three_cycle(const TournamentGraph& t, int a, int b) {
    for (int c = 0; c < t.num_candidates; ++c) {
        if (c == a || c == b) continue;
        if (t.beats(a, b) && t.beats(b, c) && t.beats(c, a)) return true;
        if (t.beats(b, a) && t.beats(a, c) && t.beats(c, b)) return true;
    }
    return false;
}

}  // namespace detail

// Size of the largest candidate set (>= 2) in which every pair lies on some
// directed 3-cycle; 0 when no such set exists. Transitive tournaments have no
// 3-cycles at all, so they score 0.
inline int three_cycle_core_size(const TournamentGraph& t, int max_candidates = 20) {
    if (t.has_ties()) throw TiesPresent();
    const int c = t.num_candidates;
    if (c > max_candidates)
        throw std::invalid_argument("three_cycle_core_size: candidate count exceeds cap");
    std::vector<std::vector<bool>> ok(c, std::vector<bool>(c, false));
    for (int a = 0; a < c; ++a)
        for (int b = a + 1; b < c; ++b) ok[a][b] = ok[b][a] = detail::pair_on_three_cycle(t, a, b);

    int best = 0;
    for (std::uint64_t mask = 1; mask < (1ULL << c); ++mask) {
        const int size = popcount64(mask);
        if (size < 2 || size <= best) continue;
        bool all = true;
        for (int a = 0; a < c && all; ++a) {
            if (!(mask >> a & 1)) continue;
            for (int b = a + 1; b < c && all; ++b)
                if ((mask >> b & 1) && !ok[a][b]) all = false;
        }
        if (all) best = size;
    }
    return best;
}

// ceil((1/eps) * ln(1/delta)) samples suffice for the consistent winner rule.
inline std::uint64_t condorcet_sample_size(const Rational& epsilon, const Rational& delta) {
    if (epsilon <= Rational(0) || epsilon >= Rational(1) || delta <= Rational(0) ||
        delta >= Rational(1))
        throw InvalidParams("condorcet_sample_size: epsilon and delta must lie in (0, 1)");
    const long double m =
        (1.0L / epsilon.to_long_double()) * std::log(1.0L / delta.to_long_double());
    return static_cast<std::uint64_t>(std::ceil(m));
}

// --- profile generators (deterministic per seed) ---

// Voters draw a peak position on the axis and rank candidates by axis
// distance, breaking distance ties toward the left end.
inline PreferenceProfile generate_single_peaked(const std::vector<int>& axis, int num_voters,
                                                std::uint64_t seed) {
    const int c = static_cast<int>(axis.size());
    std::vector<int> axis_pos(c);
    for (int pos = 0; pos < c; ++pos) {
        if (axis[pos] < 0 || axis[pos] >= c) throw std::invalid_argument("axis is not a permutation");
        axis_pos[axis[pos]] = pos;
    }
    PreferenceProfile profile;
    profile.num_candidates = c;
    for (int v = 0; v < num_voters; ++v) {
        SplitMix64 rng(substream_seed(seed, v));
        const int peak = static_cast<int>(rng.below(c));
        std::vector<int> order(c);
        for (int i = 0; i < c; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const int da = std::abs(axis_pos[a] - peak);
            const int db = std::abs(axis_pos[b] - peak);
            if (da != db) return da < db;
            return axis_pos[a] < axis_pos[b];
        });
        profile.rankings.push_back(std::move(order));
    }
    return profile;
}

// Voters draw a scalar position t and rank candidates by score a_c + t * b_c
// (descending), ties toward the lower candidate index. Scores are exact
// rationals, so the ordering is exact.
inline PreferenceProfile generate_single_crossing(
    int num_voters, std::uint64_t seed,
    const std::vector<std::pair<Rational, Rational>>& candidate_params) {
    const int c = static_cast<int>(candidate_params.size());
    if (c < 1) throw std::invalid_argument("single-crossing: need candidates");
    PreferenceProfile profile;
    profile.num_candidates = c;
    for (int v = 0; v < num_voters; ++v) {
        SplitMix64 rng(substream_seed(seed, v));
        const Rational t(static_cast<std::int64_t>(rng.below(100000)), 99991);
        std::vector<Rational> score(c);
        for (int i = 0; i < c; ++i)
            score[i] = candidate_params[i].first + t * candidate_params[i].second;
        std::vector<int> order(c);
        for (int i = 0; i < c; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (score[a] != score[b]) return score[b] < score[a];
            return a < b;
        });
        profile.rankings.push_back(std::move(order));
    }
    return profile;
}

inline PreferenceProfile generate_random_profile(int num_candidates, int num_voters,
                                                 std::uint64_t seed) {
    PreferenceProfile profile;
    profile.num_candidates = num_candidates;
    for (int v = 0; v < num_voters; ++v) {
        SplitMix64 rng(substream_seed(seed, v));
        std::vector<int> order(num_candidates);
        for (int i = 0; i < num_candidates; ++i) order[i] = i;
        for (int i = num_candidates - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
            std::swap(order[i], order[j]);
        }
        profile.rankings.push_back(std::move(order));
    }
    return profile;
}

// Condorcet problems as explicit statistical-solution instances: points and
// solutions are candidates, games are profiles over the same candidate set,
// and the loss fires when the sampled candidate beats the chosen one. Labels
// encode each candidate's per-voter positions so that two profiles agree on a
// candidate exactly when every voter places it identically.
inline ProblemInstance condorcet_instance(const std::vector<PreferenceProfile>& profiles) {
    if (profiles.empty()) throw std::invalid_argument("condorcet_instance: no profiles");
    const int c = profiles[0].num_candidates;
    ProblemInstance p;
    for (int i = 0; i < c; ++i) {
        p.points.push_back("c" + std::to_string(i));
        p.solutions.push_back("c" + std::to_string(i));
    }
    std::vector<TournamentGraph> tournaments;
    std::vector<std::string> label_keys;
    for (const auto& profile : profiles) {
        if (profile.num_candidates != c)
            throw std::invalid_argument("condorcet_instance: candidate counts differ");
        profile.validate();
        tournaments.push_back(build_tournament(profile));
        std::vector<int> game(c);
        for (int cand = 0; cand < c; ++cand) {
            std::string key;
            for (const auto& r : profile.rankings) {
                const auto it = std::find(r.begin(), r.end(), cand);
                key += std::to_string(it - r.begin()) + ",";
            }
            const auto found = std::find(label_keys.begin(), label_keys.end(), key);
            if (found == label_keys.end()) {
                game[cand] = static_cast<int>(label_keys.size());
                label_keys.push_back(key);
            } else {
                game[cand] = static_cast<int>(found - label_keys.begin());
            }
        }
        p.games.push_back(std::move(game));
    }
    for (std::size_t i = 0; i < label_keys.size(); ++i) p.labels.push_back("y" + std::to_string(i));
    p.loss = [ts = std::move(tournaments)](int x, int g, int s) { return ts[g].rel[x][s] > 0; };
    return p;
}

}  // namespace statsolve
