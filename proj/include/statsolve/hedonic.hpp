#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "statsolve/combinatorics.hpp"
#include "statsolve/rational.hpp"
#include "statsolve/rng.hpp"

namespace statsolve {

// Hedonic game: each player values the coalitions containing it. The value
// map may be an oracle; it is only ever queried with masks containing the
// player bit.
struct HedonicGame {
    int n = 0;
    std::function<Rational(int player, std::uint64_t coalition)> value;

    Rational operator()(int player, std::uint64_t coalition) const {
        return value(player, coalition);
    }
};

// Partition of {0,...,n-1} stored as a restricted growth string; block ids
// are contiguous starting at 0.
struct Partition {
    std::vector<int> rgs;

    int n() const { return static_cast<int>(rgs.size()); }
    std::vector<std::uint64_t> blocks() const { return rgs_blocks(rgs); }
    std::uint64_t block_of(int player) const {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < rgs.size(); ++i)
            if (rgs[i] == rgs[player]) mask |= (1ULL << i);
        return mask;
    }
};

struct HedonicSample {
    std::uint64_t coalition;
    std::vector<Rational> values;  // one entry per member, ascending player index
};

// 1 iff every member of S prefers S to its assigned block; `strict` selects
// the strict ( > ) or weak ( >= ) comparison. The sample's own label vector,
// when provided, stands in for the game on S itself.
inline bool hedonic_blocking_loss(std::uint64_t coalition, const HedonicGame& game,
                                  const Partition& partition, bool strict = true) {
    if (coalition == 0) throw std::invalid_argument("hedonic blocking: empty coalition");
    for (int i = 0; i < game.n; ++i) {
        if (!(coalition >> i & 1)) continue;
        const Rational in_s = game(i, coalition);
        const Rational assigned = game(i, partition.block_of(i));
        if (strict ? !(in_s > assigned) : !(in_s >= assigned)) return false;
    }
    return true;
}

namespace detail {

inline Rational sample_value(const HedonicSample& sample, int player) {
    int idx = 0;
    for (int i = 0; i < 64; ++i) {
        if (!(sample.coalition >> i & 1)) continue;
        if (i == player) return sample.values[idx];
        ++idx;
    }
    throw std::invalid_argument("player not in sampled coalition");
}

inline bool sample_blocks(const HedonicSample& sample, const HedonicGame& game,
                          const Partition& partition, bool strict) {
    for (int i = 0; i < game.n; ++i) {
        if (!(sample.coalition >> i & 1)) continue;
        const Rational in_s = sample_value(sample, i);
        const Rational assigned = game(i, partition.block_of(i));
        if (strict ? !(in_s > assigned) : !(in_s >= assigned)) return false;
    }
    return true;
}

}  // namespace detail

constexpr int kHedonicPlayerCap = 10;

// First partition, in restricted-growth-string order, that no sampled
// coalition blocks. The game oracle supplies values for assigned blocks; the
// sampled label vectors supply values on the sampled coalitions themselves.
// Returns nullopt when every partition is blocked by some sample.
inline std::optional<Partition> consistent_partition_bruteforce(
    const std::vector<HedonicSample>& batch, const HedonicGame& game, bool strict = true) {
    if (game.n < 1 || game.n > kHedonicPlayerCap)
        throw std::invalid_argument("consistent_partition_bruteforce: player count outside [1, 10]");
    for (const auto& s : batch) {
        if (s.coalition == 0 || (s.coalition >> game.n) != 0)
            throw std::invalid_argument("sample coalition outside the player set");
        if (static_cast<int>(s.values.size()) != popcount64(s.coalition))
            throw std::invalid_argument("sample label vector length mismatch");
    }
    Partition pi;
    first_rgs(pi.rgs, game.n);
    do {
        bool blocked = false;
        for (const auto& s : batch)
            if (detail::sample_blocks(s, game, pi, strict)) {
                blocked = true;
                break;
            }
        if (!blocked) return pi;
    } while (next_rgs(pi.rgs));
    return std::nullopt;
}

// Consistency against a whole class: true iff no game in the class lets any
// sampled coalition block the partition. Every game must agree with the
// sampled labels.
inline bool worst_case_consistency_check(const std::vector<HedonicSample>& batch,
                                         const std::vector<HedonicGame>& game_class,
                                         const Partition& partition, bool strict = true) {
    for (const auto& game : game_class) {
        for (const auto& s : batch) {
            int idx = 0;
            for (int i = 0; i < game.n; ++i) {
                if (!(s.coalition >> i & 1)) continue;
                if (game(i, s.coalition) != s.values[idx])
                    throw std::invalid_argument(
                        "worst_case_consistency_check: game disagrees with batch labels");
                ++idx;
            }
        }
        for (const auto& s : batch)
            if (hedonic_blocking_loss(s.coalition, game, partition, strict)) return false;
    }
    return true;
}

inline HedonicSample make_hedonic_sample(std::uint64_t coalition, const HedonicGame& game) {
    HedonicSample s;
    s.coalition = coalition;
    for (int i = 0; i < game.n; ++i)
        if (coalition >> i & 1) s.values.push_back(game(i, coalition));
    return s;
}

// --- generator families (deterministic per seed) ---

// v_i(S) = sum of i's weights toward the other members.
inline HedonicGame make_additively_separable_game(int n,
                                                  std::vector<std::vector<Rational>> weights) {
    HedonicGame g;
    g.n = n;
    g.value = [n, w = std::move(weights)](int player, std::uint64_t coalition) {
        Rational total(0);
        for (int j = 0; j < n; ++j)
            if (j != player && (coalition >> j & 1)) total += w[player][j];
        return total;
    };
    return g;
}

// Symmetric seeded weights. Nonnegative weights make the grand coalition
// unblockable, which keeps generated corpora consistently solvable; allowing
// negative weights produces adversarial games.
inline HedonicGame make_additively_separable_game(int n, std::uint64_t seed, int max_weight = 10,
                                                  bool allow_negative = false) {
    SplitMix64 rng(substream_seed(seed, 2));
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::int64_t v = static_cast<std::int64_t>(rng.below(max_weight + 1));
            if (allow_negative && rng.below(2) == 1) v = -v;
            w[i][j] = w[j][i] = Rational(v);
        }
    return make_additively_separable_game(n, std::move(w));
}

// Friend-appreciation values: n * |friends in S| + (n - 1 - |strangers in S|),
// nonnegative and top-responsive flavored. The friendship relation is
// symmetric.
inline HedonicGame make_friend_appreciation_game(int n, std::uint64_t seed) {
    SplitMix64 rng(substream_seed(seed, 3));
    std::vector<std::uint64_t> friends(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.below(2) == 1) {
                friends[i] |= (1ULL << j);
                friends[j] |= (1ULL << i);
            }
    HedonicGame g;
    g.n = n;
    g.value = [n, friends](int player, std::uint64_t coalition) {
        const std::uint64_t others = coalition & ~(1ULL << player);
        const int nf = popcount64(others & friends[player]);
        const int ns = popcount64(others & ~friends[player]);
        return Rational(static_cast<std::int64_t>(n) * nf + (n - 1 - ns));
    };
    return g;
}

}  // namespace statsolve
