#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "statsolve/rational.hpp"
#include "statsolve/rng.hpp"

namespace statsolve {

class UnsupportedDistribution : public std::runtime_error {
public:
    explicit UnsupportedDistribution(const std::string& what) : std::runtime_error(what) {}
};

enum class DistKind {
    UniformPoints,           // uniform over a listed point sequence
    UniformNonemptySubsets,  // uniform over non-empty subsets of {0,...,universe-1}
    IndependentInclusion,    // each of `universe` elements included with probability p
    ExplicitWeighted,        // listed points with rational weights summing to 1
};

inline std::string dist_kind_name(DistKind k) {
    switch (k) {
        case DistKind::UniformPoints: return "uniform-points";
        case DistKind::UniformNonemptySubsets: return "uniform-nonempty-subsets";
        case DistKind::IndependentInclusion: return "independent-inclusion";
        case DistKind::ExplicitWeighted: return "explicit-weighted";
    }
    return "?";
}

// A seedable, named sampling distribution. Draws are keyed by (seed,
// draw_index): draw i opens its own SplitMix64 substream, so the i-th sample
// is identical on every platform regardless of how many variates earlier
// draws consumed.
struct DistributionSpec {
    DistKind kind = DistKind::UniformPoints;
    std::uint64_t seed = 0;
    std::uint64_t universe = 0;           // subset kinds: number of ground elements
    Rational inclusion_p;                 // independent-inclusion only
    std::vector<Rational> weights;        // explicit-weighted only

    void validate() const {
        switch (kind) {
            case DistKind::UniformPoints:
                break;
            case DistKind::UniformNonemptySubsets:
                if (universe == 0 || universe > 62)
                    throw std::invalid_argument("uniform-nonempty-subsets: universe must be in [1, 62]");
                break;
            case DistKind::IndependentInclusion:
                if (universe == 0 || universe > 62)
                    throw std::invalid_argument("independent-inclusion: universe must be in [1, 62]");
                if (inclusion_p < Rational(0) || inclusion_p > Rational(1))
                    throw std::invalid_argument("independent-inclusion: p must lie in [0, 1]");
                break;
            case DistKind::ExplicitWeighted: {
                Rational total(0);
                for (const auto& w : weights) {
                    if (w < Rational(0)) throw std::invalid_argument("explicit-weighted: negative weight");
                    total += w;
                }
                if (total != Rational(1))
                    throw std::invalid_argument("explicit-weighted: weights must sum to exactly 1");
                break;
            }
        }
    }

    bool is_point_kind() const {
        return kind == DistKind::UniformPoints || kind == DistKind::ExplicitWeighted;
    }

    // Index of the draw_index-th sampled point from a list of num_points.
    std::size_t draw_point(std::uint64_t run_seed, std::uint64_t draw_index,
                           std::size_t num_points) const {
        SplitMix64 g(substream_seed(run_seed, draw_index));
        switch (kind) {
            case DistKind::UniformPoints:
                if (num_points == 0) throw std::invalid_argument("draw_point: empty point list");
                return static_cast<std::size_t>(g.below(num_points));
            case DistKind::ExplicitWeighted: {
                if (weights.size() != num_points)
                    throw std::invalid_argument("draw_point: weight count does not match point count");
                // exact CDF inversion against u / 2^64
                const std::uint64_t u = g.next();
                Rational cum(0);
                for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
                    cum += weights[i];
                    const auto a = static_cast<unsigned __int128>(cum.num());
                    const auto b = static_cast<unsigned __int128>(cum.den());
                    if (static_cast<unsigned __int128>(u) * b < (a << 64)) return i;
                }
                return weights.size() - 1;
            }
            default:
                throw UnsupportedDistribution("draw_point: " + dist_kind_name(kind) +
                                              " is not a point distribution");
        }
    }

    // The draw_index-th sampled subset, as a bitmask over {0,...,universe-1}.
    std::uint64_t draw_subset(std::uint64_t run_seed, std::uint64_t draw_index) const {
        SplitMix64 g(substream_seed(run_seed, draw_index));
        switch (kind) {
            case DistKind::UniformNonemptySubsets: {
                const std::uint64_t count = (universe >= 64) ? 0 : ((1ULL << universe) - 1);
                return 1 + g.below(count);
            }
            case DistKind::IndependentInclusion: {
                std::uint64_t mask = 0;
                for (std::uint64_t e = 0; e < universe; ++e)
                    if (g.bernoulli(inclusion_p)) mask |= (1ULL << e);
                return mask;
            }
            default:
                throw UnsupportedDistribution("draw_subset: " + dist_kind_name(kind) +
                                              " is not a subset distribution");
        }
    }

    // Exact per-point weights for point distributions over num_points points.
    std::vector<Rational> point_weights(std::size_t num_points) const {
        switch (kind) {
            case DistKind::UniformPoints: {
                if (num_points == 0) throw std::invalid_argument("point_weights: empty point list");
                std::vector<Rational> w(num_points,
                                        Rational(1, static_cast<std::int64_t>(num_points)));
                return w;
            }
            case DistKind::ExplicitWeighted:
                if (weights.size() != num_points)
                    throw std::invalid_argument("point_weights: weight count does not match point count");
                return weights;
            default:
                throw UnsupportedDistribution("point_weights: " + dist_kind_name(kind) +
                                              " has no listed-point support");
        }
    }

    // Explicit (mask, weight) support for subset distributions. Guarded by a
    // universe cap since the support is exponential in `universe`.
    std::vector<std::pair<std::uint64_t, Rational>> subset_support(std::uint64_t max_universe = 20) const {
        if (kind != DistKind::UniformNonemptySubsets && kind != DistKind::IndependentInclusion)
            throw UnsupportedDistribution("subset_support: " + dist_kind_name(kind) +
                                          " is not a subset distribution");
        if (universe > max_universe)
            throw UnsupportedDistribution("subset_support: universe " + std::to_string(universe) +
                                          " exceeds enumeration cap " + std::to_string(max_universe));
        std::vector<std::pair<std::uint64_t, Rational>> support;
        const std::uint64_t full = (1ULL << universe);
        if (kind == DistKind::UniformNonemptySubsets) {
            const Rational w(1, static_cast<std::int64_t>(full - 1));
            support.reserve(full - 1);
            for (std::uint64_t m = 1; m < full; ++m) support.emplace_back(m, w);
        } else {
            const Rational p = inclusion_p;
            const Rational q = Rational(1) - p;
            support.reserve(full);
            for (std::uint64_t m = 0; m < full; ++m) {
                Rational w(1);
                for (std::uint64_t e = 0; e < universe; ++e) w *= (m >> e & 1) ? p : q;
                support.emplace_back(m, w);
            }
        }
        return support;
    }
};

inline DistributionSpec uniform_points_dist(std::uint64_t seed) {
    DistributionSpec d;
    d.kind = DistKind::UniformPoints;
    d.seed = seed;
    return d;
}

inline DistributionSpec uniform_nonempty_subsets_dist(std::uint64_t universe, std::uint64_t seed) {
    DistributionSpec d;
    d.kind = DistKind::UniformNonemptySubsets;
    d.universe = universe;
    d.seed = seed;
    return d;
}

}  // namespace statsolve
