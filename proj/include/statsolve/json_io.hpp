#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "statsolve/condorcet.hpp"
#include "statsolve/dimension.hpp"
#include "statsolve/distribution.hpp"
#include "statsolve/framework.hpp"
#include "statsolve/hedonic.hpp"
#include "statsolve/market.hpp"
#include "statsolve/montecarlo.hpp"
#include "statsolve/tu_core.hpp"

namespace statsolve {

using nlohmann::json;

// Schema violations carry the JSON path of the offending field; syntax errors
// from the parser already carry byte positions.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what) {}
};

namespace jio {

inline const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(path, "missing field \"" + key + "\"");
    return j.at(key);
}

inline Rational rational_from_json(const json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path, "expected a rational as \"p/q\" string or integer");
}

inline std::uint64_t u64_from_json(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !j.is_number_integer())
        throw ConfigError(path, "expected an unsigned integer");
    if (j.is_number_integer() && j.get<std::int64_t>() < 0)
        throw ConfigError(path, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

inline int int_from_json(const json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ConfigError(path, "expected an integer");
    return j.get<int>();
}

inline std::uint64_t mask_from_indices(const json& j, int universe, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of indices");
    std::uint64_t mask = 0;
    for (const auto& e : j) {
        const int i = int_from_json(e, path);
        if (i < 0 || i >= universe) throw ConfigError(path, "index " + std::to_string(i) + " out of range");
        mask |= (1ULL << i);
    }
    return mask;
}

inline json indices_from_mask(std::uint64_t mask, int universe) {
    json arr = json::array();
    for (int i = 0; i < universe; ++i)
        if (mask >> i & 1) arr.push_back(i);
    return arr;
}

}  // namespace jio

inline json rational_to_json(const Rational& r) { return r.str(); }

// ---- framework instance schema ----
//
// { "points": [...], "labels": [...], "games": [[label idx per point], ...],
//   "solutions": [...], "loss": [[[bit per point] per solution] per game] }

inline ProblemInstance instance_from_json(const json& j, const std::string& path = "instance") {
    ProblemInstance p;
    for (const auto& e : jio::require(j, "points", path)) p.points.push_back(e.get<std::string>());
    for (const auto& e : jio::require(j, "labels", path)) p.labels.push_back(e.get<std::string>());
    for (const auto& e : jio::require(j, "solutions", path))
        p.solutions.push_back(e.get<std::string>());
    for (const auto& g : jio::require(j, "games", path)) {
        std::vector<int> game;
        for (const auto& e : g) game.push_back(jio::int_from_json(e, path + ".games"));
        p.games.push_back(std::move(game));
    }
    const json& loss = jio::require(j, "loss", path);
    if (!loss.is_array() || loss.size() != p.games.size())
        throw ConfigError(path + ".loss", "expected one table per game");
    std::vector<std::vector<std::vector<bool>>> table;
    for (std::size_t g = 0; g < loss.size(); ++g) {
        if (loss[g].size() != p.solutions.size())
            throw ConfigError(path + ".loss", "expected one row per solution");
        std::vector<std::vector<bool>> rows;
        for (const auto& row : loss[g]) {
            if (row.size() != p.points.size())
                throw ConfigError(path + ".loss", "expected one bit per point");
            std::vector<bool> bits;
            for (const auto& b : row) {
                const int v = jio::int_from_json(b, path + ".loss");
                if (v != 0 && v != 1) throw ConfigError(path + ".loss", "loss bits must be 0 or 1");
                bits.push_back(v == 1);
            }
            rows.push_back(std::move(bits));
        }
        table.push_back(std::move(rows));
    }
    p.loss = [tab = std::move(table)](int x, int g, int s) { return tab[g][s][x]; };
    p.validate();
    return p;
}

inline json instance_to_json(const ProblemInstance& p) {
    json j;
    j["points"] = p.points;
    j["labels"] = p.labels;
    j["games"] = p.games;
    j["solutions"] = p.solutions;
    json loss = json::array();
    const auto table = p.materialize_loss();
    for (const auto& per_game : table) {
        json rows = json::array();
        for (const auto& row : per_game) {
            json bits = json::array();
            for (const bool b : row) bits.push_back(b ? 1 : 0);
            rows.push_back(std::move(bits));
        }
        loss.push_back(std::move(rows));
    }
    j["loss"] = std::move(loss);
    return j;
}

inline SampleBatch batch_from_json(const json& j, const std::string& path = "batch") {
    SampleBatch b;
    for (const auto& e : jio::require(j, "points", path)) {
        const int x = jio::int_from_json(jio::require(e, "x", path), path);
        const int y = jio::int_from_json(jio::require(e, "y", path), path);
        b.points.emplace_back(x, y);
    }
    return b;
}

inline json batch_to_json(const SampleBatch& b) {
    json points = json::array();
    for (const auto& [x, y] : b.points) points.push_back(json{{"x", x}, {"y", y}});
    return json{{"points", std::move(points)}};
}

// ---- distributions ----

inline DistributionSpec distribution_from_json(const json& j, const std::string& path = "dist") {
    DistributionSpec d;
    const std::string kind = jio::require(j, "kind", path).get<std::string>();
    if (kind == "uniform-points") d.kind = DistKind::UniformPoints;
    else if (kind == "uniform-nonempty-subsets") d.kind = DistKind::UniformNonemptySubsets;
    else if (kind == "independent-inclusion") d.kind = DistKind::IndependentInclusion;
    else if (kind == "explicit-weighted") d.kind = DistKind::ExplicitWeighted;
    else throw ConfigError(path + ".kind", "unknown distribution kind \"" + kind + "\"");
    if (j.contains("seed")) d.seed = jio::u64_from_json(j.at("seed"), path + ".seed");
    if (d.kind == DistKind::UniformNonemptySubsets || d.kind == DistKind::IndependentInclusion)
        d.universe = jio::u64_from_json(jio::require(j, "universe", path), path + ".universe");
    if (d.kind == DistKind::IndependentInclusion)
        d.inclusion_p = jio::rational_from_json(jio::require(j, "p", path), path + ".p");
    if (d.kind == DistKind::ExplicitWeighted)
        for (const auto& w : jio::require(j, "weights", path))
            d.weights.push_back(jio::rational_from_json(w, path + ".weights"));
    try {
        d.validate();
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
    return d;
}

inline json distribution_to_json(const DistributionSpec& d) {
    json j;
    j["kind"] = dist_kind_name(d.kind);
    j["seed"] = d.seed;
    if (d.kind == DistKind::UniformNonemptySubsets || d.kind == DistKind::IndependentInclusion)
        j["universe"] = d.universe;
    if (d.kind == DistKind::IndependentInclusion) j["p"] = rational_to_json(d.inclusion_p);
    if (d.kind == DistKind::ExplicitWeighted) {
        json w = json::array();
        for (const auto& e : d.weights) w.push_back(rational_to_json(e));
        j["weights"] = std::move(w);
    }
    return j;
}

// ---- TU core ----

inline std::vector<CoalitionSample> tu_batch_from_json(const json& j, int n,
                                                       const std::string& path = "batch") {
    if (!j.is_array()) throw ConfigError(path, "expected an array of coalition samples");
    std::vector<CoalitionSample> batch;
    for (const auto& e : j) {
        CoalitionSample s;
        s.coalition = jio::mask_from_indices(jio::require(e, "coalition", path), n, path);
        s.value = jio::rational_from_json(jio::require(e, "value", path), path + ".value");
        batch.push_back(std::move(s));
    }
    return batch;
}

inline json payoff_to_json(const PayoffVector& x) {
    json arr = json::array();
    for (const auto& xi : x) arr.push_back(rational_to_json(xi));
    return arr;
}

// ---- hedonic ----

inline std::vector<HedonicSample> hedonic_batch_from_json(const json& j, int n,
                                                          const std::string& path = "batch") {
    if (!j.is_array()) throw ConfigError(path, "expected an array of coalition samples");
    std::vector<HedonicSample> batch;
    for (const auto& e : j) {
        HedonicSample s;
        s.coalition = jio::mask_from_indices(jio::require(e, "coalition", path), n, path);
        for (const auto& v : jio::require(e, "values", path))
            s.values.push_back(jio::rational_from_json(v, path + ".values"));
        if (static_cast<int>(s.values.size()) != popcount64(s.coalition))
            throw ConfigError(path, "values length must match coalition size");
        batch.push_back(std::move(s));
    }
    return batch;
}

inline json partition_to_json(const Partition& p) {
    json arr = json::array();
    for (const std::uint64_t block : p.blocks()) arr.push_back(jio::indices_from_mask(block, p.n()));
    return arr;
}

// ---- condorcet ----

inline PreferenceProfile profile_from_json(const json& j, const std::string& path = "profile") {
    PreferenceProfile p;
    p.num_candidates = jio::int_from_json(jio::require(j, "candidates", path), path + ".candidates");
    for (const auto& r : jio::require(j, "rankings", path)) {
        std::vector<int> rank;
        for (const auto& e : r) rank.push_back(jio::int_from_json(e, path + ".rankings"));
        p.rankings.push_back(std::move(rank));
    }
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
    return p;
}

inline json profile_to_json(const PreferenceProfile& p) {
    return json{{"candidates", p.num_candidates}, {"rankings", p.rankings}};
}

inline json tournament_to_json(const TournamentGraph& t) {
    json beats = json::array();
    for (int a = 0; a < t.num_candidates; ++a) {
        json row = json::array();
        for (int b = 0; b < t.num_candidates; ++b)
            if (t.rel[a][b] > 0) row.push_back(b);
        beats.push_back(std::move(row));
    }
    return json{{"candidates", t.num_candidates}, {"beats", std::move(beats)},
                {"has_ties", t.has_ties()}};
}

// ---- market ----

struct MarketProblem {
    int n = 0;
    int k = 0;
    std::vector<Rational> budgets;
    MarketBatch batch;
};

inline MarketProblem market_from_json(const json& j, const std::string& path = "market") {
    MarketProblem mp;
    mp.k = jio::int_from_json(jio::require(j, "goods", path), path + ".goods");
    const json& budgets = jio::require(j, "budgets", path);
    for (const auto& b : budgets)
        mp.budgets.push_back(jio::rational_from_json(b, path + ".budgets"));
    mp.n = static_cast<int>(mp.budgets.size());
    for (const auto& s : jio::require(j, "samples", path)) {
        MarketSample sample;
        sample.bundle = jio::mask_from_indices(jio::require(s, "bundle", path), mp.k, path);
        for (const auto& v : jio::require(s, "values", path))
            sample.values.push_back(jio::rational_from_json(v, path + ".values"));
        if (static_cast<int>(sample.values.size()) != mp.n)
            throw ConfigError(path + ".samples", "expected one value per player");
        mp.batch.samples.push_back(std::move(sample));
    }
    return mp;
}

inline json outcome_to_json(const MarketOutcome& o, int k) {
    json assignment = json::array();
    for (const std::uint64_t b : o.assignment) assignment.push_back(jio::indices_from_mask(b, k));
    json prices = json::array();
    for (const auto& p : o.prices) prices.push_back(rational_to_json(p));
    json budgets = json::array();
    for (const auto& b : o.perturbed_budgets) budgets.push_back(rational_to_json(b));
    return json{{"assignment", std::move(assignment)},
                {"prices", std::move(prices)},
                {"perturbed_budgets", std::move(budgets)},
                {"zeta", rational_to_json(o.zeta)},
                {"price_slack", rational_to_json(o.price_slack)},
                {"excess_sq", rational_to_json(o.excess_sq)},
                {"excess_within_bound", o.excess_within_bound}};
}

// ---- dimension ----

inline json witness_to_json(const ShatteringWitness& w) {
    json j;
    j["points"] = w.points;
    j["game"] = w.game;
    if (w.game2 >= 0) j["game2"] = w.game2;
    json labelings = json::object();
    for (std::size_t lab = 0; lab < w.labeling_solutions.size(); ++lab) {
        std::string key;
        for (std::size_t i = 0; i < w.points.size(); ++i) key += ((lab >> i) & 1) ? '1' : '0';
        labelings[key] = w.labeling_solutions[lab];
    }
    j["labelings"] = std::move(labelings);
    return j;
}

// ---- validation ----

inline ValidationConfig validation_config_from_json(const json& j,
                                                    const std::string& path = "validation") {
    ValidationConfig c;
    c.epsilon = jio::rational_from_json(jio::require(j, "epsilon", path), path + ".epsilon");
    c.delta = jio::rational_from_json(jio::require(j, "delta", path), path + ".delta");
    if (j.contains("m")) c.sample_size = jio::u64_from_json(j.at("m"), path + ".m");
    c.trials = jio::u64_from_json(jio::require(j, "trials", path), path + ".trials");
    if (j.contains("holdout")) c.holdout = jio::u64_from_json(j.at("holdout"), path + ".holdout");
    c.seed = jio::u64_from_json(jio::require(j, "seed", path), path + ".seed");
    if (j.contains("slack_z"))
        c.slack_z = jio::rational_from_json(j.at("slack_z"), path + ".slack_z");
    if (j.contains("threads")) c.threads = jio::int_from_json(j.at("threads"), path + ".threads");
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
    return c;
}

inline json validation_config_to_json(const ValidationConfig& c) {
    return json{{"epsilon", rational_to_json(c.epsilon)},
                {"delta", rational_to_json(c.delta)},
                {"m", c.sample_size},
                {"trials", c.trials},
                {"holdout", c.holdout},
                {"seed", c.seed},
                {"slack_z", rational_to_json(c.slack_z)},
                {"threads", c.threads}};
}

inline json report_to_json(const ValidationReport& r) {
    json trials = json::array();
    for (const auto& t : r.per_trial)
        trials.push_back(json{{"trial", t.index},
                              {"loss", rational_to_json(t.loss)},
                              {"exceeded_epsilon", t.exceeded_epsilon},
                              {"solver_error", t.solver_error}});
    json j;
    j["per_trial"] = std::move(trials);
    j["failure_fraction"] = rational_to_json(r.failure_fraction);
    j["threshold"] = r.threshold;
    j["verdict"] = r.pass ? "pass" : "fail";
    if (!r.provenance.empty()) j["provenance"] = json::parse(r.provenance);
    return j;
}

// Fixed columns: trial, loss (decimal), loss_exact (p/q), exceeded, error.
inline std::string report_to_csv(const ValidationReport& r) {
    std::string out = "trial,loss,loss_exact,exceeded_epsilon,solver_error\n";
    char buf[64];
    for (const auto& t : r.per_trial) {
        std::snprintf(buf, sizeof(buf), "%.17g", t.loss.to_double());
        out += std::to_string(t.index);
        out += ',';
        out += buf;
        out += ',';
        out += t.loss.str();
        out += ',';
        out += t.exceeded_epsilon ? '1' : '0';
        out += ',';
        out += t.solver_error ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace statsolve
