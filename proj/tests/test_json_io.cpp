#include <doctest.h>

#include <string>

#include "statsolve/json_io.hpp"
#include "statsolve/rng.hpp"

using namespace statsolve;

TEST_CASE("rationals in JSON") {
    CHECK(jio::rational_from_json(json("3/4"), "x") == Rational(3, 4));
    CHECK(jio::rational_from_json(json(7), "x") == Rational(7));
    CHECK_THROWS_AS(jio::rational_from_json(json("1/0"), "x"), ConfigError);
    CHECK_THROWS_AS(jio::rational_from_json(json("banana"), "x"), ConfigError);
    CHECK_THROWS_AS(jio::rational_from_json(json(1.5), "x"), ConfigError);
}

TEST_CASE("instance round-trips through its JSON schema") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        ProblemInstance p;
        const int points = 2 + static_cast<int>(rng.below(4));
        const int labels = 2 + static_cast<int>(rng.below(3));
        const int games = 1 + static_cast<int>(rng.below(3));
        const int sols = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < points; ++i) p.points.push_back("x" + std::to_string(i));
        for (int i = 0; i < labels; ++i) p.labels.push_back("y" + std::to_string(i));
        for (int i = 0; i < sols; ++i) p.solutions.push_back("s" + std::to_string(i));
        p.games.assign(games, std::vector<int>(points));
        for (auto& g : p.games)
            for (auto& y : g) y = static_cast<int>(rng.below(labels));
        std::vector<std::vector<std::vector<bool>>> tab(
            games, std::vector<std::vector<bool>>(sols, std::vector<bool>(points)));
        for (auto& per_game : tab)
            for (auto& row : per_game)
                for (std::size_t x = 0; x < row.size(); ++x) row[x] = rng.below(2) == 1;
        p.loss = [tab](int x, int g, int s) { return tab[g][s][x]; };

        const json j = instance_to_json(p);
        const ProblemInstance q = instance_from_json(j);
        CHECK(q.points == p.points);
        CHECK(q.games == p.games);
        CHECK(q.solutions == p.solutions);
        for (int x = 0; x < points; ++x)
            for (int g = 0; g < games; ++g)
                for (int s = 0; s < sols; ++s) CHECK(q.loss(x, g, s) == p.loss(x, g, s));
        // serialization is stable
        CHECK(instance_to_json(q) == j);
    }
}

TEST_CASE("instance schema violations carry their path") {
    json j;
    j["points"] = {"a", "b"};
    j["labels"] = {"0"};
    j["solutions"] = {"s"};
    j["games"] = {{0, 0}};
    j["loss"] = {{{0, 1, 0}}};  // three bits for two points
    try {
        instance_from_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("loss") != std::string::npos);
    }
}

TEST_CASE("distribution specs round-trip") {
    DistributionSpec d;
    d.kind = DistKind::IndependentInclusion;
    d.universe = 5;
    d.seed = 42;
    d.inclusion_p = Rational(2, 7);
    const auto q = distribution_from_json(distribution_to_json(d));
    CHECK(q.kind == d.kind);
    CHECK(q.universe == d.universe);
    CHECK(q.seed == d.seed);
    CHECK(q.inclusion_p == d.inclusion_p);

    DistributionSpec w;
    w.kind = DistKind::ExplicitWeighted;
    w.weights = {Rational(1, 3), Rational(2, 3)};
    const auto r = distribution_from_json(distribution_to_json(w));
    CHECK(r.weights == w.weights);

    CHECK_THROWS_AS(distribution_from_json(json{{"kind", "nope"}}), ConfigError);
    CHECK_THROWS_AS(
        distribution_from_json(json{{"kind", "explicit-weighted"}, {"weights", {"1/3", "1/3"}}}),
        ConfigError);
}

TEST_CASE("domain batch schemas") {
    SUBCASE("tu batches") {
        const json j = json::parse(R"([{"coalition": [0, 2], "value": "5/2"}])");
        const auto batch = tu_batch_from_json(j, 3);
        REQUIRE(batch.size() == 1);
        CHECK(batch[0].coalition == 0b101);
        CHECK(batch[0].value == Rational(5, 2));
        CHECK_THROWS_AS(tu_batch_from_json(json::parse(R"([{"coalition": [7], "value": "1"}])"), 3),
                        ConfigError);
    }
    SUBCASE("hedonic batches") {
        const json j = json::parse(R"([{"coalition": [0, 1], "values": ["1", "2"]}])");
        const auto batch = hedonic_batch_from_json(j, 3);
        REQUIRE(batch.size() == 1);
        CHECK(batch[0].coalition == 0b011);
        CHECK(batch[0].values == std::vector<Rational>{Rational(1), Rational(2)});
        CHECK_THROWS_AS(
            hedonic_batch_from_json(json::parse(R"([{"coalition": [0, 1], "values": ["1"]}])"), 3),
            ConfigError);
    }
    SUBCASE("market problems") {
        const json j = json::parse(R"({
            "goods": 2,
            "budgets": ["1", "2"],
            "samples": [{"bundle": [0], "values": ["3", "4"]}]
        })");
        const auto mp = market_from_json(j);
        CHECK(mp.n == 2);
        CHECK(mp.k == 2);
        CHECK(mp.batch.samples[0].bundle == 0b01);
        CHECK(mp.batch.samples[0].values[1] == Rational(4));
    }
    SUBCASE("profiles") {
        const json j = json::parse(R"({"candidates": 3, "rankings": [[0,1,2],[2,1,0],[1,0,2]]})");
        const auto p = profile_from_json(j);
        CHECK(p.num_voters() == 3);
        const json bad = json::parse(R"({"candidates": 3, "rankings": [[0,1,1]]})");
        CHECK_THROWS_AS(profile_from_json(bad), ConfigError);
    }
}

TEST_CASE("partition and payoff emission") {
    Partition pi;
    pi.rgs = {0, 1, 0};
    CHECK(partition_to_json(pi).dump() == R"([[0,2],[1]])");
    CHECK(payoff_to_json({Rational(1, 2), Rational(3)}).dump() == R"(["1/2","3"])");
}

TEST_CASE("validation config parsing enforces invariants") {
    const json good = json::parse(
        R"({"epsilon": "1/5", "delta": "1/10", "m": 24, "trials": 10, "holdout": 100, "seed": 7})");
    const auto c = validation_config_from_json(good);
    CHECK(c.epsilon == Rational(1, 5));
    CHECK(c.sample_size == 24);
    CHECK(c.slack_z == Rational(2));  // default

    json bad = good;
    bad["epsilon"] = "0";
    CHECK_THROWS_AS(validation_config_from_json(bad), ConfigError);
    json missing = good;
    missing.erase("seed");
    CHECK_THROWS_AS(validation_config_from_json(missing), ConfigError);
}

TEST_CASE("report serialization is complete and ordered") {
    ValidationReport r;
    r.per_trial = {{0, Rational(0), false, false}, {1, Rational(1, 2), true, false}};
    r.failure_fraction = Rational(1, 2);
    r.threshold = 0.25;
    r.pass = false;
    r.provenance = R"({"tool":"x"})";
    const json j = report_to_json(r);
    CHECK(j["verdict"] == "fail");
    CHECK(j["failure_fraction"] == "1/2");
    CHECK(j["per_trial"].size() == 2);
    CHECK(j["per_trial"][1]["loss"] == "1/2");
    CHECK(j["provenance"]["tool"] == "x");

    const std::string csv = report_to_csv(r);
    CHECK(csv ==
          "trial,loss,loss_exact,exceeded_epsilon,solver_error\n"
          "0,0,0,0,0\n"
          "1,0.5,1/2,1,0\n");
}
