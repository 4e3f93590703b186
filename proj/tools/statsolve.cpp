// statsolve: batch front end for the statistical solution-concept toolkit.
//
// One JSON config document per run, dispatched on its "domain" field:
//   tucore    minimal-subsidy payoff for sampled coalition constraints
//   hedonic   consistent-partition search against a game spec
//   condorcet tournament analysis and sampled-winner queries
//   market    consistent Fisher-market outcome search
//   dimension brute-force dimension estimators with witnesses
//   validate  Monte-Carlo (epsilon, delta) certification of a solver pipeline
//   uc        uniform-convergence certification on an explicit instance
//
// Exit codes: 0 success/pass, 1 failed verdict or NotFound-style outcome,
// 2 config or schema error.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "statsolve/experiments.hpp"
#include "statsolve/json_io.hpp"

namespace {

using namespace statsolve;

constexpr const char* kVersion = "0.1.0";

struct CliOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::string format = "json";
    bool quiet = false;
};

void apply_seed_override(json& cfg, std::uint64_t seed) {
    for (const char* section : {"validation", "dist", "generator", "game"})
        if (cfg.contains(section) && cfg[section].is_object()) cfg[section]["seed"] = seed;
    if (cfg.contains("seed")) cfg["seed"] = seed;
}

json provenance(const json& resolved_config) {
    return json{{"tool", "statsolve"}, {"version", kVersion}, {"config", resolved_config}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void emit(const CliOptions& opts, const json& report, const std::string& summary) {
    std::filesystem::create_directories(opts.out_dir);
    write_file(std::filesystem::path(opts.out_dir) / "report.json", report.dump(2) + "\n");
    if (!opts.quiet) std::cout << summary << "\n";
}

HedonicGame hedonic_game_from_json(const json& spec, int n) {
    const std::string kind = jio::require(spec, "kind", "game").get<std::string>();
    if (kind == "additively-separable") {
        if (spec.contains("weights")) {
            std::vector<std::vector<Rational>> w;
            for (const auto& row : spec.at("weights")) {
                std::vector<Rational> r;
                for (const auto& e : row) r.push_back(jio::rational_from_json(e, "game.weights"));
                w.push_back(std::move(r));
            }
            if (static_cast<int>(w.size()) != n)
                throw ConfigError("game.weights", "expected an n-by-n matrix");
            for (const auto& row : w)
                if (static_cast<int>(row.size()) != n)
                    throw ConfigError("game.weights", "expected an n-by-n matrix");
            return make_additively_separable_game(n, std::move(w));
        }
        const auto seed = jio::u64_from_json(jio::require(spec, "seed", "game"), "game.seed");
        const int max_weight = spec.contains("max_weight")
                                   ? jio::int_from_json(spec.at("max_weight"), "game.max_weight")
                                   : 10;
        const bool neg = spec.contains("allow_negative") && spec.at("allow_negative").get<bool>();
        return make_additively_separable_game(n, seed, max_weight, neg);
    }
    if (kind == "friend-appreciation") {
        const auto seed = jio::u64_from_json(jio::require(spec, "seed", "game"), "game.seed");
        return make_friend_appreciation_game(n, seed);
    }
    throw ConfigError("game.kind", "unknown hedonic game kind \"" + kind + "\"");
}

int run_tucore(const CliOptions& opts, const json& cfg) {
    const int n = jio::int_from_json(jio::require(cfg, "n", "config"), "config.n");
    const auto batch = tu_batch_from_json(jio::require(cfg, "batch", "config"), n);
    const PayoffVector x = solve_core_lp(batch, n);

    json report;
    bool subsidy = false;
    Rational total(0);
    for (const auto& xi : x) total += xi;
    if (cfg.contains("grand_value")) {
        const Rational grand = jio::rational_from_json(cfg.at("grand_value"), "config.grand_value");
        const auto rescaled = rescale_to_efficiency(x, grand);
        subsidy = rescaled.subsidy_required;
        report["payoff"] = payoff_to_json(rescaled.payoff);
        report["minimal_subsidy_payoff"] = payoff_to_json(x);
        report["subsidy_required"] = subsidy;
    } else {
        report["payoff"] = payoff_to_json(x);
    }
    report["total"] = rational_to_json(total);
    report["provenance"] = provenance(cfg);
    emit(opts, report, "tucore: total payoff " + total.str() +
                           (subsidy ? " (subsidy required)" : ""));
    return 0;
}

int run_hedonic(const CliOptions& opts, const json& cfg) {
    const int n = jio::int_from_json(jio::require(cfg, "n", "config"), "config.n");
    const HedonicGame game = hedonic_game_from_json(jio::require(cfg, "game", "config"), n);
    const auto batch = hedonic_batch_from_json(jio::require(cfg, "batch", "config"), n);
    for (const auto& s : batch) {
        int idx = 0;
        for (int i = 0; i < n; ++i) {
            if (!(s.coalition >> i & 1)) continue;
            if (game(i, s.coalition) != s.values[idx])
                throw ConfigError("config.batch", "sample labels disagree with the game spec");
            ++idx;
        }
    }
    const bool strict = !cfg.contains("strict") || cfg.at("strict").get<bool>();
    const auto pi = consistent_partition_bruteforce(batch, game, strict);

    json report;
    report["strict_blocking"] = strict;
    report["provenance"] = provenance(cfg);
    if (!pi) {
        report["result"] = "NoConsistentPartition";
        emit(opts, report, "hedonic: NoConsistentPartition");
        return 1;
    }
    report["result"] = "consistent";
    report["partition"] = partition_to_json(*pi);
    emit(opts, report, "hedonic: consistent partition " + partition_to_json(*pi).dump());
    return 0;
}

int run_condorcet(const CliOptions& opts, const json& cfg) {
    PreferenceProfile profile;
    if (cfg.contains("profile")) {
        profile = profile_from_json(cfg.at("profile"));
    } else {
        const json& gen = jio::require(cfg, "generator", "config");
        CondorcetPipelineConfig cc;
        cc.num_candidates =
            jio::int_from_json(jio::require(gen, "candidates", "generator"), "generator.candidates");
        cc.num_voters =
            jio::int_from_json(jio::require(gen, "voters", "generator"), "generator.voters");
        cc.generator = jio::require(gen, "kind", "generator").get<std::string>();
        const auto seed = jio::u64_from_json(jio::require(gen, "seed", "generator"), "generator.seed");
        profile = make_condorcet_profile(cc, seed);
    }
    const TournamentGraph t = build_tournament(profile);

    json report;
    report["tournament"] = tournament_to_json(t);
    if (!t.has_ties()) {
        report["transitive"] = is_transitive(t);
        report["three_cycle_core_size"] = three_cycle_core_size(t);
    }
    std::vector<int> everyone(profile.num_candidates);
    for (int c = 0; c < profile.num_candidates; ++c) everyone[c] = c;
    const auto full_winner = empirical_condorcet_winner(profile, everyone);
    report["condorcet_winner"] = full_winner ? json(*full_winner) : json("none");
    report["provenance"] = provenance(cfg);

    int exit_code = 0;
    std::string summary = "condorcet: winner " + (full_winner ? std::to_string(*full_winner) : "none");
    if (cfg.contains("sample")) {
        std::vector<int> sample;
        for (const auto& e : cfg.at("sample"))
            sample.push_back(jio::int_from_json(e, "config.sample"));
        const auto w = empirical_condorcet_winner(profile, sample);
        report["sampled_winner"] = w ? json(*w) : json("NoEmpiricalWinner");
        if (!w) {
            exit_code = 1;
            summary = "condorcet: NoEmpiricalWinner over the sample";
        } else {
            summary = "condorcet: sampled winner " + std::to_string(*w);
        }
    }
    emit(opts, report, summary);
    return exit_code;
}

int run_market(const CliOptions& opts, const json& cfg) {
    const MarketProblem mp = market_from_json(cfg);
    const Rational zeta = jio::rational_from_json(jio::require(cfg, "zeta", "config"), "config.zeta");
    const Rational slack =
        jio::rational_from_json(jio::require(cfg, "price_slack", "config"), "config.price_slack");
    FisherInstance inst = fisher_from_batch(mp.n, mp.k, mp.budgets, mp.batch);
    const auto out = consistent_outcome_search(inst, mp.batch, zeta, slack);

    json report;
    report["provenance"] = provenance(cfg);
    if (!out) {
        report["result"] = "NotFound";
        emit(opts, report, "market: NotFound");
        return 1;
    }
    report["result"] = "consistent";
    report["outcome"] = outcome_to_json(*out, mp.k);
    emit(opts, report, "market: consistent outcome, excess_sq " + out->excess_sq.str());
    return 0;
}

int run_dimension(const CliOptions& opts, const json& cfg) {
    const std::string target =
        cfg.contains("target") ? cfg.at("target").get<std::string>() : std::string("solution");
    json report;
    report["provenance"] = provenance(cfg);
    int exit_code = 0;
    std::string summary;

    if (target == "vc") {
        const json& hyp = jio::require(cfg, "hypotheses", "config");
        const int points = jio::int_from_json(jio::require(cfg, "points", "config"), "config.points");
        std::vector<std::uint64_t> hs;
        for (const auto& h : hyp) {
            std::uint64_t mask = 0;
            int i = 0;
            for (const auto& b : h) {
                if (jio::int_from_json(b, "config.hypotheses") == 1) mask |= (1ULL << i);
                ++i;
            }
            hs.push_back(mask);
        }
        const int d = vc_dimension(points, hs);
        report["vc_dimension"] = d;
        summary = "vc dimension d = " + std::to_string(d);
    } else {
        ProblemInstance instance;
        if (cfg.contains("builtin")) {
            const std::string name = cfg.at("builtin").get<std::string>();
            const int size = cfg.contains("size")
                                 ? jio::int_from_json(cfg.at("size"), "config.size")
                                 : 4;
            if (name == "argmax") instance = builtin_argmax_instance(size);
            else if (name == "thresholds") instance = builtin_threshold_instance(size);
            else throw ConfigError("config.builtin", "unknown builtin instance \"" + name + "\"");
        } else {
            instance = instance_from_json(jio::require(cfg, "instance", "config"));
        }
        const int max_size = cfg.contains("max_size")
                                 ? jio::int_from_json(cfg.at("max_size"), "config.max_size")
                                 : -1;
        if (cfg.contains("erm")) {
            // optional ERM query against an explicit labelled batch
            const json& erm = cfg.at("erm");
            const SampleBatch batch = batch_from_json(jio::require(erm, "batch", "erm"), "erm.batch");
            json out;
            const auto worst = erm_worst_case(instance, batch);
            out["worst_case"] = json{{"solution", instance.solutions[worst.solution]},
                                     {"objective", rational_to_json(worst.objective)}};
            if (erm.contains("prior")) {
                std::vector<Rational> prior;
                for (const auto& w : erm.at("prior"))
                    prior.push_back(jio::rational_from_json(w, "erm.prior"));
                const auto bayes = erm_bayesian(instance, prior, batch);
                out["bayesian"] = json{{"solution", instance.solutions[bayes.solution]},
                                       {"objective", rational_to_json(bayes.objective)}};
            }
            report["erm"] = std::move(out);
        }
        const DimensionResult r = target == "natarajan"
                                      ? natarajan_dimension(instance, max_size)
                                      : solution_dimension(instance, max_size);
        report[target == "natarajan" ? "natarajan_dimension" : "solution_dimension"] = r.dimension;
        if (target == "natarajan") report["draft_material"] = true;
        report["witness"] = witness_to_json(r.witness);
        report["witness_revalidates"] = witness_revalidates(instance, r.witness);
        if (cfg.contains("bound")) {
            const int bound = jio::int_from_json(cfg.at("bound"), "config.bound");
            const bool ok = r.dimension <= bound;
            report["bound"] = bound;
            report["bound_ok"] = ok;
            if (!ok) exit_code = 1;
        }
        summary = (target == "natarajan" ? std::string("natarajan dimension d = ")
                                         : std::string("solution dimension d = ")) +
                  std::to_string(r.dimension);
    }
    emit(opts, report, summary);
    return exit_code;
}

int finish_validation(const CliOptions& opts, const json& cfg, const ValidationReport& report,
                      const std::string& label) {
    const json rj = report_to_json(report);
    std::filesystem::create_directories(opts.out_dir);
    write_file(std::filesystem::path(opts.out_dir) / "report.json", rj.dump(2) + "\n");
    if (opts.format == "csv")
        write_file(std::filesystem::path(opts.out_dir) / "report.csv", report_to_csv(report));
    if (!opts.quiet)
        std::cout << label << ": failure_fraction " << report.failure_fraction.str() << " vs threshold "
                  << report.threshold << " -> " << (report.pass ? "pass" : "fail") << "\n";
    return report.pass ? 0 : 1;
}

PacParameters pac_from_json(const json& cfg, const ValidationConfig& vc) {
    PacParameters p;
    p.epsilon = vc.epsilon;
    p.delta = vc.delta;
    if (cfg.contains("pac")) {
        const json& pj = cfg.at("pac");
        if (pj.contains("alpha1")) p.alpha1 = jio::rational_from_json(pj.at("alpha1"), "pac.alpha1");
        if (pj.contains("alpha2")) p.alpha2 = jio::rational_from_json(pj.at("alpha2"), "pac.alpha2");
    }
    return p;
}

int run_validate(const CliOptions& opts, const json& cfg) {
    ValidationConfig vc = validation_config_from_json(jio::require(cfg, "validation", "config"));
    const DistributionSpec dist = distribution_from_json(jio::require(cfg, "dist", "config"));
    const std::string pipeline = jio::require(cfg, "pipeline", "config").get<std::string>();

    if (vc.sample_size == 0) {
        if (!cfg.contains("derive_m_from_dimension"))
            throw ConfigError("validation.m", "missing sample size (or derive_m_from_dimension)");
        const auto d = jio::u64_from_json(cfg.at("derive_m_from_dimension"),
                                          "config.derive_m_from_dimension");
        vc.sample_size = consistent_sample_size(d, pac_from_json(cfg, vc));
    }

    json resolved = cfg;
    resolved["validation"]["m"] = vc.sample_size;

    TrialRunner runner;
    if (pipeline == "tucore") {
        TuPipelineConfig tu;
        tu.n = jio::int_from_json(jio::require(cfg, "n", "config"), "config.n");
        if (cfg.contains("generator")) tu.generator = cfg.at("generator").get<std::string>();
        if (cfg.contains("max_weight"))
            tu.max_weight = jio::int_from_json(cfg.at("max_weight"), "config.max_weight");
        if (cfg.contains("exact_loss")) tu.exact_loss = cfg.at("exact_loss").get<bool>();
        runner = make_tu_trial_runner(tu, dist, vc);
    } else if (pipeline == "hedonic") {
        HedonicPipelineConfig hc;
        hc.n = jio::int_from_json(jio::require(cfg, "n", "config"), "config.n");
        if (cfg.contains("generator")) hc.generator = cfg.at("generator").get<std::string>();
        if (cfg.contains("strict")) hc.strict = cfg.at("strict").get<bool>();
        if (cfg.contains("exact_loss")) hc.exact_loss = cfg.at("exact_loss").get<bool>();
        runner = make_hedonic_trial_runner(hc, dist, vc);
    } else if (pipeline == "condorcet") {
        CondorcetPipelineConfig cc;
        cc.num_candidates =
            jio::int_from_json(jio::require(cfg, "candidates", "config"), "config.candidates");
        cc.num_voters = jio::int_from_json(jio::require(cfg, "voters", "config"), "config.voters");
        if (cfg.contains("generator")) cc.generator = cfg.at("generator").get<std::string>();
        runner = make_condorcet_trial_runner(cc, dist, vc);
    } else {
        throw ConfigError("config.pipeline", "unknown pipeline \"" + pipeline + "\"");
    }

    const auto report = validate_pac(runner, vc, provenance(resolved).dump());
    return finish_validation(opts, cfg, report, "validate[" + pipeline + "]");
}

int run_uc(const CliOptions& opts, const json& cfg) {
    const ProblemInstance instance = instance_from_json(jio::require(cfg, "instance", "config"));
    const DistributionSpec dist = distribution_from_json(jio::require(cfg, "dist", "config"));
    ValidationConfig vc = validation_config_from_json(jio::require(cfg, "validation", "config"));
    const PacParameters params = pac_from_json(cfg, vc);
    if (vc.sample_size == 0) {
        const int d = solution_dimension(instance).dimension;
        vc.sample_size = uc_sample_size(static_cast<std::uint64_t>(d), params);
    }

    json resolved = cfg;
    resolved["validation"]["m"] = vc.sample_size;
    const auto report =
        validate_uniform_convergence(instance, dist, vc, params, provenance(resolved).dump());
    return finish_validation(opts, cfg, report, "uc");
}

int dispatch(const CliOptions& opts) {
    std::ifstream in(opts.config_path);
    if (!in) {
        std::cerr << "config error: cannot open " << opts.config_path << "\n";
        return 2;
    }
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte offset of the syntax error
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (opts.seed) apply_seed_override(cfg, *opts.seed);
        const std::string domain = jio::require(cfg, "domain", "config").get<std::string>();
        if (domain == "tucore") return run_tucore(opts, cfg);
        if (domain == "hedonic") return run_hedonic(opts, cfg);
        if (domain == "condorcet") return run_condorcet(opts, cfg);
        if (domain == "market") return run_market(opts, cfg);
        if (domain == "dimension") return run_dimension(opts, cfg);
        if (domain == "validate") return run_validate(opts, cfg);
        if (domain == "uc") return run_uc(opts, cfg);
        throw ConfigError("config.domain", "unknown domain \"" + domain + "\"");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical solution-concept toolkit"};
    CliOptions opts;
    app.add_option("--config", opts.config_path, "JSON run configuration")->required();
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override every seed in the config");
    app.add_option("--out", opts.out_dir, "report output directory (default .)");
    app.add_option("--format", opts.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--quiet", opts.quiet, "suppress the stdout summary");
    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) opts.seed = seed_value;
    return dispatch(opts);
}
