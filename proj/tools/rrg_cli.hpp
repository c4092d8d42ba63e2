// Command-line front end: generate / run / verify / metrics.
//
// Exit codes: 0 ok, 1 usage error, 2 runtime or I/O failure, 3 a verify
// suite ran but failed.
#pragma once

#include "rrg/edge_list.hpp"
#include "rrg/engine.hpp"
#include "rrg/metrics.hpp"
#include "rrg/report.hpp"
#include "rrg/topology.hpp"
#include "rrg_verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace rrg::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2, kVerifyFailed = 3 };

struct GenOptions {
    std::string kind = "random";
    std::size_t n = 0;
    std::size_t e = 0;
    std::optional<std::uint64_t> seed;
};

inline GenSpec resolve_gen(const GenOptions& o, std::uint64_t fallback_seed)
{
    auto kind = parse_graph_kind(o.kind);
    if (!kind)
        throw UsageError("unknown graph kind '" + o.kind + "'");
    GenSpec spec{*kind, o.n, o.e, o.seed.value_or(fallback_seed)};
    if (spec.n == 0)
        spec.n = default_fixture_size(spec.kind);
    if (spec.n == 0)
        throw UsageError("--n is required for kind '" + o.kind + "'");
    if (spec.kind == GraphKind::RandomConnected && o.e == 0)
        throw UsageError("--e is required for random graphs");
    return spec;
}

inline std::ofstream open_out(const fs::path& p)
{
    std::ofstream os(p);
    if (!os)
        throw std::runtime_error("cannot write " + p.string());
    return os;
}

inline LabeledGraph load_graph(const fs::path& p)
{
    std::ifstream is(p);
    if (!is)
        throw std::runtime_error("cannot read " + p.string());
    return read_edge_list(is);
}

/// "3" -> {3}; "0..4" -> {0,1,2,3,4}; "1,5,9" -> {1,5,9}
inline std::vector<std::uint64_t> parse_seed_list(const std::string& s)
{
    std::vector<std::uint64_t> out;
    auto num = [&](const std::string& t) {
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (t.empty() || used != t.size())
            throw UsageError("bad seed list '" + s + "'");
        return v;
    };
    if (auto dots = s.find(".."); dots != std::string::npos) {
        const auto a = num(s.substr(0, dots)), b = num(s.substr(dots + 2));
        if (b < a)
            throw UsageError("bad seed range '" + s + "'");
        for (auto v = a; v <= b; ++v)
            out.push_back(v);
        return out;
    }
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');)
        out.push_back(num(part));
    if (out.empty())
        throw UsageError("empty seed list");
    return out;
}

/// Splices `--config FILE` (key=value lines, '#' comments) into the argument
/// list right after the subcommand, so flags given explicitly win.
inline std::vector<std::string> expand_config(std::vector<std::string> args)
{
    for (std::size_t k = 1; k < args.size(); ++k) {
        std::string file;
        std::size_t erase = 0;
        if (args[k] == "--config" && k + 1 < args.size()) {
            file = args[k + 1];
            erase = 2;
        } else if (args[k].rfind("--config=", 0) == 0) {
            file = args[k].substr(9);
            erase = 1;
        } else {
            continue;
        }
        std::ifstream is(file);
        if (!is)
            throw std::runtime_error("cannot read config " + file);
        std::vector<std::string> injected;
        for (std::string line; std::getline(is, line);) {
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            auto trim = [](std::string t) {
                const auto a = t.find_first_not_of(" \t\r");
                const auto b = t.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
            };
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw UsageError("config line without '=': " + line);
            std::string key = trim(line.substr(0, eq));
            std::replace(key.begin(), key.end(), '_', '-');
            injected.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(k),
                   args.begin() + static_cast<std::ptrdiff_t>(k + erase));
        args.insert(args.begin() + 2, injected.begin(), injected.end());
        break;
    }
    return args;
}

inline void add_gen_flags(CLI::App* cmd, GenOptions& gen)
{
    cmd->add_option("--kind", gen.kind, "random|path|cycle|star|prism|k33|barbell");
    cmd->add_option("--n", gen.n, "node count");
    cmd->add_option("--e", gen.e, "edge count (random only)");
}

struct RunManifest {
    ExperimentConfig config;
    GenOptions gen;
    std::string input;
    std::string grammar = "phi_star";
    std::string out_dir;
    std::string seeds;
    std::optional<std::size_t> rounds_after_absorption;
    unsigned threads = 0;
    bool dot = false;
};

inline nlohmann::json run_one(const RunManifest& man, std::uint64_t seed, const fs::path& dir)
{
    ExperimentConfig cfg = man.config;
    cfg.seed = seed;
    nlohmann::json source;
    LabeledGraph g0;
    if (!man.input.empty()) {
        g0 = load_graph(man.input);
        source = {{"input", man.input}};
    } else {
        const GenSpec spec = resolve_gen(man.gen, seed);
        g0 = generate(spec);
        source = {{"kind", std::string(to_string(spec.kind))}, {"n", spec.n}, {"e", spec.e},
                  {"seed", spec.seed}};
    }
    if (!is_connected(g0))
        throw SetupError("initial graph is disconnected");

    fs::create_directories(dir);
    RunHooks hooks;
    hooks.on_snapshot = [&](std::size_t step, const LabeledGraph& g) {
        const std::string stem = "snap_" + std::to_string(step);
        auto el = open_out(dir / (stem + ".el"));
        write_edge_list(el, g, true);
        if (man.dot) {
            auto dot = open_out(dir / (stem + ".dot"));
            write_dot(dot, g);
        }
    };
    const auto start = std::chrono::steady_clock::now();
    const Trace trace = run(std::move(g0), cfg, hooks);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto csv = open_out(dir / "trace.csv");
    write_trace_csv(csv, trace);
    nlohmann::json summary = summary_json(trace, wall);
    summary["initial_graph"] = source;
    auto js = open_out(dir / "summary.json");
    js << summary.dump(2) << '\n';
    return summary;
}

inline int cmd_run(RunManifest man, std::ostream& out)
{
    auto grammar = parse_grammar(man.grammar);
    if (!grammar)
        throw UsageError("unknown grammar '" + man.grammar + "'");
    man.config.grammar = *grammar;
    man.config.rounds_after_absorption = man.rounds_after_absorption;
    man.config.validate();
    if (man.out_dir.empty())
        throw UsageError("--out is required");

    if (man.seeds.empty()) {
        auto summary = run_one(man, man.config.seed, man.out_dir);
        out << summary.dump(2) << '\n';
        return kOk;
    }

    const auto seeds = parse_seed_list(man.seeds);
    std::vector<nlohmann::json> summaries(seeds.size());
    std::vector<std::string> errors(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < seeds.size();) {
            try {
                summaries[k] = run_one(man, seeds[k], fs::path(man.out_dir) / ("seed_" + std::to_string(seeds[k])));
            } catch (const std::exception& ex) {
                errors[k] = ex.what();
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(man.threads ? man.threads : hw, seeds.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < count; ++t)
        pool.emplace_back(worker);
    pool.clear();

    nlohmann::json sweep = nlohmann::json::array();
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (!errors[k].empty())
            throw std::runtime_error("seed " + std::to_string(seeds[k]) + ": " + errors[k]);
        sweep.push_back({{"seed", seeds[k]},
                         {"absorption_step", summaries[k]["absorption_step"]},
                         {"absorbed_m", summaries[k]["absorbed_m"]},
                         {"final_alpha", summaries[k]["final_alpha"]}});
    }
    auto os = open_out(fs::path(man.out_dir) / "sweep.json");
    os << sweep.dump(2) << '\n';
    out << sweep.dump(2) << '\n';
    return kOk;
}

inline int cmd_generate(const GenOptions& gen, const std::string& out_path, const std::string& dot_path,
                        std::ostream& out)
{
    const LabeledGraph g = generate(resolve_gen(gen, 0));
    if (out_path.empty()) {
        write_edge_list(out, g);
    } else {
        auto os = open_out(out_path);
        write_edge_list(os, g);
    }
    if (!dot_path.empty()) {
        auto os = open_out(dot_path);
        write_dot(os, g);
    }
    return kOk;
}

inline int cmd_metrics(const std::string& input, std::ostream& out)
{
    const LabeledGraph g = load_graph(input);
    const MetricsSample s = sample_metrics(g, 0, g.node_count() >= 2);
    nlohmann::json j{{"n", g.node_count()}, {"edges", s.edges},        {"f", s.f},
                     {"dbar", s.dbar.value()}, {"wsum", s.wsum},       {"connected", is_connected(g)},
                     {"regular", s.f == 0}};
    j["alpha"] = s.alpha ? nlohmann::json(*s.alpha) : nlohmann::json();
    out << j.dump(2) << '\n';
    return kOk;
}

inline int cmd_verify(const std::string& suite, const VerifyParams& p, const std::string& report_path,
                      std::ostream& out)
{
    nlohmann::json report;
    if (suite == "uniformity")
        report = verify_uniformity(p);
    else if (suite == "symmetry")
        report = verify_symmetry(p);
    else if (suite == "ledger")
        report = verify_ledger(p);
    else if (suite == "connectivity")
        report = verify_connectivity(p);
    else if (suite == "absorption")
        report = verify_absorption(p);
    else
        throw UsageError("unknown suite '" + suite + "'");
    out << report.dump(2) << '\n';
    if (!report_path.empty()) {
        auto os = open_out(report_path);
        os << report.dump(2) << '\n';
    }
    return report["pass"].get<bool>() ? kOk : kVerifyFailed;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rule-based regular graph construction"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    GenOptions gen;
    std::string gen_out, gen_dot;
    std::uint64_t gen_seed = 0;
    auto* generate_cmd = app.add_subcommand("generate", "write an initial graph as an edge list");
    add_gen_flags(generate_cmd, gen);
    generate_cmd->add_option("--seed", gen_seed, "generator seed");
    generate_cmd->add_option("--out", gen_out, "edge-list path (stdout if omitted)");
    generate_cmd->add_option("--dot", gen_dot, "also write Graphviz DOT here");

    RunManifest man;
    std::uint64_t man_gen_seed = 0;
    auto* run_cmd = app.add_subcommand("run", "run the rule engine and write trace.csv/summary.json");
    add_gen_flags(run_cmd, man.gen);
    auto* gen_seed_opt = run_cmd->add_option("--gen-seed", man_gen_seed, "generator seed (defaults to --seed)");
    std::string config_file; // consumed by expand_config; declared for --help
    run_cmd->add_option("--config", config_file, "key=value file; explicit flags override it");
    run_cmd->add_option("--input", man.input, "start from this edge list instead of generating");
    run_cmd->add_option("--grammar", man.grammar, "phi_r|phi_rr|phi_star");
    run_cmd->add_option("--epsilon", man.config.epsilon);
    run_cmd->add_option("--beta", man.config.beta);
    run_cmd->add_option("--seed", man.config.seed);
    run_cmd->add_option("--steps,--max-steps", man.config.max_steps);
    run_cmd->add_option("--metrics-every", man.config.metrics_every);
    run_cmd->add_option("--alpha-every", man.config.alpha_every, "0 disables alpha");
    run_cmd->add_option("--snapshot-every", man.config.snapshot_every, "0 disables snapshots");
    run_cmd->add_option("--rounds-after-absorption", man.rounds_after_absorption);
    run_cmd->add_option("--out", man.out_dir, "output directory")->required();
    run_cmd->add_option("--seeds", man.seeds, "seed sweep: a..b or a,b,c");
    run_cmd->add_option("--threads", man.threads, "sweep workers (default: hardware)");
    run_cmd->add_flag("--dot", man.dot, "also write DOT snapshots");

    std::string suite, report_path;
    VerifyParams vp;
    auto* verify_cmd = app.add_subcommand("verify", "run a self-check suite");
    verify_cmd->add_option("suite", suite, "uniformity|symmetry|ledger|connectivity|absorption")->required();
    verify_cmd->add_option("--n", vp.n);
    verify_cmd->add_option("--m", vp.m);
    verify_cmd->add_option("--e", vp.e);
    verify_cmd->add_option("--steps", vp.steps);
    verify_cmd->add_option("--runs", vp.runs);
    verify_cmd->add_option("--samples", vp.samples);
    verify_cmd->add_option("--burn-in", vp.burn_in);
    verify_cmd->add_option("--stride", vp.stride);
    verify_cmd->add_option("--trials", vp.trials);
    verify_cmd->add_option("--epsilon", vp.epsilon);
    verify_cmd->add_option("--beta", vp.beta);
    verify_cmd->add_option("--quantile", vp.quantile);
    verify_cmd->add_option("--min-fraction", vp.min_fraction);
    verify_cmd->add_option("--seed", vp.seed);
    verify_cmd->add_option("--report", report_path, "also write the JSON report here");

    std::string metrics_input;
    auto* metrics_cmd = app.add_subcommand("metrics", "print metrics of an edge-list file");
    metrics_cmd->add_option("input", metrics_input)->required();

    try {
        args = expand_config(std::move(args));
        std::vector<const char*> argv;
        for (const auto& a : args)
            argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }

    try {
        if (generate_cmd->parsed()) {
            if (generate_cmd->count("--seed"))
                gen.seed = gen_seed;
            return cmd_generate(gen, gen_out, gen_dot, out);
        }
        if (run_cmd->parsed()) {
            if (gen_seed_opt->count())
                man.gen.seed = man_gen_seed;
            return cmd_run(std::move(man), out);
        }
        if (verify_cmd->parsed())
            return cmd_verify(suite, vp, report_path, out);
        return cmd_metrics(metrics_input, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

} // namespace rrg::cli
