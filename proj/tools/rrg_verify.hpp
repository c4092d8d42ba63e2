// Self-checks behind `rrg verify <suite>`. Each suite returns a JSON report
// with a top-level "pass" flag.
#pragma once

#include "rrg/engine.hpp"
#include "rrg/oracle.hpp"
#include "rrg/topology.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <string>

namespace rrg::cli {

struct VerifyParams {
    std::size_t n = 0; ///< 0 picks the suite default
    std::size_t m = 3;
    std::size_t e = 0; ///< 0 picks ceil(1.35 n)
    std::size_t steps = 0;
    std::size_t runs = 0;
    std::size_t samples = 100000;
    std::size_t burn_in = 10000;
    std::size_t stride = 0; ///< 0 picks 10 n
    std::size_t trials = 100000;
    double epsilon = 0.0; ///< 0 picks the suite default
    double beta = 0.0;
    double quantile = 0.999;
    double min_fraction = 0.95;
    std::uint64_t seed = 1;
};

inline std::size_t or_default(std::size_t v, std::size_t d) { return v ? v : d; }
inline double or_default(double v, double d) { return v > 0.0 ? v : d; }

inline nlohmann::json verify_uniformity(const VerifyParams& p)
{
    const std::size_t n = or_default(p.n, 6);
    const auto states = enumerate_labeled_regular(n, p.m, true);
    if (states.size() < 2)
        throw UsageError("uniformity: need at least two connected " + std::to_string(p.m) +
                         "-regular graphs on " + std::to_string(n) + " nodes");
    ExperimentConfig cfg;
    cfg.grammar = Grammar::PhiRR;
    cfg.epsilon = or_default(p.epsilon, 0.2);
    cfg.seed = p.seed;
    cfg.validate();
    Simulation sim(LabeledGraph::from_edges(n, states.front()), cfg);
    const std::size_t stride = or_default(p.stride, 10 * n);
    Histogram hist = sample_chain(sim, p.burn_in, stride, p.samples, HistogramKey::Labeled);
    const ChiSquare chi = chi_square_uniform(hist, states);
    const double threshold = chi_square_quantile(p.quantile, chi.dof);
    return {{"suite", "uniformity"},
            {"n", n},
            {"m", p.m},
            {"states", states.size()},
            {"visited", hist.buckets.size()},
            {"samples", hist.total},
            {"burn_in", p.burn_in},
            {"stride", stride},
            {"epsilon", cfg.epsilon},
            {"statistic", chi.statistic},
            {"dof", chi.dof},
            {"threshold", threshold},
            {"pass", chi.statistic < threshold}};
}

inline LabeledGraph first_r2_neighbor(const LabeledGraph& g)
{
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (NodeId j : g.neighbors(i))
            for (NodeId h : g.neighbors(i))
                for (NodeId f : g.neighbors(j))
                    if (r2_applicable(g, i, j, h, f))
                        return apply_r2(g, i, j, h, f);
    throw UsageError("graph admits no R2 move");
}

inline nlohmann::json verify_symmetry(const VerifyParams& p)
{
    ExperimentConfig cfg;
    cfg.grammar = Grammar::PhiStar;
    cfg.epsilon = or_default(p.epsilon, 0.2);
    cfg.beta = or_default(p.beta, 0.1);
    cfg.seed = p.seed;

    LabeledGraph prism = prism_graph(6);
    LabeledGraph k33 = complete_bipartite_33();
    LabeledGraph flagged = prism;
    flagged.set_flag(0, true);
    LabeledGraph swapped = prism;
    swapped.set_flag(1, true);
    const std::vector<std::tuple<std::string, LabeledGraph, LabeledGraph>> pairs{
        {"r2_prism", prism, first_r2_neighbor(prism)},
        {"r2_k33", k33, first_r2_neighbor(k33)},
        {"r4_prism", flagged, swapped},
    };

    nlohmann::json report{{"suite", "symmetry"}, {"trials", p.trials}, {"epsilon", cfg.epsilon},
                          {"beta", cfg.beta}};
    bool all = true;
    for (const auto& [name, a, b] : pairs) {
        const TransitionEstimate est = estimate_transition_symmetry(a, b, p.trials, cfg);
        const bool ok = est.p_forward > 0.0 && est.symmetric_within(3.0);
        all = all && ok;
        report["pairs"].push_back({{"name", name},
                                   {"p_forward", est.p_forward},
                                   {"p_backward", est.p_backward},
                                   {"stderr_forward", est.stderr_forward},
                                   {"stderr_backward", est.stderr_backward},
                                   {"pass", ok}});
    }
    report["pass"] = all;
    return report;
}

struct Audit {
    std::size_t rounds = 0;
    std::size_t disconnected = 0;
    std::size_t ledger_breaks = 0;
    std::size_t edge_bound_breaks = 0;
};

/// Runs PhiStar from random connected graphs and checks every round.
inline Audit audit_rounds(const VerifyParams& p, std::size_t n, std::size_t e, std::size_t runs)
{
    Audit audit;
    for (std::size_t r = 0; r < runs; ++r) {
        LabeledGraph g0 = random_connected(n, e, derive_seed(p.seed, 2 * r));
        ExperimentConfig cfg;
        cfg.grammar = Grammar::PhiStar;
        cfg.epsilon = or_default(p.epsilon, 0.1);
        cfg.beta = or_default(p.beta, 0.1);
        cfg.seed = derive_seed(p.seed, 2 * r + 1);
        cfg.max_steps = or_default(p.steps, 20000);
        cfg.alpha_every = 0;
        cfg.metrics_every = cfg.max_steps;
        RunHooks hooks;
        hooks.on_round = [&](const LabeledGraph& g, const RoundLog&) {
            ++audit.rounds;
            audit.disconnected += !is_connected(g);
            audit.ledger_breaks += g.edge_count() - e != g.flag_sum();
            audit.edge_bound_breaks += g.edge_count() < e || g.edge_count() > e + n;
        };
        run(std::move(g0), cfg, hooks);
    }
    return audit;
}

inline std::size_t default_edges(std::size_t n)
{
    return static_cast<std::size_t>(std::ceil(1.35 * static_cast<double>(n)));
}

inline nlohmann::json verify_ledger(const VerifyParams& p)
{
    const std::size_t n = or_default(p.n, 30);
    const std::size_t e = or_default(p.e, default_edges(n));
    const Audit a = audit_rounds(p, n, e, or_default(p.runs, 1));
    return {{"suite", "ledger"},       {"n", n},
            {"e", e},                  {"rounds", a.rounds},
            {"ledger_breaks", a.ledger_breaks},
            {"edge_bound_breaks", a.edge_bound_breaks},
            {"pass", a.ledger_breaks == 0 && a.edge_bound_breaks == 0}};
}

inline nlohmann::json verify_connectivity(const VerifyParams& p)
{
    const std::size_t n = or_default(p.n, 50);
    const std::size_t e = or_default(p.e, default_edges(n));
    const Audit a = audit_rounds(p, n, e, or_default(p.runs, 5));
    return {{"suite", "connectivity"}, {"n", n},
            {"e", e},                  {"rounds", a.rounds},
            {"disconnected", a.disconnected},
            {"pass", a.disconnected == 0}};
}

inline nlohmann::json verify_absorption(const VerifyParams& p)
{
    const std::size_t n = or_default(p.n, 20);
    const std::size_t e = or_default(p.e, default_edges(n));
    const std::size_t runs = or_default(p.runs, 50);
    const auto feasible = feasible_m_set(n, e);
    std::map<std::string, std::size_t> outcomes;
    std::size_t good = 0;
    for (std::size_t r = 0; r < runs; ++r) {
        ExperimentConfig cfg;
        cfg.grammar = Grammar::PhiStar;
        cfg.epsilon = or_default(p.epsilon, 0.05);
        cfg.beta = or_default(p.beta, 0.05);
        cfg.seed = derive_seed(p.seed, 2 * r + 1);
        cfg.max_steps = or_default(p.steps, 200000);
        cfg.alpha_every = 0;
        cfg.metrics_every = cfg.max_steps;
        cfg.rounds_after_absorption = 0;
        const Trace t = run(random_connected(n, e, derive_seed(p.seed, 2 * r)), cfg);
        if (!t.absorbed_m) {
            ++outcomes["none"];
            continue;
        }
        ++outcomes["m=" + std::to_string(*t.absorbed_m)];
        good += std::find(feasible.begin(), feasible.end(), *t.absorbed_m) != feasible.end();
    }
    const double fraction = static_cast<double>(good) / static_cast<double>(runs);
    return {{"suite", "absorption"}, {"n", n},
            {"e", e},                {"runs", runs},
            {"feasible_m", feasible}, {"outcomes", outcomes},
            {"fraction", fraction},  {"pass", fraction >= p.min_fraction}};
}

} // namespace rrg::cli
