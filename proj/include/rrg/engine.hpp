// Synchronous-round simulator for the matched-pair protocol.
//
// Each round:
//   1. every node is active with probability 1 - epsilon (one uniform draw per
//      node, in id order; active iff draw >= epsilon);
//   2. every active node picks a uniform neighbor (one index draw per active
//      node, in id order, indexing the ascending neighbor list);
//   3. nodes that picked each other form matched pairs, processed in ascending
//      order of their smaller id. A pair is oriented so that d_i >= d_j, with
//      ties giving i the larger id. Per pair the draws are: rule (skipped when
//      the grammar has one rule), h, f, then the beta draw, each only when the
//      branch reaches it.
//
// All decisions of a round are taken against the pre-round graph and then
// committed together. Followers pick exactly one node, so the transformations
// of a round never share a node.
#pragma once

#include "rrg/grammar.hpp"
#include "rrg/graph.hpp"
#include "rrg/metrics.hpp"
#include "rrg/random.hpp"

#include <cassert>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rrg {

struct ExperimentConfig {
    Grammar grammar = Grammar::PhiStar;
    double epsilon = 0.01;
    double beta = 0.01;
    std::uint64_t seed = 0;
    std::size_t max_steps = 100000;
    std::size_t metrics_every = 100;
    /// Cadence of algebraic-connectivity samples; 0 disables them.
    std::size_t alpha_every = 100;
    /// Cadence of snapshot callbacks; 0 disables them.
    std::size_t snapshot_every = 0;
    /// When set, stop this many rounds after the first regular graph.
    std::optional<std::size_t> rounds_after_absorption;

    void validate() const
    {
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw UsageError("epsilon must lie in (0,1)");
        if (grammar == Grammar::PhiStar && !(beta > 0.0 && beta < 1.0))
            throw UsageError("beta must lie in (0,1)");
        if (max_steps < 1)
            throw UsageError("max_steps must be at least 1");
        if (metrics_every < 1)
            throw UsageError("metrics_every must be at least 1");
    }

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Oriented matched pair: degree(i) >= degree(j).
struct MatchedPair {
    NodeId i = 0;
    NodeId j = 0;

    friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct RoundLog {
    std::size_t step = 0;
    std::vector<NodeId> active;
    std::vector<std::optional<NodeId>> picks;
    std::vector<MatchedPair> matched;
    std::vector<RuleKind> chosen_rules;
    /// One entry per matched pair, in the same order; NoOp when nothing happened.
    std::vector<RuleApplication> applications;

    std::size_t executed() const
    {
        std::size_t k = 0;
        for (const auto& a : applications)
            k += a.effect != Effect::NoOp;
        return k;
    }
};

/// Nodes that picked `i`, ascending.
inline std::vector<std::vector<NodeId>> picked_by(std::span<const std::optional<NodeId>> picks)
{
    std::vector<std::vector<NodeId>> r(picks.size());
    for (NodeId u = 0; u < picks.size(); ++u)
        if (picks[u])
            r[*picks[u]].push_back(u);
    return r;
}

/// Decides one round against `g` without mutating it.
template <RandomSource Source>
RoundLog plan_round(const LabeledGraph& g, const ExperimentConfig& cfg, Source& rng,
                    std::size_t step = 0)
{
    const std::size_t n = g.node_count();
    RoundLog log;
    log.step = step;
    log.picks.assign(n, std::nullopt);

    std::vector<char> active(n, 0);
    for (NodeId u = 0; u < n; ++u) {
        active[u] = rng.uniform01() >= cfg.epsilon;
        if (active[u])
            log.active.push_back(u);
    }
    for (NodeId u : log.active) {
        auto nbrs = g.neighbors(u);
        if (!nbrs.empty())
            log.picks[u] = nbrs[rng.uniform_index(nbrs.size())];
    }

    const auto requests = picked_by(log.picks);
    const auto rules = rule_set(cfg.grammar);

    // A uniform member of `from` other than `excluded` (which is a member).
    auto pick_follower = [&](const std::vector<NodeId>& from, NodeId excluded) {
        std::size_t k = rng.uniform_index(from.size() - 1);
        for (NodeId v : from) {
            if (v == excluded)
                continue;
            if (k-- == 0)
                return v;
        }
        assert(false);
        return excluded;
    };

    for (NodeId a = 0; a < n; ++a) {
        if (!log.picks[a])
            continue;
        const NodeId b = *log.picks[a];
        if (b <= a || log.picks[b] != a)
            continue;

        const std::size_t da = g.degree(a), db = g.degree(b);
        const MatchedPair pair = (da > db || (da == db && a > b)) ? MatchedPair{a, b} : MatchedPair{b, a};
        log.matched.push_back(pair);

        const RuleKind kind = rules.size() == 1 ? rules[0] : rules[rng.uniform_index(rules.size())];
        log.chosen_rules.push_back(kind);

        const NodeId i = pair.i, j = pair.j;
        const auto& ri = requests[i];
        const auto& rj = requests[j];
        RuleApplication app{kind, Effect::NoOp, i, j, std::nullopt, std::nullopt};

        switch (kind) {
        case RuleKind::R1:
            if (g.degree(i) > g.degree(j) && ri.size() >= 2) {
                const NodeId h = pick_follower(ri, j);
                app.h = h;
                if (!g.has_edge(j, h)) {
                    if (cfg.grammar != Grammar::PhiStar || rng.uniform01() >= cfg.beta)
                        app.effect = Effect::Rewire;
                    else if (!g.flag(i))
                        app.effect = Effect::AddEdge;
                }
            }
            break;
        case RuleKind::R2:
            if (ri.size() >= 2 && rj.size() >= 2) {
                const NodeId h = pick_follower(ri, j);
                const NodeId f = pick_follower(rj, i);
                app.h = h;
                app.f = f;
                if (!g.has_edge(i, f) && !g.has_edge(j, h))
                    app.effect = Effect::SwapNeighbors;
            }
            break;
        case RuleKind::R3:
            if (g.degree(i) > g.degree(j) && ri.size() >= 2 && g.flag(i)) {
                const NodeId h = pick_follower(ri, j);
                app.h = h;
                if (g.has_edge(j, h))
                    app.effect = Effect::RemoveEdge;
            }
            break;
        case RuleKind::R4:
            app.effect = Effect::SwapFlags;
            break;
        }

        assert(app.effect != Effect::Rewire || r1_applicable(g, i, j, *app.h));
        assert(app.effect != Effect::AddEdge || (r1_applicable(g, i, j, *app.h) && !g.flag(i)));
        assert(app.effect != Effect::SwapNeighbors || r2_applicable(g, i, j, *app.h, *app.f));
        assert(app.effect != Effect::RemoveEdge || r3_applicable(g, i, j, *app.h));
        log.applications.push_back(app);
    }
    return log;
}

inline void commit_round(LabeledGraph& g, const RoundLog& log)
{
    for (const auto& app : log.applications)
        commit(g, app);
}

struct RoundResult {
    LabeledGraph graph;
    RoundLog log;
};

/// One synchronous round on a copy of `g`.
template <RandomSource Source>
RoundResult run_round(const LabeledGraph& g, const ExperimentConfig& cfg, Source& rng,
                      std::size_t step = 0)
{
    if (!is_connected(g))
        throw SetupError("run_round: input graph is not connected");
    RoundResult out{g, plan_round(g, cfg, rng, step)};
    commit_round(out.graph, out.log);
    return out;
}

/// Structural checks every round must satisfy: picks are neighbors, matched
/// pairs are mutual and oriented, and no node takes part in two applications.
inline bool round_log_consistent(const LabeledGraph& before, const RoundLog& log)
{
    const std::size_t n = before.node_count();
    if (log.picks.size() != n || log.matched.size() != log.applications.size() ||
        log.matched.size() != log.chosen_rules.size())
        return false;
    for (NodeId u = 0; u < n; ++u)
        if (log.picks[u] && !before.has_edge(u, *log.picks[u]))
            return false;
    std::vector<int> uses(n, 0);
    for (std::size_t k = 0; k < log.matched.size(); ++k) {
        const auto& p = log.matched[k];
        const auto& a = log.applications[k];
        if (log.picks[p.i] != p.j || log.picks[p.j] != p.i)
            return false;
        if (before.degree(p.i) < before.degree(p.j))
            return false;
        if (a.i != p.i || a.j != p.j || a.kind != log.chosen_rules[k])
            return false;
        ++uses[a.i];
        ++uses[a.j];
        if (a.h) {
            if (log.picks[*a.h] != a.i)
                return false;
            ++uses[*a.h];
        }
        if (a.f) {
            if (log.picks[*a.f] != a.j)
                return false;
            ++uses[*a.f];
        }
    }
    for (int c : uses)
        if (c > 1)
            return false;
    return true;
}

/// Mutable working copy of one simulation.
class Simulation {
public:
    Simulation(LabeledGraph g0, ExperimentConfig cfg) : g_(std::move(g0)), cfg_(cfg), rng_(cfg.seed)
    {
        cfg_.validate();
        if (!is_connected(g_))
            throw SetupError("simulation: initial graph is not connected");
    }

    const LabeledGraph& graph() const { return g_; }
    const ExperimentConfig& config() const { return cfg_; }
    std::size_t step() const { return step_; }

    const RoundLog& advance()
    {
        ++step_;
        last_ = plan_round(g_, cfg_, rng_, step_);
        commit_round(g_, last_);
        return last_;
    }

    void advance(std::size_t rounds)
    {
        for (std::size_t k = 0; k < rounds; ++k)
            advance();
    }

private:
    LabeledGraph g_;
    ExperimentConfig cfg_;
    Rng rng_;
    std::size_t step_ = 0;
    RoundLog last_;
};

struct Trace {
    ExperimentConfig config;
    std::vector<MetricsSample> samples;
    std::optional<std::size_t> absorption_step;
    std::optional<std::size_t> absorbed_m;
    std::size_t steps_run = 0;

    std::optional<double> final_alpha() const
    {
        for (auto it = samples.rbegin(); it != samples.rend(); ++it)
            if (it->alpha)
                return it->alpha;
        return std::nullopt;
    }
};

struct RunHooks {
    std::function<void(const LabeledGraph& after, const RoundLog&)> on_round;
    std::function<void(std::size_t step, const LabeledGraph&)> on_snapshot;
};

/// Runs until max_steps (or rounds_after_absorption past the first regular
/// graph). Metrics rows are taken at step 0, every metrics_every steps, at
/// absorption and at the last step; alpha rides along every alpha_every
/// steps and always at absorption and the last step.
inline Trace run(LabeledGraph g0, const ExperimentConfig& cfg, const RunHooks& hooks = {})
{
    if (cfg.grammar == Grammar::PhiStar && g0.flag_sum() != 0)
        throw SetupError("run: flags must start at zero");
    Simulation sim(std::move(g0), cfg);
    Trace trace;
    trace.config = cfg;
    const bool alpha_on = cfg.alpha_every > 0;

    std::size_t stop_at = cfg.max_steps;
    auto check_absorbed = [&](std::size_t t) {
        if (trace.absorption_step || degree_range(sim.graph()) != 0)
            return false;
        trace.absorption_step = t;
        trace.absorbed_m = sim.graph().degree(0);
        if (cfg.rounds_after_absorption)
            stop_at = std::min(stop_at, t + *cfg.rounds_after_absorption);
        return true;
    };
    auto snapshot = [&](std::size_t t) {
        if (hooks.on_snapshot && cfg.snapshot_every > 0 && t % cfg.snapshot_every == 0)
            hooks.on_snapshot(t, sim.graph());
    };

    bool absorbed_now = check_absorbed(0);
    trace.samples.push_back(sample_metrics(sim.graph(), 0, alpha_on));
    snapshot(0);

    for (std::size_t t = 1; t <= stop_at; ++t) {
        const RoundLog& log = sim.advance();
        if (hooks.on_round)
            hooks.on_round(sim.graph(), log);
        absorbed_now = check_absorbed(t);
        const bool last = t == stop_at;
        if (t % cfg.metrics_every == 0 || absorbed_now || last) {
            const bool with_alpha = alpha_on && (t % cfg.alpha_every == 0 || absorbed_now || last);
            trace.samples.push_back(sample_metrics(sim.graph(), t, with_alpha));
        }
        snapshot(t);
    }
    trace.steps_run = sim.step();
    return trace;
}

/// Integers m with 2e0/n <= m <= 2e0/n + 2 and m*n even.
inline std::vector<std::size_t> feasible_m_set(std::size_t n, std::size_t e0)
{
    if (n == 0 || e0 + 1 < n)
        throw UsageError("feasible_m_set: need e0 >= n - 1");
    const AverageDegree k{2 * e0, n};
    std::vector<std::size_t> out;
    for (std::size_t m = k.ceil(); m <= k.floor() + 2; ++m)
        if ((m * n) % 2 == 0)
            out.push_back(m);
    return out;
}

} // namespace rrg
