// Brute-force machinery for checking the Markov-chain behaviour of the engine
// on small instances: enumeration of labeled regular graphs, canonical forms,
// empirical histograms, a uniformity chi-square test, one-step reachability
// and Monte Carlo transition-probability estimates.
#pragma once

#include "rrg/engine.hpp"
#include "rrg/grammar.hpp"
#include "rrg/graph.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace rrg {

using EdgeSet = std::vector<Edge>;

/// All labeled simple m-regular graphs on n nodes, each once, as sorted edge
/// lists. Empty when m*n is odd or m >= n.
inline std::vector<EdgeSet> enumerate_labeled_regular(std::size_t n, std::size_t m,
                                                      bool connected_only)
{
    if (n > 10)
        throw UsageError("enumerate_labeled_regular: n must be at most 10");
    std::vector<EdgeSet> out;
    if (n == 0 || (m * n) % 2 != 0 || m >= n)
        return out;

    std::vector<std::size_t> degree(n, 0);
    EdgeSet current;

    // Pairs are visited in lexicographic order (u, v); row u is complete once
    // v reaches n-1, at which point degree[u] must equal m.
    auto recurse = [&](auto&& self, NodeId u, NodeId v) -> void {
        if (u + 1 >= n) {
            if (degree[n - 1] != m)
                return;
            if (connected_only && !is_connected(LabeledGraph::from_edges(n, current)))
                return;
            out.push_back(current);
            return;
        }
        const NodeId nu = (v + 1 < n) ? u : u + 1;
        const NodeId nv = (v + 1 < n) ? v + 1 : u + 2;
        const bool row_ends = v + 1 == n;

        if (degree[u] < m && degree[v] < m) {
            ++degree[u];
            ++degree[v];
            current.push_back({u, v});
            if (!row_ends || degree[u] == m)
                self(self, nu, nv);
            current.pop_back();
            --degree[u];
            --degree[v];
        }
        // pairs (u, v+1..n-1) remain for row u
        if (degree[u] + (n - 1 - v) >= m && (!row_ends || degree[u] == m))
            self(self, nu, nv);
    };
    if (n == 1)
        return m == 0 ? std::vector<EdgeSet>{EdgeSet{}} : out;
    recurse(recurse, 0, 1);
    return out;
}

struct CanonicalForm {
    std::size_t n = 0;
    EdgeSet edges;

    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Lexicographically smallest relabeled edge list over all n! permutations.
inline CanonicalForm canonical_form(const LabeledGraph& g)
{
    const std::size_t n = g.node_count();
    if (n > 8)
        throw UsageError("canonical_form: refused for n > 8");
    const EdgeSet edges = g.edges();
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    CanonicalForm best{n, edges};
    EdgeSet mapped(edges.size());
    do {
        for (std::size_t k = 0; k < edges.size(); ++k)
            mapped[k] = Edge::make(perm[edges[k].u], perm[edges[k].v]);
        std::sort(mapped.begin(), mapped.end());
        if (mapped < best.edges)
            best.edges = mapped;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

enum class HistogramKey : std::uint8_t { Labeled, Canonical };

struct Histogram {
    std::map<EdgeSet, std::size_t> buckets;
    std::size_t total = 0;

    void add(const LabeledGraph& g, HistogramKey key)
    {
        ++buckets[key == HistogramKey::Labeled ? g.edges() : canonical_form(g).edges];
        ++total;
    }
};

/// Histogram of snapshots at indices burn_in, burn_in+stride, ... Every
/// sampled snapshot must be regular.
inline Histogram empirical_distribution(std::span<const LabeledGraph> snapshots, std::size_t burn_in,
                                        std::size_t stride, HistogramKey key)
{
    if (stride == 0)
        throw UsageError("empirical_distribution: stride must be at least 1");
    Histogram hist;
    for (std::size_t k = burn_in; k < snapshots.size(); k += stride) {
        if (!is_regular(snapshots[k]))
            throw UsageError("empirical_distribution: snapshot " + std::to_string(k) +
                             " is not regular (not post-absorption)");
        hist.add(snapshots[k], key);
    }
    if (hist.total == 0)
        throw UsageError("empirical_distribution: no post-absorption samples");
    return hist;
}

/// Streams `samples` states from a running simulation, `stride` rounds apart,
/// after `burn_in` rounds.
inline Histogram sample_chain(Simulation& sim, std::size_t burn_in, std::size_t stride,
                              std::size_t samples, HistogramKey key)
{
    if (stride == 0)
        throw UsageError("sample_chain: stride must be at least 1");
    sim.advance(burn_in);
    Histogram hist;
    for (std::size_t s = 0; s < samples; ++s) {
        sim.advance(stride);
        hist.add(sim.graph(), key);
    }
    return hist;
}

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
};

/// Pearson statistic of `hist` against the uniform law over `expected`.
inline ChiSquare chi_square_uniform(const Histogram& hist, std::span<const EdgeSet> expected)
{
    const std::size_t buckets = expected.size();
    if (buckets < 2)
        throw UsageError("chi_square_uniform: need at least 2 buckets");
    if (hist.total < 10 * buckets)
        throw UsageError("chi_square_uniform: need at least 10 samples per bucket");
    const std::set<EdgeSet> known(expected.begin(), expected.end());
    if (known.size() != buckets)
        throw UsageError("chi_square_uniform: duplicate expected bucket");
    for (const auto& [key, count] : hist.buckets)
        if (!known.count(key))
            throw UsageError("chi_square_uniform: observed state outside the expected support");

    const double mean = static_cast<double>(hist.total) / static_cast<double>(buckets);
    double stat = 0.0;
    for (const auto& key : known) {
        auto it = hist.buckets.find(key);
        const double observed = it == hist.buckets.end() ? 0.0 : static_cast<double>(it->second);
        stat += (observed - mean) * (observed - mean) / mean;
    }
    return {stat, buckets - 1};
}

inline double chi_square_quantile(double p, std::size_t dof)
{
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::quantile(dist, p);
}

/// A set of node-disjoint R2/R4 applications turning `from` into `to` in one
/// round, if one exists. Both graphs must be regular of the same degree.
inline std::optional<std::vector<RuleApplication>> one_step_witness(const LabeledGraph& from,
                                                                    const LabeledGraph& to)
{
    const std::size_t n = from.node_count();
    if (to.node_count() != n || !is_regular(from) || !is_regular(to) ||
        (n > 0 && from.degree(0) != to.degree(0)))
        throw UsageError("one_step_witness: graphs must be regular with equal n and degree");
    if (from == to)
        return std::vector<RuleApplication>{};

    std::vector<RuleApplication> candidates;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j : from.neighbors(i)) {
            if (i < j && from.flag(i) != from.flag(j) && to.flag(i) == from.flag(j) &&
                to.flag(j) == from.flag(i))
                candidates.push_back({RuleKind::R4, Effect::SwapFlags, i, j, std::nullopt, std::nullopt});
            for (NodeId h : from.neighbors(i)) {
                if (h == j || to.has_edge(i, h) || !to.has_edge(j, h))
                    continue;
                for (NodeId f : from.neighbors(j)) {
                    // (i,j,h,f) and (j,i,f,h) are the same move
                    if (i > j || !r2_applicable(from, i, j, h, f))
                        continue;
                    if (to.has_edge(j, f) || !to.has_edge(i, f))
                        continue;
                    candidates.push_back({RuleKind::R2, Effect::SwapNeighbors, i, j, h, f});
                }
            }
        }
    }

    std::vector<char> used(n, 0);
    std::vector<RuleApplication> chosen;
    auto participants = [](const RuleApplication& a) {
        std::vector<NodeId> p{a.i, a.j};
        if (a.h)
            p.push_back(*a.h);
        if (a.f)
            p.push_back(*a.f);
        return p;
    };
    auto search = [&](auto&& self, std::size_t next) -> bool {
        if (!chosen.empty()) {
            LabeledGraph g = from;
            for (const auto& a : chosen)
                commit(g, a);
            if (g == to)
                return true;
        }
        for (std::size_t c = next; c < candidates.size(); ++c) {
            auto nodes = participants(candidates[c]);
            if (std::any_of(nodes.begin(), nodes.end(), [&](NodeId v) { return used[v]; }))
                continue;
            for (NodeId v : nodes)
                used[v] = 1;
            chosen.push_back(candidates[c]);
            if (self(self, c + 1))
                return true;
            chosen.pop_back();
            for (NodeId v : nodes)
                used[v] = 0;
        }
        return false;
    };
    if (search(search, 0))
        return chosen;
    return std::nullopt;
}

inline bool one_step_reachable(const LabeledGraph& from, const LabeledGraph& to)
{
    return one_step_witness(from, to).has_value();
}

struct TransitionEstimate {
    double p_forward = 0.0;
    double p_backward = 0.0;
    double stderr_forward = 0.0;
    double stderr_backward = 0.0;
    std::size_t trials = 0;

    /// |p_f - p_b| <= k (se_f + se_b)
    bool symmetric_within(double k) const
    {
        return std::abs(p_forward - p_backward) <= k * (stderr_forward + stderr_backward);
    }
};

/// Fraction of single rounds started at `from` that end exactly at `to`
/// (edges and flags). Trial t draws from stream derive_seed(seed, t).
inline double estimate_transition(const LabeledGraph& from, const LabeledGraph& to,
                                  std::size_t trials, const ExperimentConfig& cfg,
                                  std::uint64_t seed)
{
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        LabeledGraph g = from;
        commit_round(g, plan_round(from, cfg, rng));
        hits += g == to;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

inline TransitionEstimate estimate_transition_symmetry(const LabeledGraph& g, const LabeledGraph& g2,
                                                       std::size_t trials,
                                                       const ExperimentConfig& cfg)
{
    cfg.validate();
    if (trials == 0)
        throw UsageError("estimate_transition_symmetry: trials must be positive");
    if (!one_step_reachable(g, g2))
        throw UsageError("estimate_transition_symmetry: pair is not one-step reachable");
    TransitionEstimate est;
    est.trials = trials;
    // independent streams per direction, so the two standard errors add
    est.p_forward = estimate_transition(g, g2, trials, cfg, derive_seed(cfg.seed, 0));
    est.p_backward = estimate_transition(g2, g, trials, cfg, derive_seed(cfg.seed, 1));
    auto se = [&](double p) { return std::sqrt(p * (1.0 - p) / static_cast<double>(trials)); };
    est.stderr_forward = se(est.p_forward);
    est.stderr_backward = se(est.p_backward);
    return est;
}

} // namespace rrg
