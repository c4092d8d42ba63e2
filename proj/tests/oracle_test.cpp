#include "rrg/oracle.hpp"
#include "rrg/topology.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace rrg {
namespace {

std::size_t brute_force_count(std::size_t n, std::size_t m, bool connected_only)
{
    const std::size_t pairs = n * (n - 1) / 2;
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        LabeledGraph g = testing::graph_from_mask(n, mask);
        bool regular = true;
        for (NodeId i = 0; i < n; ++i)
            regular = regular && g.degree(i) == m;
        if (regular && (!connected_only || testing::all_pairs_connected(g)))
            ++count;
    }
    return count;
}

LabeledGraph permuted(const LabeledGraph& g, const std::vector<NodeId>& sigma)
{
    LabeledGraph out(g.node_count());
    for (const Edge& e : g.edges())
        out.add_edge(sigma[e.u], sigma[e.v]);
    return out;
}

TEST(Enumerate, SmallCounts)
{
    EXPECT_EQ(enumerate_labeled_regular(4, 2, true).size(), 3u);
    EXPECT_TRUE(enumerate_labeled_regular(5, 3, false).empty());
    // 60 labeled prisms + 10 labeled K_{3,3}
    EXPECT_EQ(enumerate_labeled_regular(6, 3, true).size(), 70u);
    EXPECT_THROW(enumerate_labeled_regular(11, 2, false), UsageError);
}

TEST(Enumerate, AgreesWithBruteForceFilterUpToSixNodes)
{
    for (std::size_t n = 1; n <= 6; ++n)
        for (std::size_t m = 0; m < n; ++m)
            for (bool connected : {false, true}) {
                auto listed = enumerate_labeled_regular(n, m, connected);
                ASSERT_EQ(listed.size(), brute_force_count(n, m, connected))
                    << "n=" << n << " m=" << m << " connected=" << connected;
                std::set<EdgeSet> unique(listed.begin(), listed.end());
                ASSERT_EQ(unique.size(), listed.size());
                for (const auto& edges : listed) {
                    LabeledGraph g = LabeledGraph::from_edges(n, edges);
                    ASSERT_EQ(degree_range(g), 0u);
                    ASSERT_EQ(g.edge_count(), n * m / 2);
                }
            }
}

TEST(CanonicalForm, InvariantUnderRelabeling)
{
    LabeledGraph c4a = cycle_graph(4);
    LabeledGraph c4b = LabeledGraph::from_edges(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
    EXPECT_EQ(canonical_form(c4a), canonical_form(c4b));

    std::vector<NodeId> sigma{0, 1, 2, 3};
    const auto k4 = canonical_form(complete_graph(4));
    do {
        EXPECT_EQ(canonical_form(permuted(complete_graph(4), sigma)), k4);
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    EXPECT_NE(canonical_form(prism_graph(6)), canonical_form(complete_bipartite_33()));
    EXPECT_THROW(canonical_form(cycle_graph(9)), UsageError);
}

TEST(CanonicalForm, RandomPermutationsOfRandomGraphs)
{
    std::mt19937_64 gen(4);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 2 + gen() % 7;
        LabeledGraph g = testing::random_gnp(n, 0.5, gen);
        std::vector<NodeId> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), gen);
        ASSERT_EQ(canonical_form(g), canonical_form(permuted(g, sigma)));
    }
}

TEST(CanonicalForm, SixNodeCubicGraphsFallIntoTwoClasses)
{
    std::map<CanonicalForm, int> classes;
    for (const auto& edges : enumerate_labeled_regular(6, 3, true))
        ++classes[canonical_form(LabeledGraph::from_edges(6, edges))];
    ASSERT_EQ(classes.size(), 2u);
    EXPECT_EQ(classes[canonical_form(prism_graph(6))], 60);
    EXPECT_EQ(classes[canonical_form(complete_bipartite_33())], 10);
}

TEST(EmpiricalDistribution, Basics)
{
    std::vector<LabeledGraph> one{prism_graph(6)};
    Histogram h = empirical_distribution(one, 0, 1, HistogramKey::Labeled);
    EXPECT_EQ(h.total, 1u);
    ASSERT_EQ(h.buckets.size(), 1u);
    EXPECT_EQ(h.buckets.begin()->second, 1u);

    std::vector<LabeledGraph> mixed{prism_graph(6), complete_bipartite_33(), prism_graph(6)};
    Histogram c = empirical_distribution(mixed, 0, 1, HistogramKey::Canonical);
    EXPECT_EQ(c.buckets.size(), 2u);
    Histogram strided = empirical_distribution(mixed, 0, 2, HistogramKey::Labeled);
    EXPECT_EQ(strided.total, 2u);
    EXPECT_EQ(strided.buckets.size(), 1u);

    EXPECT_THROW(empirical_distribution(one, 1, 1, HistogramKey::Labeled), UsageError);
    std::vector<LabeledGraph> irregular{star_graph(4)};
    EXPECT_THROW(empirical_distribution(irregular, 0, 1, HistogramKey::Labeled), UsageError);
    EXPECT_THROW(empirical_distribution(one, 0, 0, HistogramKey::Labeled), UsageError);
}

TEST(ChiSquare, Identities)
{
    auto expected = enumerate_labeled_regular(4, 2, true);
    Histogram uniform;
    for (const auto& e : expected)
        uniform.buckets[e] = 20;
    uniform.total = 60;
    auto u = chi_square_uniform(uniform, expected);
    EXPECT_DOUBLE_EQ(u.statistic, 0.0);
    EXPECT_EQ(u.dof, 2u);

    Histogram lumped;
    lumped.buckets[expected[0]] = 90;
    lumped.total = 90;
    EXPECT_NEAR(chi_square_uniform(lumped, expected).statistic, 90.0 * 2.0, 1e-9);

    Histogram sparse;
    sparse.buckets[expected[0]] = 5;
    sparse.total = 5;
    EXPECT_THROW(chi_square_uniform(sparse, expected), UsageError);

    Histogram stray = uniform;
    stray.buckets[{Edge{0, 1}}] = 1;
    stray.total += 1;
    EXPECT_THROW(chi_square_uniform(stray, expected), UsageError);

    EXPECT_NEAR(chi_square_quantile(0.999, 69), 111.055, 1e-3);
}

TEST(Support, PhiRRVisitsEveryConnectedCubicGraphOnSixNodes)
{
    ExperimentConfig cfg;
    cfg.grammar = Grammar::PhiRR;
    cfg.epsilon = 0.2;
    cfg.seed = 12;
    Simulation sim(prism_graph(6), cfg);
    Histogram h = sample_chain(sim, 100, 5, 20000, HistogramKey::Labeled);
    const auto all = enumerate_labeled_regular(6, 3, true);
    EXPECT_EQ(h.buckets.size(), all.size());
    for (const auto& e : all)
        EXPECT_TRUE(h.buckets.count(e));
}

TEST(Support, PhiStarMixesStructureAndFlagsAfterAbsorption)
{
    // one raised flag on a cubic graph: the class never changes, and both the
    // structure and the flag position are spread uniformly. Moves are rare per
    // round, so samples are thinned well past the correlation time.
    LabeledGraph g = prism_graph(6);
    g.set_flag(0, true);
    ExperimentConfig cfg;
    cfg.grammar = Grammar::PhiStar;
    cfg.epsilon = 0.2;
    cfg.beta = 0.1;
    cfg.seed = 77;
    Simulation sim(g, cfg);
    sim.advance(1000);

    const auto all = enumerate_labeled_regular(6, 3, true);
    Histogram structures;
    std::vector<std::size_t> flag_at(6, 0);
    const std::size_t samples = 20000;
    for (std::size_t s = 0; s < samples; ++s) {
        sim.advance(300);
        ASSERT_EQ(degree_range(sim.graph()), 0u);
        ASSERT_EQ(sim.graph().flag_sum(), 1u);
        structures.add(sim.graph(), HistogramKey::Labeled);
        for (NodeId i = 0; i < 6; ++i)
            flag_at[i] += sim.graph().flag(i);
    }
    auto chi = chi_square_uniform(structures, all);
    EXPECT_LT(chi.statistic, chi_square_quantile(0.999, chi.dof));

    double flag_stat = 0.0;
    const double mean = samples / 6.0;
    for (auto c : flag_at)
        flag_stat += (c - mean) * (c - mean) / mean;
    EXPECT_LT(flag_stat, chi_square_quantile(0.999, 5));
}

LabeledGraph one_r2_neighbor(const LabeledGraph& g)
{
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (NodeId j : g.neighbors(i))
            for (NodeId h : g.neighbors(i))
                for (NodeId f : g.neighbors(j))
                    if (r2_applicable(g, i, j, h, f))
                        return apply_r2(g, i, j, h, f);
    throw std::logic_error("no r2 move");
}

TEST(Reachability, WitnessesSingleMoves)
{
    LabeledGraph prism = prism_graph(6);
    EXPECT_TRUE(one_step_reachable(prism, prism));

    LabeledGraph moved = one_r2_neighbor(prism);
    auto witness = one_step_witness(prism, moved);
    ASSERT_TRUE(witness.has_value());
    ASSERT_EQ(witness->size(), 1u);
    EXPECT_EQ((*witness)[0].kind, RuleKind::R2);
    EXPECT_TRUE(one_step_reachable(moved, prism));

    LabeledGraph flagged = prism;
    flagged.set_flag(0, true);
    LabeledGraph swapped = prism;
    swapped.set_flag(1, true);
    EXPECT_TRUE(one_step_reachable(flagged, swapped));

    // a flag cannot travel two hops in one round
    LabeledGraph two_hops = prism;
    two_hops.set_flag(4, true);
    ASSERT_FALSE(prism.has_edge(0, 4));
    EXPECT_FALSE(one_step_reachable(flagged, two_hops));

    EXPECT_THROW(one_step_reachable(prism, cycle_graph(6)), UsageError);
}

TEST(Reachability, ConcurrentDisjointMovesCombine)
{
    LabeledGraph g = prism_graph(8);
    g.set_flag(0, true);
    g.set_flag(6, true);
    LabeledGraph target = apply_r4(apply_r4(g, 0, 1), 6, 7);
    auto witness = one_step_witness(g, target);
    ASSERT_TRUE(witness.has_value());
    EXPECT_EQ(witness->size(), 2u);
}

TEST(TransitionSymmetry, SelfLoopAndSingleMoves)
{
    ExperimentConfig cfg;
    cfg.grammar = Grammar::PhiStar;
    cfg.epsilon = 0.2;
    cfg.beta = 0.1;
    cfg.seed = 5;

    LabeledGraph prism = prism_graph(6);
    auto self = estimate_transition_symmetry(prism, prism, 20000, cfg);
    EXPECT_NE(self.p_forward, self.p_backward); // separate streams
    EXPECT_TRUE(self.symmetric_within(3.0));
    EXPECT_GT(self.p_forward, 0.0);
    EXPECT_EQ(estimate_transition(prism, prism, 500, cfg, 9), estimate_transition(prism, prism, 500, cfg, 9));

    LabeledGraph moved = one_r2_neighbor(prism);
    auto r2 = estimate_transition_symmetry(prism, moved, 200000, cfg);
    EXPECT_GT(r2.p_forward, 0.0);
    EXPECT_TRUE(r2.symmetric_within(3.0)) << r2.p_forward << " vs " << r2.p_backward;

    LabeledGraph flagged = prism;
    flagged.set_flag(0, true);
    LabeledGraph swapped = prism;
    swapped.set_flag(1, true);
    auto r4 = estimate_transition_symmetry(flagged, swapped, 200000, cfg);
    EXPECT_GT(r4.p_forward, 0.0);
    EXPECT_TRUE(r4.symmetric_within(3.0)) << r4.p_forward << " vs " << r4.p_backward;

    LabeledGraph two_hops = prism;
    two_hops.set_flag(4, true);
    EXPECT_THROW(estimate_transition_symmetry(flagged, two_hops, 10, cfg), UsageError);
}

} // namespace
} // namespace rrg
