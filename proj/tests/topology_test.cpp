#include "rrg/edge_list.hpp"
#include "rrg/metrics.hpp"
#include "rrg/topology.hpp"

#include <gtest/gtest.h>

namespace rrg {
namespace {

TEST(RandomConnected, HundredNodeInstance)
{
    LabeledGraph g = random_connected(100, 135, 7);
    EXPECT_TRUE(is_connected(g));
    EXPECT_EQ(g.edge_count(), 135u);
    EXPECT_DOUBLE_EQ(average_degree(g).value(), 2.7);
    EXPECT_EQ(g.flag_sum(), 0u);
}

TEST(RandomConnected, TreeAndCompleteExtremes)
{
    LabeledGraph tree = random_connected(40, 39, 1);
    EXPECT_TRUE(is_connected(tree));
    EXPECT_EQ(tree.edge_count(), 39u);

    LabeledGraph full = random_connected(9, 36, 1);
    EXPECT_EQ(full, complete_graph(9));
}

TEST(RandomConnected, InfeasibleEdgeCounts)
{
    EXPECT_THROW(random_connected(10, 8, 0), UsageError);
    EXPECT_THROW(random_connected(10, 46, 0), UsageError);
    EXPECT_THROW(random_connected(0, 0, 0), UsageError);
}

TEST(RandomConnected, SeedDeterministicAndAlwaysConnectedSimple)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 2 + seed % 30;
        const std::size_t max_e = n * (n - 1) / 2;
        const std::size_t e = n - 1 + (seed * 7) % (max_e - (n - 1) + 1);
        LabeledGraph a = random_connected(n, e, seed);
        ASSERT_TRUE(is_connected(a));
        ASSERT_EQ(a.edge_count(), e);
        ASSERT_EQ(to_edge_list(a), to_edge_list(random_connected(n, e, seed)));
    }
    EXPECT_NE(random_connected(50, 80, 1), random_connected(50, 80, 2));
}

TEST(RandomConnected, SpanningTreesSpreadOverAllLabeledTrees)
{
    // Cayley: 4^2 = 16 labeled trees on 4 nodes
    std::map<std::vector<Edge>, int> seen;
    for (std::uint64_t seed = 0; seed < 16000; ++seed)
        ++seen[random_connected(4, 3, seed).edges()];
    EXPECT_EQ(seen.size(), 16u);
    for (const auto& [edges, count] : seen) {
        EXPECT_GT(count, 800);
        EXPECT_LT(count, 1200);
    }
}

TEST(Fixtures, ShapesAndSpectra)
{
    LabeledGraph prism = fixture(GraphKind::Prism, 6);
    EXPECT_EQ(prism.edge_count(), 9u);
    EXPECT_EQ(degree_range(prism), 0u);
    EXPECT_NEAR(algebraic_connectivity(prism), 2.0, 1e-9);

    LabeledGraph k33 = fixture(GraphKind::CompleteBipartite33, 6);
    EXPECT_EQ(degree_range(k33), 0u);
    EXPECT_EQ(k33.degree(0), 3u);
    EXPECT_NEAR(algebraic_connectivity(k33), 3.0, 1e-9);

    LabeledGraph c5 = fixture(GraphKind::Cycle, 5);
    EXPECT_EQ(degree_range(c5), 0u);
    EXPECT_EQ(c5.degree(0), 2u);

    LabeledGraph barbell = fixture(GraphKind::Barbell, 10);
    EXPECT_EQ(degree_range(barbell), 0u);
    EXPECT_EQ(barbell.degree(0), 3u);
    EXPECT_TRUE(is_connected(barbell));
    LabeledGraph cut = barbell;
    cut.remove_edge(4, 9);
    EXPECT_FALSE(is_connected(cut));
    // the bridge is the bottleneck: far below a well-connected cubic graph of the same size
    EXPECT_LT(algebraic_connectivity(barbell), 0.25);
    EXPECT_GT(algebraic_connectivity(prism_graph(10)), 1.0);

    EXPECT_EQ(fixture(GraphKind::Star, 5), star_graph(5));
    EXPECT_EQ(fixture(GraphKind::Path, 4).edge_count(), 3u);
    for (auto kind : {GraphKind::Path, GraphKind::Cycle, GraphKind::Star, GraphKind::Prism,
                      GraphKind::CompleteBipartite33, GraphKind::Barbell}) {
        const std::size_t n = default_fixture_size(kind) ? default_fixture_size(kind) : 8;
        LabeledGraph g = fixture(kind, n);
        EXPECT_TRUE(is_connected(g)) << to_string(kind);
        EXPECT_EQ(g.flag_sum(), 0u);
        EXPECT_EQ(parse_graph_kind(to_string(kind)), kind);
    }
}

TEST(Fixtures, InvalidSizes)
{
    EXPECT_THROW(fixture(GraphKind::Prism, 7), UsageError);
    EXPECT_THROW(fixture(GraphKind::Cycle, 2), UsageError);
    EXPECT_THROW(fixture(GraphKind::CompleteBipartite33, 8), UsageError);
    EXPECT_THROW(fixture(GraphKind::Barbell, 12), UsageError);
    EXPECT_THROW(fixture(GraphKind::RandomConnected, 12), UsageError);
}

TEST(Generate, DispatchesOnKind)
{
    EXPECT_EQ(generate({GraphKind::RandomConnected, 20, 30, 4}), random_connected(20, 30, 4));
    EXPECT_EQ(generate({GraphKind::Prism, 8, 0, 0}), prism_graph(8));
}

} // namespace
} // namespace rrg
