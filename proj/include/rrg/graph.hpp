// Labeled undirected simple graph: adjacency as sorted neighbor vectors plus a
// binary flag per node. All randomized consumers index into the ascending
// neighbor order, so a seed fully determines a trajectory.
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rrg {

using NodeId = std::uint32_t;

/// Invalid arguments supplied by a caller (out-of-range ids, infeasible sizes).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A rule or mutation was requested whose precondition does not hold.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Simulation inputs that violate a run precondition (e.g. disconnected graph).
class SetupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unordered pair of distinct nodes, stored with the smaller id first.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    static constexpr Edge make(NodeId a, NodeId b)
    {
        return a < b ? Edge{a, b} : Edge{b, a};
    }

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Exact average degree 2|E|/n, kept as an integer pair.
struct AverageDegree {
    std::uint64_t twice_edges = 0;
    std::uint64_t nodes = 1;

    bool is_integer() const { return twice_edges % nodes == 0; }
    double value() const { return static_cast<double>(twice_edges) / static_cast<double>(nodes); }

    // Smallest integer >= value, largest integer <= value.
    std::uint64_t ceil() const { return (twice_edges + nodes - 1) / nodes; }
    std::uint64_t floor() const { return twice_edges / nodes; }

    friend bool operator==(const AverageDegree& a, const AverageDegree& b)
    {
        return a.twice_edges * b.nodes == b.twice_edges * a.nodes;
    }
    friend bool operator==(const AverageDegree& a, std::uint64_t k)
    {
        return a.twice_edges == k * a.nodes;
    }
};

class LabeledGraph {
public:
    LabeledGraph() = default;

    explicit LabeledGraph(std::size_t n) : adjacency_(n), flags_(n, 0) {}

    static LabeledGraph from_edges(std::size_t n, std::span<const Edge> edges)
    {
        LabeledGraph g(n);
        for (const Edge& e : edges)
            g.add_edge(e.u, e.v);
        return g;
    }

    static LabeledGraph from_edges(std::size_t n, std::initializer_list<Edge> edges)
    {
        return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
    }

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId i) const
    {
        check_node(i);
        return adjacency_[i];
    }

    std::size_t degree(NodeId i) const
    {
        check_node(i);
        return adjacency_[i].size();
    }

    bool has_edge(NodeId i, NodeId j) const
    {
        check_node(i);
        check_node(j);
        const auto& a = adjacency_[i];
        return std::binary_search(a.begin(), a.end(), j);
    }

    void add_edge(NodeId i, NodeId j)
    {
        check_node(i);
        check_node(j);
        if (i == j)
            throw ContractError("add_edge: self-loop at node " + std::to_string(i));
        if (!insert_sorted(adjacency_[i], j))
            throw ContractError("add_edge: duplicate edge (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        insert_sorted(adjacency_[j], i);
        ++edge_count_;
    }

    void remove_edge(NodeId i, NodeId j)
    {
        check_node(i);
        check_node(j);
        if (i == j || !erase_sorted(adjacency_[i], j))
            throw ContractError("remove_edge: missing edge (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        erase_sorted(adjacency_[j], i);
        --edge_count_;
    }

    bool flag(NodeId i) const
    {
        check_node(i);
        return flags_[i] != 0;
    }

    void set_flag(NodeId i, bool value)
    {
        check_node(i);
        flags_[i] = value ? 1 : 0;
    }

    std::span<const std::uint8_t> flags() const { return flags_; }

    std::size_t flag_sum() const
    {
        return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1));
    }

    /// All edges in canonical (u < v) lexicographic order.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (NodeId u = 0; u < adjacency_.size(); ++u)
            for (NodeId v : adjacency_[u])
                if (u < v)
                    out.push_back({u, v});
        return out;
    }

    bool same_structure(const LabeledGraph& other) const { return adjacency_ == other.adjacency_; }

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b)
    {
        return a.adjacency_ == b.adjacency_ && a.flags_ == b.flags_;
    }

private:
    void check_node(NodeId i) const
    {
        if (i >= adjacency_.size())
            throw UsageError("node id " + std::to_string(i) + " out of range for n=" +
                             std::to_string(adjacency_.size()));
    }

    static bool insert_sorted(std::vector<NodeId>& v, NodeId x)
    {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it != v.end() && *it == x)
            return false;
        v.insert(it, x);
        return true;
    }

    static bool erase_sorted(std::vector<NodeId>& v, NodeId x)
    {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x)
            return false;
        v.erase(it);
        return true;
    }

    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::uint8_t> flags_;
    std::size_t edge_count_ = 0;
};

/// BFS from node 0. A single node is connected; an empty graph is not.
inline bool is_connected(const LabeledGraph& g)
{
    const std::size_t n = g.node_count();
    if (n == 0)
        return false;
    std::vector<char> seen(n, 0);
    std::queue<NodeId> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        for (NodeId v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                frontier.push(v);
            }
        }
    }
    return reached == n;
}

inline std::size_t max_degree(const LabeledGraph& g)
{
    std::size_t best = 0;
    for (NodeId i = 0; i < g.node_count(); ++i)
        best = std::max(best, g.degree(i));
    return best;
}

inline std::size_t min_degree(const LabeledGraph& g)
{
    if (g.node_count() == 0)
        return 0;
    std::size_t best = g.degree(0);
    for (NodeId i = 1; i < g.node_count(); ++i)
        best = std::min(best, g.degree(i));
    return best;
}

/// Max degree minus min degree; zero iff the graph is regular.
inline std::size_t degree_range(const LabeledGraph& g)
{
    if (g.node_count() == 0)
        throw UsageError("degree_range: empty graph");
    return max_degree(g) - min_degree(g);
}

inline bool is_regular(const LabeledGraph& g) { return degree_range(g) == 0; }

inline AverageDegree average_degree(const LabeledGraph& g)
{
    if (g.node_count() == 0)
        throw UsageError("average_degree: empty graph");
    return {2 * g.edge_count(), g.node_count()};
}

} // namespace rrg
