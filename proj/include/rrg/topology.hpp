// Initial-graph generators: seeded random connected graphs and named fixtures.
#pragma once

#include "rrg/graph.hpp"
#include "rrg/random.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace rrg {

enum class GraphKind : std::uint8_t {
    RandomConnected,
    Path,
    Cycle,
    Star,
    Prism,
    CompleteBipartite33,
    Barbell
};

struct GenSpec {
    GraphKind kind = GraphKind::RandomConnected;
    std::size_t n = 0;
    std::size_t e = 0; ///< RandomConnected only
    std::uint64_t seed = 0;

    friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

inline std::string_view to_string(GraphKind k)
{
    switch (k) {
    case GraphKind::RandomConnected:
        return "random";
    case GraphKind::Path:
        return "path";
    case GraphKind::Cycle:
        return "cycle";
    case GraphKind::Star:
        return "star";
    case GraphKind::Prism:
        return "prism";
    case GraphKind::CompleteBipartite33:
        return "k33";
    case GraphKind::Barbell:
        return "barbell";
    }
    return "?";
}

inline std::optional<GraphKind> parse_graph_kind(std::string_view s)
{
    for (auto k : {GraphKind::RandomConnected, GraphKind::Path, GraphKind::Cycle, GraphKind::Star,
                   GraphKind::Prism, GraphKind::CompleteBipartite33, GraphKind::Barbell})
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

/// Connected simple graph with exactly `e` edges and all flags zero: a
/// uniform spanning tree of K_n (Aldous-Broder walk) plus e-(n-1) distinct
/// uniform non-tree edges.
inline LabeledGraph random_connected(std::size_t n, std::size_t e, std::uint64_t seed)
{
    if (n == 0)
        throw UsageError("random_connected: n must be positive");
    const std::size_t max_edges = n * (n - 1) / 2;
    if (e + 1 < n || e > max_edges)
        throw UsageError("random_connected: e=" + std::to_string(e) + " outside [n-1, n(n-1)/2] = [" +
                         std::to_string(n - 1) + ", " + std::to_string(max_edges) + "]");
    Rng rng(seed);
    LabeledGraph g(n);

    std::vector<char> visited(n, 0);
    NodeId current = static_cast<NodeId>(rng.uniform_index(n));
    visited[current] = 1;
    std::size_t remaining = n - 1;
    while (remaining > 0) {
        // uniform neighbor of `current` in K_n
        auto next = static_cast<NodeId>(rng.uniform_index(n - 1));
        if (next >= current)
            ++next;
        if (!visited[next]) {
            visited[next] = 1;
            g.add_edge(current, next);
            --remaining;
        }
        current = next;
    }

    std::size_t extra = e - (n - 1);
    const std::size_t candidates = max_edges - (n - 1);
    if (extra * 2 <= candidates) {
        while (extra > 0) {
            auto u = static_cast<NodeId>(rng.uniform_index(n));
            auto v = static_cast<NodeId>(rng.uniform_index(n));
            if (u == v || g.has_edge(u, v))
                continue;
            g.add_edge(u, v);
            --extra;
        }
    } else {
        std::vector<Edge> pool;
        pool.reserve(candidates);
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (!g.has_edge(u, v))
                    pool.push_back({u, v});
        for (std::size_t k = 0; k < extra; ++k) {
            std::size_t pick = k + rng.uniform_index(pool.size() - k);
            std::swap(pool[k], pool[pick]);
            g.add_edge(pool[k].u, pool[k].v);
        }
    }
    return g;
}

inline LabeledGraph path_graph(std::size_t n)
{
    LabeledGraph g(n);
    for (NodeId i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

inline LabeledGraph cycle_graph(std::size_t n)
{
    LabeledGraph g = path_graph(n);
    g.add_edge(0, static_cast<NodeId>(n - 1));
    return g;
}

inline LabeledGraph star_graph(std::size_t n)
{
    LabeledGraph g(n);
    for (NodeId i = 1; i < n; ++i)
        g.add_edge(0, i);
    return g;
}

inline LabeledGraph complete_graph(std::size_t n)
{
    LabeledGraph g(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

/// Circular ladder C_{n/2} x K2: outer cycle 0..n/2-1, inner cycle n/2..n-1.
inline LabeledGraph prism_graph(std::size_t n)
{
    const std::size_t half = n / 2;
    LabeledGraph g(n);
    for (NodeId k = 0; k < half; ++k) {
        const auto next = static_cast<NodeId>((k + 1) % half);
        g.add_edge(k, next);
        g.add_edge(static_cast<NodeId>(half + k), static_cast<NodeId>(half + next));
        g.add_edge(k, static_cast<NodeId>(half + k));
    }
    return g;
}

inline LabeledGraph complete_bipartite_33()
{
    LabeledGraph g(6);
    for (NodeId a = 0; a < 3; ++a)
        for (NodeId b = 3; b < 6; ++b)
            g.add_edge(a, b);
    return g;
}

/// Smallest cubic graph with a bridge: two copies of K4-minus-an-edge, each
/// with a hub joined to the two degree-2 nodes, hubs joined by the bridge 4-9.
inline LabeledGraph cubic_barbell()
{
    LabeledGraph g(10);
    for (NodeId base : {0u, 5u}) {
        const NodeId a = base, b = base + 1, c = base + 2, d = base + 3, hub = base + 4;
        g.add_edge(a, b);
        g.add_edge(a, c);
        g.add_edge(a, d);
        g.add_edge(b, c);
        g.add_edge(b, d);
        g.add_edge(c, hub);
        g.add_edge(d, hub);
    }
    g.add_edge(4, 9);
    return g;
}

inline LabeledGraph fixture(GraphKind kind, std::size_t n)
{
    auto need = [&](bool ok, const char* what) {
        if (!ok)
            throw UsageError(std::string(to_string(kind)) + ": " + what + " (got n=" +
                             std::to_string(n) + ")");
    };
    switch (kind) {
    case GraphKind::Path:
        need(n >= 1, "needs n >= 1");
        return path_graph(n);
    case GraphKind::Cycle:
        need(n >= 3, "needs n >= 3");
        return cycle_graph(n);
    case GraphKind::Star:
        need(n >= 2, "needs n >= 2");
        return star_graph(n);
    case GraphKind::Prism:
        need(n >= 6 && n % 2 == 0, "needs even n >= 6");
        return prism_graph(n);
    case GraphKind::CompleteBipartite33:
        need(n == 6, "is defined for n = 6 only");
        return complete_bipartite_33();
    case GraphKind::Barbell:
        need(n == 10, "is defined for n = 10 only");
        return cubic_barbell();
    case GraphKind::RandomConnected:
        break;
    }
    throw UsageError("fixture: random graphs need an edge count and seed; use generate()");
}

/// Default node count for fixtures with a single valid size.
inline std::size_t default_fixture_size(GraphKind kind)
{
    switch (kind) {
    case GraphKind::Barbell:
        return 10;
    case GraphKind::Prism:
    case GraphKind::CompleteBipartite33:
        return 6;
    default:
        return 0;
    }
}

inline LabeledGraph generate(const GenSpec& spec)
{
    if (spec.kind == GraphKind::RandomConnected)
        return random_connected(spec.n, spec.e, spec.seed);
    return fixture(spec.kind, spec.n);
}

} // namespace rrg
