// Plain-text edge-list format used for snapshots and fixtures:
//
//   n m
//   i j        (m lines, i < j)
//   w          (optional sentinel)
//   b0 b1 ...  (n flags, each 0 or 1)
//
// plus a Graphviz DOT export for visual inspection.
#pragma once

#include "rrg/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace rrg {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The flag block is written whenever `with_flags` is set or any flag is 1.
inline void write_edge_list(std::ostream& os, const LabeledGraph& g, bool with_flags = false)
{
    os << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges())
        os << e.u << ' ' << e.v << '\n';
    if (with_flags || g.flag_sum() > 0) {
        os << "w\n";
        auto flags = g.flags();
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (i)
                os << ' ';
            os << static_cast<int>(flags[i]);
        }
        os << '\n';
    }
}

inline std::string to_edge_list(const LabeledGraph& g, bool with_flags = false)
{
    std::ostringstream os;
    write_edge_list(os, g, with_flags);
    return os.str();
}

inline LabeledGraph read_edge_list(std::istream& is)
{
    long long n = -1, m = -1;
    if (!(is >> n >> m) || n < 0 || m < 0)
        throw FormatError("edge list: bad header, expected \"n m\"");
    LabeledGraph g(static_cast<std::size_t>(n));
    for (long long k = 0; k < m; ++k) {
        long long i = -1, j = -1;
        if (!(is >> i >> j))
            throw FormatError("edge list: expected " + std::to_string(m) + " edges, got " +
                              std::to_string(k));
        if (i < 0 || j < 0 || i >= n || j >= n || i >= j)
            throw FormatError("edge list: bad edge line " + std::to_string(i) + " " +
                              std::to_string(j));
        try {
            g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
        } catch (const ContractError& e) {
            throw FormatError(std::string("edge list: ") + e.what());
        }
    }
    std::string sentinel;
    if (!(is >> sentinel))
        return g;
    if (sentinel != "w")
        throw FormatError("edge list: unexpected token '" + sentinel + "' after edges");
    for (NodeId i = 0; i < static_cast<NodeId>(n); ++i) {
        int b = -1;
        if (!(is >> b) || (b != 0 && b != 1))
            throw FormatError("edge list: flag vector must hold n entries of 0/1");
        g.set_flag(i, b == 1);
    }
    return g;
}

inline LabeledGraph from_edge_list(const std::string& text)
{
    std::istringstream is(text);
    return read_edge_list(is);
}

inline void write_dot(std::ostream& os, const LabeledGraph& g)
{
    os << "graph G {\n";
    for (NodeId i = 0; i < g.node_count(); ++i)
        os << "  " << i << " [label=\"" << i << "\\nd=" << g.degree(i) << " w=" << g.flag(i)
           << "\"];\n";
    for (const Edge& e : g.edges())
        os << "  " << e.u << " -- " << e.v << ";\n";
    os << "}\n";
}

} // namespace rrg
