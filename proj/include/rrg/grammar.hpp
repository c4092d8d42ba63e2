// The four local rewrite rules and their applicability predicates.
//
// Role names follow the matched-pair protocol: `i` is the higher-degree node
// of a matched pair, `j` its partner, `h` a follower of `i` and `f` a
// follower of `j`.
//
//   R1  rewire  (i,h) -> (j,h)            guard: i~j, i~h, j!~h, d_i > d_j
//       add     keep (i,h), add (j,h)     guard: as rewire plus w_i = 0; sets w_i = 1
//   R2  swap    (i,h),(j,f) -> (i,f),(j,h) guard: i~j, i~h, j~f, j!~h, i!~f
//   R3  remove  drop (i,h) of triangle    guard: triangle, d_i > d_j, w_i = 1; sets w_i = 0
//   R4  swap w_i and w_j                  guard: i~j
//
// Each rule has a pure form returning a new graph and an in-place `commit`
// used by the engine once a whole round has been planned.
#pragma once

#include "rrg/graph.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace rrg {

enum class RuleKind : std::uint8_t { R1, R2, R3, R4 };

enum class Grammar : std::uint8_t {
    PhiR,   ///< degree balancing only (R1 rewire)
    PhiRR,  ///< degree balancing + link randomization (R1 rewire, R2)
    PhiStar ///< full scheme (R1 rewire/add, R2, R3, R4)
};

enum class Effect : std::uint8_t { Rewire, AddEdge, SwapNeighbors, RemoveEdge, SwapFlags, NoOp };

inline std::span<const RuleKind> rule_set(Grammar grammar)
{
    static constexpr std::array<RuleKind, 1> phi_r{RuleKind::R1};
    static constexpr std::array<RuleKind, 2> phi_rr{RuleKind::R1, RuleKind::R2};
    static constexpr std::array<RuleKind, 4> phi_star{RuleKind::R1, RuleKind::R2, RuleKind::R3,
                                                      RuleKind::R4};
    switch (grammar) {
    case Grammar::PhiR:
        return phi_r;
    case Grammar::PhiRR:
        return phi_rr;
    case Grammar::PhiStar:
        return phi_star;
    }
    return {};
}

inline std::string_view to_string(RuleKind k)
{
    constexpr std::array<std::string_view, 4> names{"R1", "R2", "R3", "R4"};
    return names[static_cast<std::size_t>(k)];
}

inline std::string_view to_string(Grammar g)
{
    switch (g) {
    case Grammar::PhiR:
        return "phi_r";
    case Grammar::PhiRR:
        return "phi_rr";
    case Grammar::PhiStar:
        return "phi_star";
    }
    return "?";
}

inline std::string_view to_string(Effect e)
{
    constexpr std::array<std::string_view, 6> names{"rewire",      "add_edge",   "swap_neighbors",
                                                    "remove_edge", "swap_flags", "noop"};
    return names[static_cast<std::size_t>(e)];
}

inline std::optional<Grammar> parse_grammar(std::string_view s)
{
    if (s == "phi_r" || s == "phir" || s == "R")
        return Grammar::PhiR;
    if (s == "phi_rr" || s == "phirr" || s == "RR")
        return Grammar::PhiRR;
    if (s == "phi_star" || s == "phistar" || s == "star")
        return Grammar::PhiStar;
    return std::nullopt;
}

/// One rule decision taken by a matched pair. NoOp records a chosen rule
/// whose guard or runtime condition failed.
struct RuleApplication {
    RuleKind kind = RuleKind::R1;
    Effect effect = Effect::NoOp;
    NodeId i = 0;
    NodeId j = 0;
    std::optional<NodeId> h;
    std::optional<NodeId> f;

    friend bool operator==(const RuleApplication&, const RuleApplication&) = default;
};

namespace detail {

inline bool distinct(NodeId a, NodeId b, NodeId c) { return a != b && a != c && b != c; }

inline void require(bool ok, const char* rule)
{
    if (!ok)
        throw ContractError(std::string(rule) + ": precondition does not hold");
}

} // namespace detail

inline bool r1_applicable(const LabeledGraph& g, NodeId i, NodeId j, NodeId h)
{
    return detail::distinct(i, j, h) && g.has_edge(i, j) && g.has_edge(i, h) &&
           !g.has_edge(j, h) && g.degree(i) > g.degree(j);
}

inline bool r2_applicable(const LabeledGraph& g, NodeId i, NodeId j, NodeId h, NodeId f)
{
    return detail::distinct(i, j, h) && f != i && f != j && f != h && g.has_edge(i, j) &&
           g.has_edge(i, h) && g.has_edge(j, f) && !g.has_edge(j, h) && !g.has_edge(i, f);
}

inline bool r3_applicable(const LabeledGraph& g, NodeId i, NodeId j, NodeId h)
{
    return detail::distinct(i, j, h) && g.has_edge(i, j) && g.has_edge(i, h) &&
           g.has_edge(j, h) && g.degree(i) > g.degree(j) && g.flag(i);
}

inline bool r4_applicable(const LabeledGraph& g, NodeId i, NodeId j)
{
    return i != j && g.has_edge(i, j);
}

/// Applies the edge/flag changes of `app` to `g` without re-checking guards.
/// Mutations still refuse duplicate or missing edges, which is how a
/// conflicting batch would surface.
inline void commit(LabeledGraph& g, const RuleApplication& app)
{
    switch (app.effect) {
    case Effect::Rewire:
        g.remove_edge(app.i, *app.h);
        g.add_edge(app.j, *app.h);
        break;
    case Effect::AddEdge:
        g.add_edge(app.j, *app.h);
        g.set_flag(app.i, true);
        break;
    case Effect::SwapNeighbors:
        g.remove_edge(app.i, *app.h);
        g.remove_edge(app.j, *app.f);
        g.add_edge(app.i, *app.f);
        g.add_edge(app.j, *app.h);
        break;
    case Effect::RemoveEdge:
        g.remove_edge(app.i, *app.h);
        g.set_flag(app.i, false);
        break;
    case Effect::SwapFlags: {
        bool wi = g.flag(app.i);
        g.set_flag(app.i, g.flag(app.j));
        g.set_flag(app.j, wi);
        break;
    }
    case Effect::NoOp:
        break;
    }
}

inline LabeledGraph apply_r1_rewire(const LabeledGraph& g, NodeId i, NodeId j, NodeId h)
{
    detail::require(r1_applicable(g, i, j, h), "apply_r1_rewire");
    LabeledGraph out = g;
    commit(out, {RuleKind::R1, Effect::Rewire, i, j, h, std::nullopt});
    return out;
}

inline LabeledGraph apply_r1_add(const LabeledGraph& g, NodeId i, NodeId j, NodeId h)
{
    detail::require(r1_applicable(g, i, j, h) && !g.flag(i), "apply_r1_add");
    LabeledGraph out = g;
    commit(out, {RuleKind::R1, Effect::AddEdge, i, j, h, std::nullopt});
    return out;
}

inline LabeledGraph apply_r2(const LabeledGraph& g, NodeId i, NodeId j, NodeId h, NodeId f)
{
    detail::require(r2_applicable(g, i, j, h, f), "apply_r2");
    LabeledGraph out = g;
    commit(out, {RuleKind::R2, Effect::SwapNeighbors, i, j, h, f});
    return out;
}

inline LabeledGraph apply_r3(const LabeledGraph& g, NodeId i, NodeId j, NodeId h)
{
    detail::require(r3_applicable(g, i, j, h), "apply_r3");
    LabeledGraph out = g;
    commit(out, {RuleKind::R3, Effect::RemoveEdge, i, j, h, std::nullopt});
    return out;
}

inline LabeledGraph apply_r4(const LabeledGraph& g, NodeId i, NodeId j)
{
    detail::require(r4_applicable(g, i, j), "apply_r4");
    LabeledGraph out = g;
    commit(out, {RuleKind::R4, Effect::SwapFlags, i, j, std::nullopt, std::nullopt});
    return out;
}

} // namespace rrg
