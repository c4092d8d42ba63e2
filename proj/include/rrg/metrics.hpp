// Progress and robustness metrics: degree range, exact average degree, the
// graph Laplacian and its second-smallest eigenvalue.
#pragma once

#include "rrg/graph.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <vector>

namespace rrg {

using LaplacianMatrix = Eigen::MatrixXd;

/// L = D - A.
inline LaplacianMatrix laplacian(const LabeledGraph& g)
{
    const auto n = static_cast<Eigen::Index>(g.node_count());
    LaplacianMatrix L = LaplacianMatrix::Zero(n, n);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        L(i, i) = static_cast<double>(g.degree(i));
        for (NodeId j : g.neighbors(i))
            L(i, j) = -1.0;
    }
    return L;
}

/// Ascending Laplacian spectrum.
inline Eigen::VectorXd laplacian_spectrum(const LabeledGraph& g)
{
    Eigen::SelfAdjointEigenSolver<LaplacianMatrix> solver(laplacian(g), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("laplacian_spectrum: eigensolver did not converge");
    return solver.eigenvalues();
}

/// Second-smallest Laplacian eigenvalue. Values within `tol` of zero are
/// reported as exactly zero, so disconnected graphs give 0.
inline double algebraic_connectivity(const LabeledGraph& g, double tol = 1e-9)
{
    if (g.node_count() < 2)
        throw UsageError("algebraic_connectivity: needs at least 2 nodes");
    if (!(tol > 0))
        throw UsageError("algebraic_connectivity: tol must be positive");
    double lambda2 = laplacian_spectrum(g)(1);
    return std::abs(lambda2) < tol ? 0.0 : std::max(lambda2, 0.0);
}

/// Asymptotic spectral-gap bound for random m-regular graphs: m - 2 sqrt(m-1).
inline double expander_threshold(int m)
{
    if (m < 3)
        throw UsageError("expander_threshold: m must be at least 3");
    return m - 2.0 * std::sqrt(static_cast<double>(m - 1));
}

struct MetricsSample {
    std::size_t step = 0;
    std::size_t f = 0;
    AverageDegree dbar;
    std::size_t edges = 0;
    std::size_t wsum = 0;
    std::optional<double> alpha;

    friend bool operator==(const MetricsSample&, const MetricsSample&) = default;
};

inline MetricsSample sample_metrics(const LabeledGraph& g, std::size_t step, bool with_alpha)
{
    MetricsSample s;
    s.step = step;
    s.f = degree_range(g);
    s.dbar = average_degree(g);
    s.edges = g.edge_count();
    s.wsum = g.flag_sum();
    if (with_alpha && g.node_count() >= 2)
        s.alpha = algebraic_connectivity(g);
    return s;
}

} // namespace rrg
