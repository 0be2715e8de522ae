#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "steklov/families.hpp"
#include "steklov/graph.hpp"

namespace fixtures {

using steklov::BoundaryProblem;
using steklov::Index;
using steklov::WeightedGraph;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline BoundaryProblem p6()
{
    return steklov::path_problem(6);
}

/// Two disjoint unit paths v1..v6 and u1..u6, interiors of both.
inline BoundaryProblem two_paths()
{
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (int i = 1; i < 6; ++i) {
        edges.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1), 1.0);
        edges.emplace_back("u" + std::to_string(i), "u" + std::to_string(i + 1), 1.0);
    }
    std::vector<std::string> interior;
    for (int i = 2; i < 6; ++i) {
        interior.push_back("v" + std::to_string(i));
        interior.push_back("u" + std::to_string(i));
    }
    return BoundaryProblem(WeightedGraph::from_edges(edges), interior);
}

inline VectorXd random_closure_function(const BoundaryProblem& bp, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorXd f(bp.n_closure());
    for (Index i = 0; i < f.size(); ++i) f[i] = gauss(rng);
    return f;
}

inline VectorXd random_boundary_function(const BoundaryProblem& bp, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorXd phi(bp.n_boundary());
    for (Index i = 0; i < phi.size(); ++i) phi[i] = gauss(rng);
    return phi;
}

/// Independent Robin oracle: the full quadratic form on the closure with
/// semidefinite mass on the interior, solved as a generalized (QZ)
/// eigenproblem; smallest finite real eigenvalue.
inline double robin_dense_oracle(const BoundaryProblem& bp, double k)
{
    const Index n = bp.n_closure();
    MatrixXd L = MatrixXd::Zero(n, n);
    for (const steklov::Edge& e : bp.cross_edges()) {
        Index pu = bp.closure_pos(e.u), pv = bp.closure_pos(e.v);
        L(pu, pu) += e.w;
        L(pv, pv) += e.w;
        L(pu, pv) -= e.w;
        L(pv, pu) -= e.w;
    }
    MatrixXd M = MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        Index v = bp.closure()[i];
        if (bp.is_boundary(v)) L(i, i) += k * bp.measure_at(i);
        else M(i, i) = bp.measure_at(i);
    }
    Eigen::GeneralizedEigenSolver<MatrixXd> ges(L, M);
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
        std::complex<double> alpha = ges.alphas()[i];
        double beta = ges.betas()[i];
        if (std::abs(beta) < 1e-12 * (1.0 + std::abs(alpha))) continue;  // infinite
        std::complex<double> mu = alpha / beta;
        if (std::abs(mu.imag()) > 1e-8 * (1.0 + std::abs(mu.real()))) continue;
        best = std::min(best, mu.real());
    }
    return best;
}

inline std::vector<BoundaryProblem> random_suite(int count, std::uint64_t seed0 = 100)
{
    std::vector<BoundaryProblem> out;
    for (int s = 0; s < count; ++s) {
        steklov::RandomSpec spec;
        spec.n_interior = 3 + static_cast<int>(s % 6);
        spec.n_boundary = 2 + static_cast<int>(s % 4);
        spec.edge_prob = 0.35 + 0.1 * (s % 5);
        spec.seed = seed0 + s;
        out.push_back(steklov::random_problem(spec));
    }
    return out;
}

}  // namespace fixtures
