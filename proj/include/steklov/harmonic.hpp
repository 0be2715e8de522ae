#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "steklov/graph.hpp"

namespace steklov {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Relative residual tolerance used by all identity checks.
inline constexpr double kSolveTol = 1e-10;

/// Delta f on the interior, f given on the closure (closure order).
/// Delta f(x) = (1/m_x) sum_{y ~ x} mu_xy (f(y) - f(x)).
inline VectorXd apply_laplacian(const BoundaryProblem& bp, const VectorXd& f)
{
    if (f.size() != bp.n_closure()) throw Error("function not defined on the closure");
    VectorXd out(bp.n_interior());
    for (Index i = 0; i < bp.n_interior(); ++i) {
        Index x = bp.interior()[i];
        double fx = f[bp.closure_pos(x)];
        double acc = 0.0;
        for (const auto& [y, w] : bp.graph().neighbors(x)) {
            Index py = bp.closure_pos(y);
            if (py < 0) throw Error("closure not Laplacian-complete");
            acc += w * (f[py] - fx);
        }
        out[i] = acc / bp.measure_of(x);
    }
    return out;
}

/// Outward normal derivative on the boundary (boundary order):
/// (df/dn)(z) = (1/m_z) sum_{x in Omega, x ~ z} mu_zx (f(z) - f(x)).
inline VectorXd normal_derivative(const BoundaryProblem& bp, const VectorXd& f)
{
    if (f.size() != bp.n_closure()) throw Error("function not defined on the closure");
    VectorXd out(bp.n_boundary());
    for (Index i = 0; i < bp.n_boundary(); ++i) {
        Index z = bp.boundary()[i];
        double fz = f[bp.closure_pos(z)];
        double acc = 0.0;
        for (const auto& [x, w] : bp.graph().neighbors(z))
            if (bp.is_interior(x)) acc += w * (fz - f[bp.closure_pos(x)]);
        out[i] = acc / bp.measure_of(z);
    }
    return out;
}

/// D_Omega(f, g) over the cross edges, each undirected edge once.
inline double dirichlet_form(const BoundaryProblem& bp, const VectorXd& f, const VectorXd& g)
{
    double acc = 0.0;
    for (const Edge& e : bp.cross_edges()) {
        Index pu = bp.closure_pos(e.u), pv = bp.closure_pos(e.v);
        acc += e.w * (f[pu] - f[pv]) * (g[pu] - g[pv]);
    }
    return acc;
}

inline double dirichlet_energy(const BoundaryProblem& bp, const VectorXd& f)
{
    return dirichlet_form(bp, f, f);
}

/// <Delta f, g>_Omega + D_Omega(f, g) - <df/dn, g>_dOmega.
/// Identically zero by Green's formula; the return value is the rounding
/// residual.
inline double green_residual(const BoundaryProblem& bp, const VectorXd& f, const VectorXd& g)
{
    VectorXd lap = apply_laplacian(bp, f);
    double inner = 0.0;
    for (Index i = 0; i < bp.n_interior(); ++i)
        inner += lap[i] * g[bp.closure_pos(bp.interior()[i])] * bp.measure_of(bp.interior()[i]);
    VectorXd dn = normal_derivative(bp, f);
    double bdry = 0.0;
    for (Index i = 0; i < bp.n_boundary(); ++i)
        bdry += dn[i] * g[bp.closure_pos(bp.boundary()[i])] * bp.measure_of(bp.boundary()[i]);
    return inner + dirichlet_form(bp, f, g) - bdry;
}

/// Magnitude scale for Green residual checks.
inline double green_scale(const BoundaryProblem& bp, const VectorXd& f, const VectorXd& g)
{
    double s = 1.0;
    for (const Edge& e : bp.cross_edges()) {
        Index pu = bp.closure_pos(e.u), pv = bp.closure_pos(e.v);
        s += std::abs(e.w * (f[pu] - f[pv]) * (g[pu] - g[pv]));
    }
    return s;
}

/**
 * Harmonic extension solver. Factors the interior sub-Laplacian once
 * (dense Cholesky; the block is SPD whenever every component of the
 * closure graph touches the boundary) and reuses the factorization for
 * every right-hand side, in particular for all Poisson kernel columns.
 */
class HarmonicSolver {
public:
    explicit HarmonicSolver(const BoundaryProblem& bp) : bp_(bp)
    {
        if (!bp.every_component_touches_boundary())
            throw Error("no unique extension: a component of the closure graph "
                        "has no boundary vertex");
        const Index ni = bp.n_interior();
        MatrixXd K = MatrixXd::Zero(ni, ni);
        for (Index i = 0; i < ni; ++i) {
            Index x = bp.interior()[i];
            K(i, i) = bp.measure_of(x) - bp.graph().weight(x, x);
            for (const auto& [y, w] : bp.graph().neighbors(x)) {
                if (y == x) continue;
                Index j = bp.interior_pos(y);
                if (j >= 0) K(i, j) -= w;
            }
        }
        llt_.compute(K);
        if (llt_.info() != Eigen::Success)
            throw Error("interior system factorization failed");
    }

    const BoundaryProblem& problem() const { return bp_; }

    /// Harmonic extension of boundary data phi (boundary order) to the
    /// closure (closure order).
    VectorXd extend(const VectorXd& phi) const
    {
        const BoundaryProblem& bp = bp_;
        if (phi.size() != bp.n_boundary()) throw Error("boundary data has wrong size");
        VectorXd rhs = VectorXd::Zero(bp.n_interior());
        for (Index i = 0; i < bp.n_interior(); ++i) {
            Index x = bp.interior()[i];
            for (const auto& [z, w] : bp.graph().neighbors(x)) {
                Index bz = bp.boundary_pos(z);
                if (bz >= 0) rhs[i] += w * phi[bz];
            }
        }
        VectorXd ui = llt_.solve(rhs);
        VectorXd u(bp.n_closure());
        for (Index i = 0; i < bp.n_interior(); ++i)
            u[bp.closure_pos(bp.interior()[i])] = ui[i];
        for (Index i = 0; i < bp.n_boundary(); ++i)
            u[bp.closure_pos(bp.boundary()[i])] = phi[i];
        return u;
    }

    /// Poisson kernel matrix, |Omega| x |dOmega|: column y is the interior
    /// part of the harmonic extension of delta_y / m_y. All columns share
    /// the single factorization.
    MatrixXd poisson_kernels() const
    {
        const BoundaryProblem& bp = bp_;
        MatrixXd rhs = MatrixXd::Zero(bp.n_interior(), bp.n_boundary());
        for (Index i = 0; i < bp.n_interior(); ++i) {
            Index x = bp.interior()[i];
            for (const auto& [z, w] : bp.graph().neighbors(x)) {
                Index bz = bp.boundary_pos(z);
                if (bz >= 0) rhs(i, bz) += w / bp.measure_of(z);
            }
        }
        return llt_.solve(rhs);
    }

private:
    const BoundaryProblem& bp_;
    Eigen::LLT<MatrixXd> llt_;
};

inline VectorXd harmonic_extension(const BoundaryProblem& bp, const VectorXd& phi)
{
    return HarmonicSolver(bp).extend(phi);
}

}  // namespace steklov
