#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "steklov/graph.hpp"
#include "steklov/harmonic.hpp"

namespace steklov {

/// Dirichlet-to-Neumann operator as a dense matrix on boundary data,
/// rows/columns in boundary order.
struct DtnOperator {
    std::vector<Index> boundary_order;  // graph indices
    MatrixXd lambda;                    // |dOmega| x |dOmega|
    MatrixXd effective_weights;         // mu~_xy = sum_z mu_xz P(z,y) m_y
    VectorXd boundary_measure;          // m restricted to dOmega
};

/**
 * Assemble the DtN operator two independent ways and cross-check:
 * (a) column by column as the normal derivative of the harmonic extension
 * of each basis vector, (b) I - D^{-1} A P D with D = diag(m|dOmega),
 * A_{xz} = mu_xz and P the Poisson kernel matrix. The stored matrix is
 * construction (b); a max elementwise difference beyond 1e-9 signals a
 * broken solver.
 */
inline DtnOperator assemble_dtn(const BoundaryProblem& bp)
{
    HarmonicSolver solver(bp);
    const Index nb = bp.n_boundary();
    const Index ni = bp.n_interior();

    // (a) normal-derivative columns
    MatrixXd by_columns(nb, nb);
    for (Index j = 0; j < nb; ++j) {
        VectorXd phi = VectorXd::Zero(nb);
        phi[j] = 1.0;
        by_columns.col(j) = normal_derivative(bp, solver.extend(phi));
    }

    // (b) I - D^{-1} A P D
    MatrixXd P = solver.poisson_kernels();
    MatrixXd A = MatrixXd::Zero(nb, ni);
    VectorXd m(nb);
    for (Index i = 0; i < nb; ++i) {
        Index x = bp.boundary()[i];
        m[i] = bp.measure_of(x);
        for (const auto& [z, w] : bp.graph().neighbors(x)) {
            Index j = bp.interior_pos(z);
            if (j >= 0) A(i, j) = w;
        }
    }
    MatrixXd apd = A * P * m.asDiagonal();
    MatrixXd lambda = MatrixXd::Identity(nb, nb) - m.cwiseInverse().asDiagonal() * apd;

    double diff = (lambda - by_columns).cwiseAbs().maxCoeff();
    if (diff > 1e-9)
        throw Error("DtN dual-assembly cross-check failed: max difference " +
                    std::to_string(diff));

    DtnOperator op;
    op.boundary_order = bp.boundary();
    op.lambda = std::move(lambda);
    op.effective_weights = std::move(apd);
    op.boundary_measure = std::move(m);
    return op;
}

struct SpectrumReport {
    VectorXd eigenvalues;   // nondecreasing
    MatrixXd eigenvectors;  // columns, m-orthonormal
    int multiplicity_zero = 0;
    double lambda1 = 0.0;   // eigenvalues[1]
};

/// Tolerance below which an eigenvalue counts as 0, and around 1 for
/// membership in E_1.
inline constexpr double kEigenZeroTol = 1e-8;
inline constexpr double kEigenOneTol = 1e-8;

/// Eigenpairs of the m-self-adjoint operator via the symmetric matrix
/// M^{1/2} Lambda M^{-1/2}. Eigenvector signs are fixed by making the
/// largest-magnitude entry positive (ties broken by boundary order).
inline SpectrumReport spectrum(const DtnOperator& op)
{
    const VectorXd sqrt_m = op.boundary_measure.cwiseSqrt();
    MatrixXd S = sqrt_m.asDiagonal() * op.lambda * sqrt_m.cwiseInverse().asDiagonal();
    double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9)
        throw Error("symmetrized DtN matrix asymmetry " + std::to_string(asym));
    S = 0.5 * (S + S.transpose());

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed");

    SpectrumReport rep;
    rep.eigenvalues = es.eigenvalues();
    rep.eigenvectors = sqrt_m.cwiseInverse().asDiagonal() * es.eigenvectors();
    const Index nb = static_cast<Index>(rep.eigenvalues.size());
    for (Index j = 0; j < nb; ++j) {
        Index arg = 0;
        double best = -1.0;
        for (Index i = 0; i < nb; ++i) {
            double a = std::abs(rep.eigenvectors(i, j));
            if (a > best + 1e-15) {
                best = a;
                arg = i;
            }
        }
        if (rep.eigenvectors(arg, j) < 0.0) rep.eigenvectors.col(j) *= -1.0;
    }
    for (Index i = 0; i < nb; ++i)
        if (std::abs(rep.eigenvalues[i]) <= kEigenZeroTol) ++rep.multiplicity_zero;
    rep.lambda1 = nb > 1 ? rep.eigenvalues[1] : 0.0;
    return rep;
}

/// The averaging operator Q from boundary data to inner-boundary vertices,
/// Q_{x,y} = mu_xy / m_x, with its kernel dimension from a rank-revealing
/// SVD (cutoff 1e-10 * sigma_max).
struct QOperator {
    std::vector<Index> inner_boundary;  // graph indices, graph order
    MatrixXd q;                         // |d_I Omega| x |dOmega|
    int kernel_dim = 0;
};

inline QOperator q_operator(const BoundaryProblem& bp)
{
    QOperator out;
    for (Index x : bp.interior()) {
        for (const auto& [y, w] : bp.graph().neighbors(x)) {
            if (bp.is_boundary(y)) {
                out.inner_boundary.push_back(x);
                break;
            }
        }
    }
    const Index rows = static_cast<Index>(out.inner_boundary.size());
    const Index cols = bp.n_boundary();
    out.q = MatrixXd::Zero(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        Index x = out.inner_boundary[i];
        for (const auto& [y, w] : bp.graph().neighbors(x)) {
            Index j = bp.boundary_pos(y);
            if (j >= 0) out.q(i, j) = w / bp.measure_of(x);
        }
    }
    Eigen::JacobiSVD<MatrixXd> svd(out.q);
    int rank = 0;
    if (svd.singularValues().size() > 0) {
        double cutoff = 1e-10 * svd.singularValues()[0];
        for (Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] > cutoff) ++rank;
    }
    out.kernel_dim = static_cast<int>(cols) - rank;
    return out;
}

/// Basis of the eigenspace for eigenvalue 1 (columns). Dimension must
/// match the kernel dimension of Q.
inline MatrixXd eigenspace_one(const BoundaryProblem& bp, const SpectrumReport& rep,
                               double tol = kEigenOneTol)
{
    std::vector<Index> idx;
    for (Index i = 0; i < rep.eigenvalues.size(); ++i)
        if (std::abs(rep.eigenvalues[i] - 1.0) <= tol) idx.push_back(i);
    MatrixXd basis(rep.eigenvectors.rows(), static_cast<Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
        basis.col(static_cast<Index>(j)) = rep.eigenvectors.col(idx[j]);
    int ker = q_operator(bp).kernel_dim;
    if (static_cast<int>(idx.size()) != ker)
        throw Error("dim E_1 = " + std::to_string(idx.size()) +
                    " does not match dim Ker Q = " + std::to_string(ker));
    return basis;
}

/// D_Omega(u_phi) / <phi, phi>_dOmega.
inline double rayleigh_quotient(const BoundaryProblem& bp, const VectorXd& phi)
{
    if (phi.size() != bp.n_boundary()) throw Error("boundary data has wrong size");
    double denom = 0.0;
    for (Index i = 0; i < bp.n_boundary(); ++i)
        denom += phi[i] * phi[i] * bp.measure_of(bp.boundary()[i]);
    if (denom == 0.0) throw Error("zero boundary function");
    return dirichlet_energy(bp, harmonic_extension(bp, phi)) / denom;
}

namespace detail {
inline double lp_norm(const VectorXd& v, const VectorXd& m, double p)
{
    if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
    double s = 0.0;
    for (Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p) * m[i];
    return std::pow(s, 1.0 / p);
}
}  // namespace detail

/// Max observed ||Lambda phi||_p / ||phi||_p over random Gaussian samples.
/// Finite p uses the m-weighted norm; p = inf the sup norm.
inline double pnorm_bound_check(const DtnOperator& op, double p, int samples,
                                std::uint64_t seed)
{
    if (p < 2.0) throw Error("p must be in [2, inf]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Index nb = static_cast<Index>(op.boundary_measure.size());
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        VectorXd phi(nb);
        for (Index i = 0; i < nb; ++i) phi[i] = gauss(rng);
        double np = detail::lp_norm(phi, op.boundary_measure, p);
        if (np == 0.0) continue;
        VectorXd lp = op.lambda * phi;
        worst = std::max(worst, detail::lp_norm(lp, op.boundary_measure, p) / np);
    }
    return worst;
}

}  // namespace steklov
