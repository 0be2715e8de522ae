#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>

#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/graph.hpp"
#include "steklov/harmonic.hpp"

namespace steklov {

struct RobinResult {
    double mu1 = 0.0;
    VectorXd eigenfunction;  // closure order, unit m-norm on the interior
};

/**
 * First eigenvalue of the Robin problem: minimize
 * (D_Omega(phi) + k <phi, phi>_dOmega) / <phi, phi>_Omega.
 * Boundary values are eliminated by the stationarity relation
 * u(z) = sum_x mu_zx u(x) / ((1+k) m_z), leaving a symmetric eigenproblem
 * on the interior with weight m.
 */
inline RobinResult robin_eigenvalue(const BoundaryProblem& bp, double k)
{
    if (!(k > 0.0)) throw Error("Robin parameter k must be positive");
    if (!bp.every_component_touches_boundary())
        throw Error("no unique extension: a component of the closure graph "
                    "has no boundary vertex");

    const Index ni = bp.n_interior();
    MatrixXd R = MatrixXd::Zero(ni, ni);
    for (Index i = 0; i < ni; ++i) {
        Index x = bp.interior()[i];
        for (const auto& [y, w] : bp.graph().neighbors(x)) {
            if (y == x) continue;
            R(i, i) += w;
            Index j = bp.interior_pos(y);
            if (j >= 0) R(i, j) -= w;
        }
    }
    for (Index b = 0; b < bp.n_boundary(); ++b) {
        Index z = bp.boundary()[b];
        VectorXd wz = VectorXd::Zero(ni);
        for (const auto& [x, w] : bp.graph().neighbors(z)) {
            Index i = bp.interior_pos(x);
            if (i >= 0) wz[i] = w;
        }
        R.noalias() -= wz * wz.transpose() / ((1.0 + k) * bp.measure_of(z));
    }

    VectorXd m(ni);
    for (Index i = 0; i < ni; ++i) m[i] = bp.measure_of(bp.interior()[i]);
    VectorXd inv_sqrt_m = m.cwiseSqrt().cwiseInverse();
    MatrixXd S = inv_sqrt_m.asDiagonal() * R * inv_sqrt_m.asDiagonal();
    S = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
    if (es.info() != Eigen::Success) throw Error("Robin eigensolver failed");

    RobinResult out;
    out.mu1 = es.eigenvalues()[0];
    VectorXd ui = inv_sqrt_m.asDiagonal() * es.eigenvectors().col(0);
    Index arg;
    ui.cwiseAbs().maxCoeff(&arg);
    if (ui[arg] < 0.0) ui = -ui;

    out.eigenfunction = VectorXd::Zero(bp.n_closure());
    for (Index i = 0; i < ni; ++i) out.eigenfunction[bp.closure_pos(bp.interior()[i])] = ui[i];
    for (Index b = 0; b < bp.n_boundary(); ++b) {
        Index z = bp.boundary()[b];
        double acc = 0.0;
        for (const auto& [x, w] : bp.graph().neighbors(z)) {
            Index i = bp.interior_pos(x);
            if (i >= 0) acc += w * ui[i];
        }
        out.eigenfunction[bp.closure_pos(z)] = acc / ((1.0 + k) * bp.measure_of(z));
    }
    return out;
}

/// The Escobar-type lower bound (2 h_E mu1 - a (k + mu1)) a / (a^2 + 2 mu1).
/// Negative values are reported verbatim (a negative lower bound is
/// vacuously true).
inline double escobar_bound(double h_E, double mu1, double k, double a)
{
    if (!(a > 0.0) || !(k > 0.0)) throw Error("a and k must be positive");
    if (!(mu1 > 0.0)) throw Error("mu1 must be positive");
    return (2.0 * h_E * mu1 - a * (k + mu1)) * a / (a * a + 2.0 * mu1);
}

struct OptimalA {
    double a0;
    double value;
};

/// Closed-form maximizer of the Escobar bound over a, with the maximum.
inline OptimalA escobar_optimal_a(double h, double mu, double k)
{
    if (!(k > 0.0)) throw Error("a and k must be positive");
    if (!(mu > 0.0)) throw Error("mu1 must be positive");
    double s = std::sqrt((k + mu) * (k + mu) + 2.0 * h * h * mu);
    double a0 = 2.0 * h * mu / (s + (k + mu));
    double value = h * h * mu * s /
                   (2.0 * h * h * mu + (k + mu) * (k + mu) + (k + mu) * s);
    return {a0, value};
}

inline std::vector<double> default_k_grid(int points = 61, double lo = 1e-3,
                                          double hi = 1e3)
{
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = std::pow(10.0, std::log10(lo) +
                                     (std::log10(hi) - std::log10(lo)) * i /
                                         double(points - 1));
    return grid;
}

struct EscobarBest {
    double k = 0.0;
    double a = 0.0;
    double mu1 = 0.0;
    double value = -std::numeric_limits<double>::infinity();
};

/// Best Escobar bound over a k grid, a optimized in closed form per k.
inline EscobarBest escobar_best(const BoundaryProblem& bp, double h_E,
                                const std::vector<double>& k_grid)
{
    if (k_grid.empty()) throw Error("empty k grid");
    EscobarBest best;
    for (double k : k_grid) {
        double mu1 = robin_eigenvalue(bp, k).mu1;
        OptimalA opt = escobar_optimal_a(h_E, mu1, k);
        if (opt.value > best.value) best = {k, opt.a0, mu1, opt.value};
    }
    return best;
}

/// First nontrivial eigenvalue of the Laplacian on the closure graph with
/// vertex weights m and no boundary condition.
inline double zeta1(const BoundaryProblem& bp)
{
    if (bp.component_count() != 1)
        throw Error("closure graph is disconnected; zeta_1 would be 0");
    const Index n = bp.n_closure();
    MatrixXd L = MatrixXd::Zero(n, n);
    for (const Edge& e : bp.cross_edges()) {
        Index pu = bp.closure_pos(e.u), pv = bp.closure_pos(e.v);
        L(pu, pu) += e.w;
        L(pv, pv) += e.w;
        L(pu, pv) -= e.w;
        L(pv, pu) -= e.w;
    }
    VectorXd inv_sqrt_m(n);
    for (Index i = 0; i < n; ++i) inv_sqrt_m[i] = 1.0 / std::sqrt(bp.measure_at(i));
    MatrixXd S = inv_sqrt_m.asDiagonal() * L * inv_sqrt_m.asDiagonal();
    S = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
    if (es.info() != Eigen::Success) throw Error("zeta_1 eigensolver failed");
    return es.eigenvalues()[1];
}

struct InequalitySlack {
    double slack = 0.0;  // bound satisfied iff slack >= -tol
    bool checked = false;
};

struct BoundsReport {
    double lambda1 = 0.0;
    double h_E = 0.0, h_J = 0.0, h_classic = 0.0;
    double zeta_1 = 0.0;
    bool connected = true;
    bool constants_exact = true;
    CheegerResult escobar_result, jammes_result, classic_result;
    double mu1_at_best_k = 0.0, best_k = 0.0, best_a = 0.0;
    double escobar_lower = 0.0, jammes_lower = 0.0, corollary_lower = 0.0,
           upper_2hE = 0.0;
    std::map<std::string, InequalitySlack> residuals;

    bool passed(double tol = 1e-9) const
    {
        for (const auto& [name, r] : residuals)
            if (r.checked && r.slack < -tol) return false;
        return true;
    }
};

struct VerifyOptions {
    int threads = 1;
    std::vector<double> k_grid = default_k_grid();
};

/// One-shot verifier: spectrum, the three constants, zeta_1, the Robin
/// k-search, and the signed slack of every inequality. Above the
/// enumeration cap the constants come from a sweep over the harmonic
/// extension of the first eigenvector; lower-bound inequalities that would
/// compare against those (over-estimated) values are reported unchecked.
inline BoundsReport verify_all(const BoundaryProblem& bp,
                               const VerifyOptions& opts = {})
{
    BoundsReport rep;
    DtnOperator op = assemble_dtn(bp);
    SpectrumReport spec = spectrum(op);
    rep.lambda1 = spec.lambda1;
    rep.connected = bp.component_count() == 1;

    if (bp.n_closure() <= kEnumerationCap) {
        rep.constants_exact = true;
        rep.escobar_result = cheeger_exact(bp, CheegerKind::escobar, opts.threads);
        rep.jammes_result = cheeger_exact(bp, CheegerKind::jammes, opts.threads);
        rep.classic_result = cheeger_exact(bp, CheegerKind::classic, opts.threads);
    } else {
        rep.constants_exact = false;
        VectorXd phi = spec.eigenvectors.col(spec.eigenvalues.size() > 1 ? 1 : 0);
        VectorXd guide = harmonic_extension(bp, phi);
        rep.escobar_result = cheeger_sweep(bp, guide, CheegerKind::escobar);
        rep.jammes_result = cheeger_sweep(bp, guide, CheegerKind::jammes);
        rep.classic_result = cheeger_sweep(bp, guide, CheegerKind::classic);
    }
    rep.h_E = rep.escobar_result.value;
    rep.h_J = rep.jammes_result.value;
    rep.h_classic = rep.classic_result.value;

    if (rep.connected) rep.zeta_1 = zeta1(bp);

    EscobarBest eb = escobar_best(bp, rep.h_E, opts.k_grid);
    rep.best_k = eb.k;
    rep.best_a = eb.a;
    rep.mu1_at_best_k = eb.mu1;
    rep.escobar_lower = eb.value;
    rep.jammes_lower = 0.5 * rep.h_classic * rep.h_J;
    rep.corollary_lower = rep.zeta_1 * rep.zeta_1 / 8.0;
    rep.upper_2hE = 2.0 * rep.h_E;

    const bool exact = rep.constants_exact;
    const bool conn = rep.connected;
    rep.residuals["escobar_lower"] = {rep.lambda1 - rep.escobar_lower, exact};
    rep.residuals["jammes_lower"] = {rep.lambda1 - rep.jammes_lower, exact};
    rep.residuals["corollary_lower"] = {rep.lambda1 - rep.corollary_lower, conn};
    rep.residuals["upper_2hE"] = {rep.upper_2hE - rep.lambda1, true};
    rep.residuals["h_le_hJ"] = {rep.h_J - rep.h_classic, exact};
    rep.residuals["hJ_le_hE"] = {rep.h_E - rep.h_J, exact};
    rep.residuals["hJ_le_1"] = {1.0 - rep.h_J, exact};
    rep.residuals["zeta1_le_2h"] = {2.0 * rep.h_classic - rep.zeta_1, conn};
    rep.residuals["zeta1_ge_h2_half"] = {
        rep.zeta_1 - 0.5 * rep.h_classic * rep.h_classic, exact && conn};
    return rep;
}

}  // namespace steklov
