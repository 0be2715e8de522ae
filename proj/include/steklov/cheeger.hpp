#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>

#include "steklov/graph.hpp"
#include "steklov/harmonic.hpp"

namespace steklov {

enum class CheegerKind { escobar, jammes, classic };

inline const char* to_string(CheegerKind k)
{
    switch (k) {
        case CheegerKind::escobar: return "escobar";
        case CheegerKind::jammes: return "jammes";
        case CheegerKind::classic: return "classic";
    }
    return "?";
}

struct CheegerResult {
    CheegerKind kind;
    double value = 0.0;
    std::vector<Index> witness;  // graph indices, sorted
    bool exact = false;
};

/// Weighted-median interval of a function against positive weights.
/// Every k in [lo, hi] minimizes sum w|f - k|; the canonical value is lo.
struct L1Mean {
    double lo;
    double hi;
    double value;  // == lo
};

inline L1Mean l1_mean(const VectorXd& values, const VectorXd& weights)
{
    if (values.size() == 0) throw Error("L1 mean of empty data");
    std::vector<std::pair<double, double>> vw(values.size());
    for (Index i = 0; i < values.size(); ++i) vw[i] = {values[i], weights[i]};
    std::sort(vw.begin(), vw.end());
    double total = 0.0;
    for (const auto& [v, w] : vw) total += w;

    double lo = vw.back().first;
    double cum = 0.0;
    for (const auto& [v, w] : vw) {
        cum += w;
        if (2.0 * cum >= total) {
            lo = v;
            break;
        }
    }
    double hi = vw.front().first;
    cum = 0.0;
    for (auto it = vw.rbegin(); it != vw.rend(); ++it) {
        cum += it->second;
        if (2.0 * cum >= total) {
            hi = it->first;
            break;
        }
    }
    return {lo, hi, lo};
}

namespace detail {

/// Per-closure-position view of a boundary problem used by the subset
/// enumeration and sweep.
struct CutContext {
    const BoundaryProblem& bp;
    double m_total;
    double m_boundary;

    explicit CutContext(const BoundaryProblem& b)
        : bp(b), m_total(b.measure_total()), m_boundary(b.measure_boundary())
    {
    }

    /// Cut weight, m(A) and m(A & dOmega) recomputed from scratch for a
    /// closure-position bitmask. This is the authoritative evaluation.
    void evaluate(std::uint32_t mask, double& cut, double& mA, double& mAd) const
    {
        cut = mA = mAd = 0.0;
        for (Index i = 0; i < bp.n_closure(); ++i) {
            if (!(mask >> i & 1u)) continue;
            mA += bp.measure_at(i);
            if (bp.is_boundary(bp.closure()[i])) mAd += bp.measure_at(i);
        }
        for (const Edge& e : bp.cross_edges()) {
            bool iu = mask >> bp.closure_pos(e.u) & 1u;
            bool iv = mask >> bp.closure_pos(e.v) & 1u;
            if (iu != iv) cut += e.w;
        }
    }

    /// Quotient for a kind, or NaN when the subset is inadmissible.
    /// Half-measure constraints are evaluated as exact non-strict
    /// comparisons (2 m(A) <= m(total)); sets with zero denominator are
    /// skipped, not treated as infinite candidates.
    double quotient(CheegerKind kind, double cut, double mA, double mAd) const
    {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        switch (kind) {
            case CheegerKind::escobar:
                if (mAd <= 0.0 || 2.0 * mAd > m_boundary) return nan;
                return cut / mAd;
            case CheegerKind::jammes:
                if (mAd <= 0.0 || 2.0 * mA > m_total) return nan;
                return cut / mAd;
            case CheegerKind::classic:
                if (mA <= 0.0 || 2.0 * mA > m_total) return nan;
                return cut / mA;
        }
        return nan;
    }
};

struct EnumBest {
    double value = std::numeric_limits<double>::infinity();
    std::uint32_t mask = 0;
    bool found = false;
};

/// Gray-code scan of counter range [lo, hi); subset masks are gray(i).
/// Incremental sums screen candidates; every near-record is re-evaluated
/// from scratch before it can replace the incumbent, so the final value
/// and witness carry no accumulated drift.
inline EnumBest enumerate_range(const CutContext& ctx, CheegerKind kind,
                                std::uint64_t lo, std::uint64_t hi)
{
    const BoundaryProblem& bp = ctx.bp;
    const auto& tilde = bp.tilde_adjacency();
    auto gray = [](std::uint64_t i) { return static_cast<std::uint32_t>(i ^ (i >> 1)); };

    std::uint32_t mask = gray(lo);
    double cut, mA, mAd;
    ctx.evaluate(mask, cut, mA, mAd);

    EnumBest best;
    const double adm_slack = 1e-9 * (1.0 + ctx.m_total);
    for (std::uint64_t i = lo; i < hi; ++i) {
        if (i != lo) {
            int b = std::countr_zero(i);
            std::uint32_t bit = 1u << b;
            bool adding = !(mask & bit);
            mask ^= bit;
            double sgn = adding ? 1.0 : -1.0;
            mA += sgn * bp.measure_at(b);
            if (bp.is_boundary(bp.closure()[b])) mAd += sgn * bp.measure_at(b);
            for (const auto& [j, w] : tilde[b]) {
                bool in_other = mask >> j & 1u;
                cut += (adding != in_other) ? w : -w;
            }
        }
        if (mask == 0) continue;

        // screening with slack; exact admissibility re-checked below
        double denom, measure_bound;
        switch (kind) {
            case CheegerKind::escobar:
                denom = mAd;
                measure_bound = 2.0 * mAd - ctx.m_boundary;
                break;
            case CheegerKind::jammes:
                denom = mAd;
                measure_bound = 2.0 * mA - ctx.m_total;
                break;
            case CheegerKind::classic:
            default:
                denom = mA;
                measure_bound = 2.0 * mA - ctx.m_total;
                break;
        }
        if (denom <= 0.0) continue;
        if (measure_bound > adm_slack) continue;
        double q = cut / denom;
        if (best.found && q > best.value * (1.0 + 1e-9) + 1e-15) continue;

        double xcut, xmA, xmAd;
        ctx.evaluate(mask, xcut, xmA, xmAd);
        double xq = ctx.quotient(kind, xcut, xmA, xmAd);
        if (std::isnan(xq)) continue;
        if (!best.found || xq < best.value ||
            (xq == best.value && mask < best.mask)) {
            best.value = xq;
            best.mask = mask;
            best.found = true;
        }
    }
    return best;
}

inline std::vector<Index> mask_to_members(const BoundaryProblem& bp, std::uint32_t mask)
{
    std::vector<Index> members;
    for (Index i = 0; i < bp.n_closure(); ++i)
        if (mask >> i & 1u) members.push_back(bp.closure()[i]);
    return members;
}

}  // namespace detail

inline constexpr int kEnumerationCap = 24;

/// Exact isoperimetric constant by enumeration of all subsets of the
/// closure. Ties between optimal witnesses resolve to the smallest
/// closure-order bitmask.
inline CheegerResult cheeger_exact(const BoundaryProblem& bp, CheegerKind kind,
                                   int threads = 1)
{
    const Index n = bp.n_closure();
    if (n > kEnumerationCap)
        throw Error("closure has " + std::to_string(n) + " vertices, above the " +
                    std::to_string(kEnumerationCap) +
                    "-vertex enumeration cap; use cheeger_sweep");

    detail::CutContext ctx(bp);
    const std::uint64_t count = 1ull << n;
    threads = std::max(1, std::min<int>(threads, 64));
    std::vector<detail::EnumBest> partial(threads);
    if (threads == 1 || count < 1u << 14) {
        partial.assign(1, detail::enumerate_range(ctx, kind, 0, count));
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = count / threads;
        for (int t = 0; t < threads; ++t) {
            std::uint64_t lo = t * chunk;
            std::uint64_t hi = (t + 1 == threads) ? count : lo + chunk;
            pool.emplace_back([&, t, lo, hi] {
                partial[t] = detail::enumerate_range(ctx, kind, lo, hi);
            });
        }
        for (auto& th : pool) th.join();
    }

    detail::EnumBest best;
    for (const auto& b : partial) {
        if (!b.found) continue;
        if (!best.found || b.value < best.value ||
            (b.value == best.value && b.mask < best.mask))
            best = b;
    }
    if (!best.found) throw Error("no admissible subset for Cheeger enumeration");

    CheegerResult res;
    res.kind = kind;
    res.value = best.value;
    res.witness = detail::mask_to_members(bp, best.mask);
    res.exact = true;
    return res;
}

/// Quotient of a subset under a kind's constraint, recomputed from the
/// witness. Throws when the subset is inadmissible.
inline double cheeger_quotient(const BoundaryProblem& bp, CheegerKind kind,
                               const VertexSubset& A)
{
    detail::CutContext ctx(bp);
    double cut = relative_boundary(bp, A).second;
    double q = ctx.quotient(kind, cut, A.measure, A.boundary_measure);
    if (std::isnan(q)) throw Error("subset is inadmissible for this constant");
    return q;
}

/// The quotient of the Sobolev characterization: total variation over the
/// cross edges divided by the m-weighted L1 deviation of the boundary
/// trace from its L1 mean. Never below h_E.
inline double sobolev_quotient(const BoundaryProblem& bp, const VectorXd& f)
{
    if (f.size() != bp.n_closure()) throw Error("function not defined on the closure");
    double num = 0.0;
    for (const Edge& e : bp.cross_edges())
        num += e.w * std::abs(f[bp.closure_pos(e.u)] - f[bp.closure_pos(e.v)]);

    const Index nb = bp.n_boundary();
    VectorXd phi(nb), m(nb);
    for (Index i = 0; i < nb; ++i) {
        phi[i] = f[bp.closure_pos(bp.boundary()[i])];
        m[i] = bp.measure_of(bp.boundary()[i]);
    }
    double mean = l1_mean(phi, m).value;
    double denom = 0.0;
    for (Index i = 0; i < nb; ++i) denom += m[i] * std::abs(phi[i] - mean);
    if (denom == 0.0) throw Error("degenerate denominator: f constant on the boundary");
    return num / denom;
}

/// Best quotient over the level sets {f >= t} and {f < t} of a guiding
/// function. Heuristic: an upper bound for the exact constant.
inline CheegerResult cheeger_sweep(const BoundaryProblem& bp, const VectorXd& f,
                                   CheegerKind kind)
{
    if (f.size() != bp.n_closure()) throw Error("function not defined on the closure");
    std::vector<double> levels(f.data(), f.data() + f.size());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() < 2) throw Error("sweep needs a non-constant function");

    detail::CutContext ctx(bp);
    bool found = false;
    CheegerResult best;
    best.kind = kind;
    best.exact = false;
    auto consider = [&](const std::vector<char>& in) {
        double cut = 0.0, mA = 0.0, mAd = 0.0;
        for (Index i = 0; i < bp.n_closure(); ++i) {
            if (!in[i]) continue;
            mA += bp.measure_at(i);
            if (bp.is_boundary(bp.closure()[i])) mAd += bp.measure_at(i);
        }
        for (const Edge& e : bp.cross_edges())
            if (in[bp.closure_pos(e.u)] != in[bp.closure_pos(e.v)]) cut += e.w;
        double q = ctx.quotient(kind, cut, mA, mAd);
        if (std::isnan(q)) return;
        if (!found || q < best.value) {
            found = true;
            best.value = q;
            std::vector<Index> members;
            for (Index i = 0; i < bp.n_closure(); ++i)
                if (in[i]) members.push_back(bp.closure()[i]);
            best.witness = std::move(members);
        }
    };

    std::vector<char> in(bp.n_closure());
    for (double t : levels) {
        for (Index i = 0; i < bp.n_closure(); ++i) in[i] = f[i] >= t;
        consider(in);
        for (Index i = 0; i < bp.n_closure(); ++i) in[i] = f[i] < t;
        consider(in);
    }
    if (!found) throw Error("no admissible threshold set in sweep");
    return best;
}

/// Residual of the discrete co-area identity: the edge-wise total
/// variation equals the integral over thresholds of the level-set cut
/// weight, evaluated exactly as a sum over the distinct values of f.
inline double coarea_residual(const BoundaryProblem& bp, const VectorXd& f)
{
    if (f.size() != bp.n_closure()) throw Error("function not defined on the closure");
    double lhs = 0.0;
    for (const Edge& e : bp.cross_edges())
        lhs += e.w * std::abs(f[bp.closure_pos(e.u)] - f[bp.closure_pos(e.v)]);

    std::vector<double> levels(f.data(), f.data() + f.size());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    double rhs = 0.0;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        double t = levels[k + 1];  // level set {f >= t} over (levels[k], t]
        double cut = 0.0;
        for (const Edge& e : bp.cross_edges()) {
            bool iu = f[bp.closure_pos(e.u)] >= t;
            bool iv = f[bp.closure_pos(e.v)] >= t;
            if (iu != iv) cut += e.w;
        }
        rhs += (t - levels[k]) * cut;
    }
    return std::abs(lhs - rhs);
}

/// Magnitude scale for co-area residual checks.
inline double coarea_scale(const BoundaryProblem& bp, const VectorXd& f)
{
    double s = 1.0;
    for (const Edge& e : bp.cross_edges())
        s += e.w * std::abs(f[bp.closure_pos(e.u)] - f[bp.closure_pos(e.v)]);
    return s;
}

}  // namespace steklov
