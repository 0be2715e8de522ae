#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/graph.hpp"

namespace steklov {

/// Unit-weight path v1..vn with interior {v2 .. v_{n-1}}.
inline BoundaryProblem path_problem(int n)
{
    if (n < 6 || n % 2 != 0)
        throw Error("path family needs an even vertex count n >= 6");
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (int i = 1; i < n; ++i)
        edges.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1), 1.0);
    std::vector<std::string> interior;
    for (int i = 2; i < n; ++i) interior.push_back("v" + std::to_string(i));
    return BoundaryProblem(WeightedGraph::from_edges(edges), interior);
}

/// Two hubs w1 ~ w2, each fanned out to 2n boundary leaves, unit weights.
/// The reconstruction is validated on every call: the first nontrivial
/// eigenvalue must equal 1/(n+1) and the Escobar constant 1/(2n)
/// (enumerated for n <= 5, checked against the hub-side witness above).
inline BoundaryProblem hub_fan_problem(int n)
{
    if (n < 1) throw Error("hub-fan family needs n >= 1");
    std::vector<std::tuple<std::string, std::string, double>> edges;
    edges.emplace_back("w1", "w2", 1.0);
    for (int i = 1; i <= 2 * n; ++i)
        edges.emplace_back("w1", "v" + std::to_string(i), 1.0);
    for (int i = 2 * n + 1; i <= 4 * n; ++i)
        edges.emplace_back("w2", "v" + std::to_string(i), 1.0);
    BoundaryProblem bp(WeightedGraph::from_edges(edges), {"w1", "w2"});

    double lam1 = spectrum(assemble_dtn(bp)).lambda1;
    if (std::abs(lam1 - 1.0 / (n + 1)) > 1e-9)
        throw Error("figure reconstruction invalid: lambda_1 != 1/(n+1)");

    double h_E;
    if (bp.n_closure() <= kEnumerationCap) {
        h_E = cheeger_exact(bp, CheegerKind::escobar).value;
    } else {
        std::vector<Index> witness{bp.graph().index_of("w1")};
        for (int i = 1; i <= 2 * n; ++i)
            witness.push_back(bp.graph().index_of("v" + std::to_string(i)));
        h_E = cheeger_quotient(bp, CheegerKind::escobar,
                               VertexSubset::of(bp, witness));
    }
    if (std::abs(h_E - 1.0 / (2 * n)) > 1e-12)
        throw Error("figure reconstruction invalid: h_E != 1/(2n)");
    return bp;
}

/// Interior center c with n unit-weight boundary leaves.
inline BoundaryProblem star_problem(int n)
{
    if (n < 2) throw Error("star family needs n >= 2 leaves");
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (int i = 1; i <= n; ++i)
        edges.emplace_back("c", "x" + std::to_string(i), 1.0);
    return BoundaryProblem(WeightedGraph::from_edges(edges), {"c"});
}

struct RandomSpec {
    int n_interior = 6;
    int n_boundary = 4;
    double edge_prob = 0.5;
    double weight_lo = 0.5;
    double weight_hi = 2.0;
    std::uint64_t seed = 1;
};

/// Seeded random problem with a connected closure graph and at least two
/// boundary vertices; resamples up to 100 times. mt19937_64 keeps the
/// output reproducible across platforms for a fixed spec.
inline BoundaryProblem random_problem(const RandomSpec& spec)
{
    if (spec.n_interior < 1 || spec.n_boundary < 2)
        throw Error("random family needs n_interior >= 1, n_boundary >= 2");
    if (!(spec.edge_prob > 0.0 && spec.edge_prob <= 1.0))
        throw Error("edge probability must be in (0, 1]");
    if (!(spec.weight_lo > 0.0 && spec.weight_hi >= spec.weight_lo))
        throw Error("weight range must be positive");

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> wdist(spec.weight_lo, spec.weight_hi);

    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<std::tuple<std::string, std::string, double>> edges;
        auto iname = [](int i) { return "i" + std::to_string(i); };
        auto bname = [](int i) { return "b" + std::to_string(i); };
        for (int i = 0; i < spec.n_interior; ++i)
            for (int j = i + 1; j < spec.n_interior; ++j)
                if (coin(rng) < spec.edge_prob)
                    edges.emplace_back(iname(i), iname(j), wdist(rng));
        for (int b = 0; b < spec.n_boundary; ++b) {
            bool attached = false;
            for (int i = 0; i < spec.n_interior; ++i) {
                if (coin(rng) < spec.edge_prob) {
                    edges.emplace_back(bname(b), iname(i), wdist(rng));
                    attached = true;
                }
            }
            if (!attached) continue;  // b simply stays outside the boundary
        }
        if (edges.empty()) continue;

        std::vector<std::string> interior;
        for (int i = 0; i < spec.n_interior; ++i) interior.push_back(iname(i));
        try {
            WeightedGraph g = WeightedGraph::from_edges(edges);
            for (const auto& id : interior)
                if (g.index_of(id) < 0) throw Error("isolated interior vertex");
            BoundaryProblem bp(std::move(g), interior);
            if (bp.component_count() != 1) continue;
            return bp;
        } catch (const Error&) {
            continue;
        }
    }
    throw Error("random generation failed to produce a connected problem "
                "in 100 attempts");
}

/// FNV-1a hash of the canonical edge-list text; pins generator output.
inline std::uint64_t edge_list_hash(const WeightedGraph& g)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : g.to_edge_list()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace steklov
