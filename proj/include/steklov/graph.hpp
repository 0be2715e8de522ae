#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace steklov {

using Index = int;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Finite graph with symmetric nonnegative edge weights. Self-loops are
/// permitted. Vertex order is first-appearance order of the input.
class WeightedGraph {
public:
    WeightedGraph() = default;

    /// Build from (u, v, weight) triples. A weight of zero registers the
    /// vertices but creates no edge. Declaring the same unordered pair
    /// twice is an error.
    static WeightedGraph from_edges(
        const std::vector<std::tuple<std::string, std::string, double>>& edges)
    {
        WeightedGraph g;
        std::unordered_map<long long, bool> seen;
        for (const auto& [su, sv, w] : edges) {
            if (w < 0.0)
                throw Error("negative weight on edge {" + su + ", " + sv + "}");
            Index u = g.intern(su);
            Index v = g.intern(sv);
            long long key = pair_key(u, v);
            if (seen.count(key))
                throw Error("duplicate declaration of edge {" + su + ", " + sv + "}");
            seen[key] = true;
            if (w > 0.0) {
                g.adj_[u].emplace_back(v, w);
                if (u != v) g.adj_[v].emplace_back(u, w);
            }
        }
        g.sort_adjacency();
        return g;
    }

    /// Parse the edge-list text format: one `<u> <v> <weight>` per line,
    /// `#` starts a comment, blank lines ignored.
    static WeightedGraph parse_edge_list(std::string_view text)
    {
        std::vector<std::tuple<std::string, std::string, double>> edges;
        std::istringstream in{std::string(text)};
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string u, v, wtok;
            if (!(ls >> u)) continue;  // blank
            if (!(ls >> v >> wtok))
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected `<u> <v> <weight>`");
            double w;
            std::string rest;
            try {
                std::size_t pos = 0;
                w = std::stod(wtok, &pos);
                if (pos != wtok.size()) throw std::invalid_argument(wtok);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) +
                                 ": bad weight `" + wtok + "`");
            }
            if (ls >> rest)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": trailing tokens after weight");
            if (w < 0.0)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": negative weight");
            edges.emplace_back(u, v, w);
        }
        try {
            return from_edges(edges);
        } catch (const Error& e) {
            throw ParseError(e.what());
        }
    }

    Index n_vertices() const { return static_cast<Index>(names_.size()); }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Index v) const { return names_.at(v); }

    /// Index of a vertex id, or -1 when absent.
    Index index_of(const std::string& id) const
    {
        auto it = index_.find(id);
        return it == index_.end() ? -1 : it->second;
    }

    /// Neighbors of v as (vertex, weight) pairs, sorted by vertex index.
    /// A self-loop appears once.
    const std::vector<std::pair<Index, double>>& neighbors(Index v) const
    {
        return adj_.at(v);
    }

    double weight(Index u, Index v) const
    {
        for (const auto& [y, w] : adj_.at(u))
            if (y == v) return w;
        return 0.0;
    }

    /// Canonical edge-list serialization (one `u v w` line per edge in
    /// first-appearance order of the smaller endpoint).
    std::string to_edge_list() const;

private:
    Index intern(const std::string& id)
    {
        auto it = index_.find(id);
        if (it != index_.end()) return it->second;
        Index v = n_vertices();
        index_.emplace(id, v);
        names_.push_back(id);
        adj_.emplace_back();
        return v;
    }

    static long long pair_key(Index u, Index v)
    {
        if (u > v) std::swap(u, v);
        return static_cast<long long>(u) * (1LL << 31) + v;
    }

    void sort_adjacency()
    {
        for (auto& nbrs : adj_)
            std::sort(nbrs.begin(), nbrs.end());
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, Index> index_;
    std::vector<std::vector<std::pair<Index, double>>> adj_;
};

/// Undirected edge of the cross set E(Omega, closure), u < v, w > 0.
struct Edge {
    Index u;
    Index v;
    double w;
};

/**
 * A weighted graph together with a chosen interior set Omega.
 *
 * Derives the vertex boundary, the closure, the measure m, the cross edge
 * set E(Omega, closure) and the graph on the closure whose edges are
 * exactly those cross edges. The boundary is always derived from the
 * interior, never supplied. Immutable after construction.
 */
class BoundaryProblem {
public:
    BoundaryProblem(WeightedGraph graph, const std::vector<std::string>& interior_ids)
        : graph_(std::move(graph))
    {
        if (interior_ids.empty()) throw Error("interior set is empty");
        const Index n = graph_.n_vertices();
        std::vector<char> in_interior(n, 0);
        for (const auto& id : interior_ids) {
            Index v = graph_.index_of(id);
            if (v < 0) throw Error("interior vertex `" + id + "` not in graph");
            in_interior[v] = 1;
        }

        std::vector<char> in_boundary(n, 0);
        for (Index x = 0; x < n; ++x) {
            if (!in_interior[x]) continue;
            for (const auto& [y, w] : graph_.neighbors(x))
                if (!in_interior[y]) in_boundary[y] = 1;
        }

        for (Index v = 0; v < n; ++v) {
            if (in_interior[v]) interior_.push_back(v);
            else if (in_boundary[v]) boundary_.push_back(v);
        }
        if (static_cast<int>(boundary_.size()) < 2)
            throw Error("boundary too small: |dOmega| = " +
                        std::to_string(boundary_.size()) + " < 2");

        closure_pos_.assign(n, -1);
        boundary_pos_.assign(n, -1);
        interior_pos_.assign(n, -1);
        for (Index v = 0; v < n; ++v) {
            if (in_interior[v] || in_boundary[v]) {
                closure_pos_[v] = static_cast<Index>(closure_.size());
                closure_.push_back(v);
            }
        }
        for (std::size_t i = 0; i < interior_.size(); ++i)
            interior_pos_[interior_[i]] = static_cast<Index>(i);
        for (std::size_t i = 0; i < boundary_.size(); ++i)
            boundary_pos_[boundary_[i]] = static_cast<Index>(i);

        // m: full weighted degree on Omega (self-loop counted once),
        // weighted degree into Omega on the boundary.
        measure_.assign(closure_.size(), 0.0);
        for (std::size_t i = 0; i < closure_.size(); ++i) {
            Index x = closure_[i];
            double m = 0.0;
            for (const auto& [y, w] : graph_.neighbors(x)) {
                if (in_interior[x]) m += w;
                else if (in_interior[y]) m += w;
            }
            if (m <= 0.0)
                throw Error("isolated vertex in closure: `" + graph_.name(x) + "`");
            measure_[i] = m;
        }

        // Cross edges: at least one endpoint interior, no self-loops.
        for (Index x : interior_) {
            for (const auto& [y, w] : graph_.neighbors(x)) {
                if (y == x) continue;
                if (in_interior[y] && y < x) continue;  // counted from the other side
                cross_edges_.push_back(Edge{std::min(x, y), std::max(x, y), w});
            }
        }
        std::sort(cross_edges_.begin(), cross_edges_.end(),
                  [](const Edge& a, const Edge& b) {
                      return std::tie(a.u, a.v) < std::tie(b.u, b.v);
                  });

        tilde_adj_.assign(closure_.size(), {});
        for (const Edge& e : cross_edges_) {
            Index pu = closure_pos_[e.u], pv = closure_pos_[e.v];
            tilde_adj_[pu].emplace_back(pv, e.w);
            tilde_adj_[pv].emplace_back(pu, e.w);
        }
        for (auto& nbrs : tilde_adj_) std::sort(nbrs.begin(), nbrs.end());

        label_components();
    }

    const WeightedGraph& graph() const { return graph_; }

    Index n_interior() const { return static_cast<Index>(interior_.size()); }
    Index n_boundary() const { return static_cast<Index>(boundary_.size()); }
    Index n_closure() const { return static_cast<Index>(closure_.size()); }

    /// Graph indices in graph order.
    const std::vector<Index>& interior() const { return interior_; }
    const std::vector<Index>& boundary() const { return boundary_; }
    const std::vector<Index>& closure() const { return closure_; }

    bool is_interior(Index v) const { return interior_pos_[v] >= 0; }
    bool is_boundary(Index v) const { return boundary_pos_[v] >= 0; }
    bool in_closure(Index v) const { return closure_pos_[v] >= 0; }

    /// Position of graph vertex v in the closure/boundary/interior
    /// ordering, -1 when absent.
    Index closure_pos(Index v) const { return closure_pos_[v]; }
    Index boundary_pos(Index v) const { return boundary_pos_[v]; }
    Index interior_pos(Index v) const { return interior_pos_[v]; }

    double measure_at(Index closure_position) const { return measure_[closure_position]; }
    double measure_of(Index v) const { return measure_[closure_pos_.at(v)]; }

    double measure_total() const
    {
        double s = 0.0;
        for (double m : measure_) s += m;
        return s;
    }

    double measure_boundary() const
    {
        double s = 0.0;
        for (Index v : boundary_) s += measure_of(v);
        return s;
    }

    const std::vector<Edge>& cross_edges() const { return cross_edges_; }

    /// Adjacency of the graph on the closure restricted to cross edges,
    /// indexed by closure position.
    const std::vector<std::vector<std::pair<Index, double>>>& tilde_adjacency() const
    {
        return tilde_adj_;
    }

    int component_count() const { return component_count_; }
    /// Component label per closure position.
    const std::vector<int>& component_labels() const { return component_labels_; }

    /// True when every component of the closure graph contains a boundary
    /// vertex; the harmonic extension is unique exactly then.
    bool every_component_touches_boundary() const
    {
        std::vector<char> touched(component_count_, 0);
        for (Index v : boundary_) touched[component_labels_[closure_pos_[v]]] = 1;
        for (char t : touched)
            if (!t) return false;
        return true;
    }

private:
    void label_components()
    {
        const Index n = n_closure();
        component_labels_.assign(n, -1);
        component_count_ = 0;
        std::vector<Index> stack;
        for (Index s = 0; s < n; ++s) {
            if (component_labels_[s] >= 0) continue;
            int label = component_count_++;
            stack.push_back(s);
            component_labels_[s] = label;
            while (!stack.empty()) {
                Index x = stack.back();
                stack.pop_back();
                for (const auto& [y, w] : tilde_adj_[x]) {
                    if (component_labels_[y] < 0) {
                        component_labels_[y] = label;
                        stack.push_back(y);
                    }
                }
            }
        }
    }

    WeightedGraph graph_;
    std::vector<Index> interior_, boundary_, closure_;
    std::vector<Index> closure_pos_, boundary_pos_, interior_pos_;
    std::vector<double> measure_;
    std::vector<Edge> cross_edges_;
    std::vector<std::vector<std::pair<Index, double>>> tilde_adj_;
    std::vector<int> component_labels_;
    int component_count_ = 0;
};

/// Subset of the closure with cached measures.
struct VertexSubset {
    std::vector<Index> members;  // graph indices, sorted
    double measure = 0.0;           // m(A)
    double boundary_measure = 0.0;  // m(A intersect dOmega)

    static VertexSubset of(const BoundaryProblem& bp, std::vector<Index> members)
    {
        VertexSubset s;
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (Index v : members) {
            if (!bp.in_closure(v))
                throw Error("subset member `" + bp.graph().name(v) + "` outside closure");
            s.measure += bp.measure_of(v);
            if (bp.is_boundary(v)) s.boundary_measure += bp.measure_of(v);
        }
        s.members = std::move(members);
        return s;
    }
};

/// Cross edges of the closure graph separating A from its complement,
/// with their total weight. Self-loops never appear (they are not cross
/// edges to begin with).
inline std::pair<std::vector<Edge>, double>
relative_boundary(const BoundaryProblem& bp, const VertexSubset& A)
{
    std::vector<char> in(bp.graph().n_vertices(), 0);
    for (Index v : A.members) in[v] = 1;
    std::vector<Edge> cut;
    double total = 0.0;
    for (const Edge& e : bp.cross_edges()) {
        if (in[e.u] != in[e.v]) {
            cut.push_back(e);
            total += e.w;
        }
    }
    return {std::move(cut), total};
}

inline std::string WeightedGraph::to_edge_list() const
{
    std::ostringstream out;
    out.precision(17);
    for (Index u = 0; u < n_vertices(); ++u)
        for (const auto& [v, w] : adj_[u])
            if (v >= u) out << names_[u] << ' ' << names_[v] << ' ' << w << '\n';
    return out.str();
}

}  // namespace steklov
