#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace lmp {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

// Immutable simple undirected graph. Adjacency lists are sorted, symmetry
// and simplicity are enforced at construction.
class Graph {
public:
    // Rejects self-loops, duplicate edges and out-of-range endpoints,
    // each with a distinct error.
    static Graph build(Vertex n, const std::vector<Edge>& edges);

    Vertex order() const { return n_; }
    std::uint64_t size() const { return m_; }

    std::uint32_t degree(Vertex v) const {
        check_vertex(v);
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }

    std::span<const Vertex> neighbours(Vertex v) const {
        check_vertex(v);
        return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    bool has_edge(Vertex u, Vertex v) const;

    std::uint32_t min_degree() const;
    std::uint32_t max_degree() const;

    // BFS reachability from vertex 0; generators enforce connectivity,
    // external inputs may not, so this is reported rather than required.
    bool connected() const;

    // All edges as (u, v) with u < v, ascending.
    std::vector<Edge> edges() const;

    void check_vertex(Vertex v) const {
        if (v >= n_)
            fail(Errc::vertex_out_of_range, "vertex id " + std::to_string(v) +
                                                " out of range [0," + std::to_string(n_) + ")");
    }

private:
    Graph() = default;

    Vertex n_ = 0;
    std::uint64_t m_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<Vertex> adjacency_;
};

// Edge-list text format: first line "n m", then one "u v" line per edge,
// 0-indexed, u < v.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

// BFS ball of radius s around a root: members with depths, BFS parents,
// per-radius induced edge counts, tree-ness.
struct BallView {
    Vertex root = 0;
    std::uint32_t radius = 0;
    std::vector<Vertex> members;        // BFS order, root first
    std::vector<std::uint32_t> depth;   // per member
    std::vector<Vertex> parent;         // per member, kNoVertex for root
    std::vector<std::uint32_t> degree_in_graph; // full graph degree per member
    std::vector<std::uint64_t> edges_within;    // induced edges among depth <= r
    std::vector<std::uint64_t> members_within;  // member count with depth <= r
    bool is_tree = false;               // at full radius

    bool is_tree_at(std::uint32_t r) const {
        if (r > radius) fail(Errc::precondition, "radius exceeds ball radius");
        return edges_within[r] == members_within[r] - 1;
    }

    std::vector<Vertex> leaf_set() const {
        std::vector<Vertex> leaves;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (depth[i] == radius) leaves.push_back(members[i]);
        return leaves;
    }
};

// Reusable scratch for repeated ball construction; avoids an O(n)
// allocation per call when scanning every vertex.
struct BallWorkspace {
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint32_t> index;
    std::uint32_t epoch = 0;
};

BallView ball(const Graph& g, Vertex v, std::uint32_t s);
BallView ball(const Graph& g, Vertex v, std::uint32_t s, BallWorkspace& ws);

// True iff the ball of radius h is a tree and every vertex at depth < h
// has degree exactly d in the graph.
bool is_tree_like(const BallView& b, std::uint32_t d, std::uint32_t h);

// Ball of radius r is a tree and every member has graph degree >= d.
bool is_compliant(const BallView& b, std::uint32_t d, std::uint32_t r);

// Degree-sequence summary plus the niceness verdicts. The conditions are
// asymptotic in origin; the verdicts here evaluate explicit finite-n
// proxies, and the report keeps both the measured quantity and the
// threshold so a reader can judge the margin.
struct ConditionVerdict {
    bool holds = false;
    double measured = 0.0;
    double threshold = 0.0;
};

struct DegreeSequenceProfile {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> histogram; // (degree, count) ascending
    std::uint32_t min_degree = 0;
    std::uint32_t max_degree = 0;
    double theta = 0.0;       // average degree 2m/n
    std::uint32_t d_eff = 0;  // effective minimum degree
    double kappa_hat = 0.0;   // n_{d_eff} / n
    double gamma = 0.0;       // (sqrt(log n)/theta)^(1/3)
    double c = 0.0;           // exponent constant, in (0, 1/8)
    double kappa_min = 0.0;
    bool connected = false;
    // (i) theta <= sqrt(log n)
    // (ii) min degree >= 3
    // (iii) n_{d_eff} >= kappa_min * n
    // (iv) sum_{j < d_eff} n_j <= n^{c (d_eff-1)/d_eff}
    // (v) max degree <= n^{c (d_eff-1)/d_eff}
    // (vi) sum_{j >= gamma*theta} n_j <= 10 * max_degree
    // (vii) d_eff >= 5
    ConditionVerdict conditions[7];

    std::uint64_t count_with_degree(std::uint32_t j) const;
};

DegreeSequenceProfile degree_profile(const Graph& g, double c = 0.1, double kappa_min = 0.25);

} // namespace lmp
