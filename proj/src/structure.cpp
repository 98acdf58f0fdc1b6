#include "structure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <tuple>

#include "protocol.hpp"
#include "theory.hpp"

namespace lmp {

ThresholdSet audit_thresholds(std::uint64_t n, std::uint32_t d, double theta,
                              const ThresholdConstants& constants) {
    if (n < 3) fail(Errc::precondition, "thresholds require n >= 3");
    if (d < 1) fail(Errc::precondition, "thresholds require d >= 1");
    if (!(constants.C > 0 && constants.B > 0 && constants.eps1 > 0 && constants.eps > 0))
        fail(Errc::precondition, "threshold constants must be positive");

    ThresholdSet t;
    t.constants = constants;
    const double log_n = std::log(static_cast<double>(n));
    const double log_log_n = std::log(log_n);
    const double log_d = d >= 2 ? std::log(static_cast<double>(d)) : 0.0;

    auto ceil_clamped = [](double x) {
        const double c = std::ceil(x);
        return c < 1.0 ? 1u : static_cast<std::uint32_t>(c);
    };

    t.omega = constants.C * log_log_n;
    t.ell = constants.B * log_n * log_n;
    t.omega_ceil = ceil_clamped(t.omega);

    if (d >= 2 && theta > 1.0) {
        t.h = std::log(log_n / (log_log_n * std::log(theta))) / log_d;
    } else {
        t.h = 0.0;
    }
    t.h_nonpositive = !(t.h > 0.0);
    t.h_ceil = ceil_clamped(t.h);

    if (d >= 2) {
        t.omega_prime = std::log(log_n / log_d) / log_d;
        t.l1 = constants.eps1 * log_n / log_d;
    }
    t.omega_prime_ceil = ceil_clamped(t.omega_prime);

    t.nu = d >= 1 ? (d - 1) / 2 : 0;
    if (t.nu >= 2) {
        t.a_const = (1.0 + constants.eps) * log_d / std::log(static_cast<double>(t.nu));
        t.a_omega_prime_ceil = ceil_clamped(t.a_const * t.omega_prime);
    }
    if (d >= 3) t.k_population = tree_population(d, t.h_ceil);
    return t;
}

ThresholdSet thresholds(std::uint64_t n, std::uint32_t d, double theta,
                        const ThresholdConstants& constants) {
    if (d < 5) fail(Errc::precondition, "thresholds require d >= 5");
    if (!(theta >= 2.0)) fail(Errc::precondition, "thresholds require theta >= 2");
    return audit_thresholds(n, d, theta, constants);
}

std::uint32_t default_max_rounds(const ThresholdSet& t) {
    return std::max<std::uint32_t>(50, 10 * t.a_omega_prime_ceil);
}

namespace {

// DFS path enumeration with the start vertex as the path minimum; a cycle
// is recorded when the walk returns to the start, once per direction via
// the second-vs-last tie-break.
void cycles_from(const Graph& g, Vertex start, std::uint32_t max_vertices,
                 std::vector<std::vector<Vertex>>& out, std::vector<bool>& on_path) {
    std::vector<Vertex> path{start};
    // the explicit stack holds (vertex, next neighbour index to try)
    std::vector<std::pair<Vertex, std::size_t>> stack{{start, 0}};
    on_path[start] = true;
    while (!stack.empty()) {
        auto& [x, it] = stack.back();
        const auto nb = g.neighbours(x);
        if (it >= nb.size()) {
            on_path[x] = false;
            path.pop_back();
            stack.pop_back();
            continue;
        }
        const Vertex y = nb[it++];
        if (y == start && path.size() >= 3) {
            if (path[1] < path.back()) out.emplace_back(path);
            continue;
        }
        if (y > start && !on_path[y] && path.size() < max_vertices) {
            on_path[y] = true;
            path.push_back(y);
            stack.emplace_back(y, 0);
        }
    }
}

} // namespace

std::vector<std::vector<Vertex>> enumerate_cycles_up_to(const Graph& g, std::uint32_t max_vertices) {
    std::vector<std::vector<Vertex>> cycles;
    if (max_vertices < 3) return cycles;
    std::vector<bool> on_path(g.order(), false);
    for (Vertex v = 0; v < g.order(); ++v)
        cycles_from(g, v, max_vertices, cycles, on_path);
    return cycles;
}

std::vector<std::vector<Vertex>> find_small_cycles(const Graph& g, std::uint32_t omega_ceil) {
    if (omega_ceil < 1) fail(Errc::precondition, "omega must be >= 1");
    return enumerate_cycles_up_to(g, 2 * omega_ceil + 1);
}

namespace {

constexpr std::size_t kWitnessCap = 10;

struct BfsScratch {
    std::vector<std::uint32_t> dist;
    std::vector<Vertex> parent;
    std::vector<Vertex> touched;

    explicit BfsScratch(std::size_t n)
        : dist(n, kUnreached), parent(n, kNoVertex) {}

    static constexpr std::uint32_t kUnreached = static_cast<std::uint32_t>(-1);

    void reset() {
        for (Vertex v : touched) {
            dist[v] = kUnreached;
            parent[v] = kNoVertex;
        }
        touched.clear();
    }
};

// Multi-source BFS to a depth limit; `allowed` (when non-null) restricts
// the vertices the search may enter.
void bfs_limited(const Graph& g, const std::vector<Vertex>& sources, std::uint32_t max_depth,
                 const std::vector<bool>* allowed, BfsScratch& s) {
    s.reset();
    std::deque<Vertex> queue;
    for (Vertex v : sources) {
        if (s.dist[v] != BfsScratch::kUnreached) continue;
        if (allowed && !(*allowed)[v]) continue;
        s.dist[v] = 0;
        s.touched.push_back(v);
        queue.push_back(v);
    }
    while (!queue.empty()) {
        const Vertex x = queue.front();
        queue.pop_front();
        if (s.dist[x] == max_depth) continue;
        for (Vertex y : g.neighbours(x)) {
            if (s.dist[y] != BfsScratch::kUnreached) continue;
            if (allowed && !(*allowed)[y]) continue;
            s.dist[y] = s.dist[x] + 1;
            s.parent[y] = x;
            s.touched.push_back(y);
            queue.push_back(y);
        }
    }
}

std::vector<Vertex> path_from(const BfsScratch& s, Vertex endpoint) {
    std::vector<Vertex> path;
    for (Vertex x = endpoint; x != kNoVertex; x = s.parent[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

bool is_cycle_in_graph(const Graph& g, const std::vector<Vertex>& cycle) {
    if (cycle.size() < 3) return false;
    std::vector<Vertex> sorted(cycle);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Vertex u = cycle[i];
        const Vertex v = cycle[(i + 1) % cycle.size()];
        if (u >= g.order() || v >= g.order() || !g.has_edge(u, v)) return false;
    }
    return true;
}

bool is_path_in_graph(const Graph& g, const std::vector<Vertex>& path) {
    if (path.empty()) return false;
    std::vector<Vertex> sorted(path);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (path[i] >= g.order() || path[i + 1] >= g.order() || !g.has_edge(path[i], path[i + 1]))
            return false;
    return true;
}

bool all_light(const Graph& g, const std::vector<Vertex>& vs, double ell) {
    for (Vertex v : vs)
        if (static_cast<double>(g.degree(v)) > ell) return false;
    return true;
}

bool disjoint(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    for (Vertex x : a)
        for (Vertex y : b)
            if (x == y) return false;
    return true;
}

bool contains(const std::vector<Vertex>& vs, Vertex v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

} // namespace

TypicalityReport check_typicality(const Graph& g, const ThresholdSet& t,
                                  const DegreeSequenceProfile& profile, double eta) {
    if (profile.n != g.order() || profile.m != g.size())
        fail(Errc::precondition, "profile does not match graph");
    if (!(eta > 0.0 && eta < 1.0)) fail(Errc::invalid_argument, "eta must lie in (0, 1)");

    TypicalityReport rep;
    rep.interpretation =
        "small path: at most " + std::to_string(t.small_cutoff()) +
        " vertices; (a) requires every path vertex light, (c)/(d) leave interior "
        "vertices unrestricted; little/heavy vertices are flagged at path endpoints "
        "and interiors alike";

    const std::uint32_t cutoff = t.small_cutoff();
    const std::uint32_t d_eff = profile.d_eff;
    const double ell = t.ell;
    const Vertex n = g.order();

    std::vector<bool> light(n, false);
    std::vector<Vertex> bad; // little or heavy
    std::vector<bool> is_bad(n, false);
    std::vector<std::string> bad_kind(n);
    for (Vertex v = 0; v < n; ++v) {
        const double deg = g.degree(v);
        light[v] = deg <= ell;
        if (light[v]) ++rep.light_count;
        else ++rep.heavy_count;
        if (g.degree(v) < d_eff) ++rep.little_count;
        if (!light[v] || g.degree(v) < d_eff) {
            bad.push_back(v);
            is_bad[v] = true;
            bad_kind[v] = !light[v] ? "heavy" : "little";
        }
    }

    rep.small_cycles = find_small_cycles(g, t.omega_ceil);
    const auto& cycles = rep.small_cycles;

    std::vector<bool> cycle_light(cycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i)
        cycle_light[i] = all_light(g, cycles[i], ell);

    // vertex -> indices of small light cycles through it
    std::vector<std::vector<std::uint32_t>> cycles_at(n);
    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (cycle_light[i])
            for (Vertex v : cycles[i]) cycles_at[v].push_back(static_cast<std::uint32_t>(i));

    BfsScratch scratch(n);

    // (a) vertex-disjoint small light cycles joined by a small light path
    for (std::size_t i = 0; i < cycles.size() && rep.a.witnesses.size() < kWitnessCap; ++i) {
        if (!cycle_light[i]) continue;
        bfs_limited(g, cycles[i], cutoff - 1, &light, scratch);
        for (std::size_t j = i + 1; j < cycles.size() && rep.a.witnesses.size() < kWitnessCap; ++j) {
            if (!cycle_light[j] || !disjoint(cycles[i], cycles[j])) continue;
            Vertex hit = kNoVertex;
            for (Vertex v : cycles[j]) {
                if (scratch.dist[v] != BfsScratch::kUnreached) {
                    if (hit == kNoVertex || scratch.dist[v] < scratch.dist[hit]) hit = v;
                }
            }
            if (hit == kNoVertex) continue;
            rep.a.pass = false;
            ++rep.a.violation_count;
            Witness w;
            w.cycle1 = cycles[i];
            w.cycle2 = cycles[j];
            w.path = path_from(scratch, hit);
            rep.a.witnesses.push_back(std::move(w));
        }
    }

    // (b) light vertex on two small light cycles
    for (Vertex v = 0; v < n && rep.b.witnesses.size() < kWitnessCap; ++v) {
        if (cycles_at[v].size() < 2) continue;
        rep.b.pass = false;
        ++rep.b.violation_count;
        Witness w;
        w.vertex = v;
        w.cycle1 = cycles[cycles_at[v][0]];
        w.cycle2 = cycles[cycles_at[v][1]];
        rep.b.witnesses.push_back(std::move(w));
    }

    // (c) small cycle containing, or small-path-connected to, a heavy or
    // little vertex. The path interior is unrestricted.
    if (!bad.empty() && !cycles.empty()) {
        bfs_limited(g, bad, cutoff - 1, nullptr, scratch);
        for (std::size_t i = 0; i < cycles.size() && rep.c.witnesses.size() < kWitnessCap; ++i) {
            Vertex hit = kNoVertex;
            for (Vertex v : cycles[i]) {
                if (scratch.dist[v] != BfsScratch::kUnreached) {
                    if (hit == kNoVertex || scratch.dist[v] < scratch.dist[hit]) hit = v;
                }
            }
            if (hit == kNoVertex) continue;
            rep.c.pass = false;
            ++rep.c.violation_count;
            Witness w;
            w.cycle1 = cycles[i];
            auto p = path_from(scratch, hit); // runs bad vertex -> cycle
            w.vertex = p.front();
            w.kind = bad_kind[w.vertex];
            std::reverse(p.begin(), p.end()); // cycle -> bad vertex
            w.path = std::move(p);
            rep.c.witnesses.push_back(std::move(w));
        }
    }

    // (d) pair of little-or-heavy vertices joined by a small path
    for (std::size_t i = 0; i < bad.size() && rep.d.witnesses.size() < kWitnessCap; ++i) {
        const Vertex v = bad[i];
        bfs_limited(g, {v}, cutoff - 1, nullptr, scratch);
        for (Vertex u : scratch.touched) {
            if (u <= v || !is_bad[u]) continue;
            rep.d.pass = false;
            ++rep.d.violation_count;
            Witness w;
            w.vertex = v;
            w.vertex2 = u;
            w.kind = bad_kind[v];
            w.kind2 = bad_kind[u];
            w.path = path_from(scratch, u);
            rep.d.witnesses.push_back(std::move(w));
            if (rep.d.witnesses.size() >= kWitnessCap) break;
        }
    }

    // (e) enough tree-regular vertices
    const TreeRegularResult tr = count_tree_regular(g, d_eff, t.h_ceil, t.omega_ceil, ell);
    rep.tree_regular_count = tr.count;
    rep.tree_regular_required = std::pow(static_cast<double>(n), 1.0 - eta);
    rep.e.pass = static_cast<double>(tr.count) >= rep.tree_regular_required;
    if (!rep.e.pass) rep.e.violation_count = 1;

    // (f) only meaningful for regular graphs
    rep.regular = profile.min_degree == profile.max_degree;
    if (rep.regular) {
        rep.f = check_regular_typicality(g, t.l1);
    } else {
        rep.f.applicable = false;
    }
    return rep;
}

TreeRegularResult count_tree_regular(const Graph& g, std::uint32_t d, std::uint32_t h,
                                     std::uint32_t omega, double ell) {
    TreeRegularResult res;
    const std::uint32_t radius = std::max(h, omega);
    BallWorkspace ws;
    for (Vertex v = 0; v < g.order(); ++v) {
        const BallView b = ball(g, v, radius, ws);
        if (!is_tree_like(b, d, h)) continue;
        if (!b.is_tree_at(omega)) continue;
        bool ok = true;
        for (std::size_t i = 0; i < b.members.size() && ok; ++i) {
            if (b.depth[i] > omega) continue;
            const std::uint32_t deg = b.degree_in_graph[i];
            if (deg < d || static_cast<double>(deg) > ell) ok = false;
        }
        if (!ok) continue;
        ++res.count;
        res.vertices.push_back(v);
    }
    return res;
}

PropertyVerdict check_regular_typicality(const Graph& g, double l1) {
    if (g.order() == 0) fail(Errc::precondition, "empty graph");
    const std::uint32_t d0 = g.degree(0);
    for (Vertex v = 1; v < g.order(); ++v)
        if (g.degree(v) != d0) fail(Errc::precondition, "graph is not regular");

    PropertyVerdict verdict;
    const double bound = 100.0 * l1;
    const std::uint32_t cutoff = bound < 1.0 ? 1u : static_cast<std::uint32_t>(std::ceil(bound));

    // Enumerate short cycles start vertex by start vertex; as each cycle is
    // found, look for an earlier one within the distance cutoff. The scan
    // stops once the witness list is full, which keeps the dense-cycle
    // failing case cheap; a passing graph pays for the full enumeration.
    std::vector<std::vector<std::uint32_t>> cycle_ids(g.order());
    std::vector<std::vector<Vertex>> found;
    BfsScratch scratch(g.order());
    std::vector<bool> on_path(g.order(), false);
    std::vector<std::vector<Vertex>> batch;

    for (Vertex start = 0; start < g.order() && verdict.witnesses.size() < kWitnessCap; ++start) {
        batch.clear();
        cycles_from(g, start, cutoff, batch, on_path);
        for (auto& cyc : batch) {
            if (verdict.witnesses.size() >= kWitnessCap) break;
            bfs_limited(g, cyc, cutoff, nullptr, scratch);
            std::uint32_t best_id = static_cast<std::uint32_t>(-1);
            Vertex best_hit = kNoVertex;
            for (Vertex v : scratch.touched) {
                for (std::uint32_t id : cycle_ids[v]) {
                    if (best_hit == kNoVertex || scratch.dist[v] < scratch.dist[best_hit]) {
                        best_hit = v;
                        best_id = id;
                    }
                }
            }
            if (best_hit != kNoVertex) {
                verdict.pass = false;
                ++verdict.violation_count;
                Witness w;
                w.cycle1 = found[best_id];
                w.cycle2 = cyc;
                w.path = path_from(scratch, best_hit);
                std::reverse(w.path.begin(), w.path.end());
                verdict.witnesses.push_back(std::move(w));
            }
            const std::uint32_t id = static_cast<std::uint32_t>(found.size());
            for (Vertex v : cyc) cycle_ids[v].push_back(id);
            found.push_back(std::move(cyc));
        }
    }
    return verdict;
}

bool violates_disjoint_cycle_pair(const Graph& g, const Witness& w, double ell, std::uint32_t cutoff) {
    if (!is_cycle_in_graph(g, w.cycle1) || !is_cycle_in_graph(g, w.cycle2)) return false;
    if (w.cycle1.size() > cutoff || w.cycle2.size() > cutoff) return false;
    if (!all_light(g, w.cycle1, ell) || !all_light(g, w.cycle2, ell)) return false;
    if (!disjoint(w.cycle1, w.cycle2)) return false;
    if (w.path.empty() || w.path.size() > cutoff) return false;
    if (!is_path_in_graph(g, w.path)) return false;
    if (!all_light(g, w.path, ell)) return false;
    return contains(w.cycle1, w.path.front()) && contains(w.cycle2, w.path.back());
}

bool violates_two_cycles_on_vertex(const Graph& g, const Witness& w, double ell, std::uint32_t cutoff) {
    if (!is_cycle_in_graph(g, w.cycle1) || !is_cycle_in_graph(g, w.cycle2)) return false;
    if (w.cycle1.size() > cutoff || w.cycle2.size() > cutoff) return false;
    if (!all_light(g, w.cycle1, ell) || !all_light(g, w.cycle2, ell)) return false;
    if (w.cycle1 == w.cycle2) return false;
    if (static_cast<double>(g.degree(w.vertex)) > ell) return false;
    return contains(w.cycle1, w.vertex) && contains(w.cycle2, w.vertex);
}

bool violates_cycle_near_bad_vertex(const Graph& g, const Witness& w, double ell,
                                    std::uint32_t d_eff, std::uint32_t cutoff) {
    if (!is_cycle_in_graph(g, w.cycle1) || w.cycle1.size() > cutoff) return false;
    const double deg = g.degree(w.vertex);
    const bool bad = deg > ell || g.degree(w.vertex) < d_eff;
    if (!bad) return false;
    if (contains(w.cycle1, w.vertex)) return true;
    if (w.path.empty() || w.path.size() > cutoff) return false;
    if (!is_path_in_graph(g, w.path)) return false;
    return contains(w.cycle1, w.path.front()) && w.path.back() == w.vertex;
}

bool violates_bad_pair(const Graph& g, const Witness& w, double ell,
                       std::uint32_t d_eff, std::uint32_t cutoff) {
    auto bad = [&](Vertex v) {
        return static_cast<double>(g.degree(v)) > ell || g.degree(v) < d_eff;
    };
    if (w.vertex == w.vertex2) return false;
    if (!bad(w.vertex) || !bad(w.vertex2)) return false;
    if (w.path.empty() || w.path.size() > cutoff) return false;
    if (!is_path_in_graph(g, w.path)) return false;
    return w.path.front() == w.vertex && w.path.back() == w.vertex2;
}

bool violates_close_cycle_pair(const Graph& g, const Witness& w, std::uint32_t cutoff) {
    if (!is_cycle_in_graph(g, w.cycle1) || !is_cycle_in_graph(g, w.cycle2)) return false;
    if (w.cycle1.size() > cutoff || w.cycle2.size() > cutoff) return false;
    if (w.cycle1 == w.cycle2) return false;
    // distance between the cycles, capped at cutoff + 1
    BfsScratch scratch(g.order());
    bfs_limited(g, w.cycle1, cutoff, nullptr, scratch);
    for (Vertex v : w.cycle2)
        if (scratch.dist[v] != BfsScratch::kUnreached) return true;
    return false;
}

ExplorationTree t_build(const Graph& g, Vertex v, std::uint32_t depth,
                        std::uint32_t d, const Tape& tape) {
    if (depth < 1) fail(Errc::precondition, "depth must be >= 1");
    if (d % 2 == 0) fail(Errc::precondition, "subset size must be odd");
    g.check_vertex(v);

    ExplorationTree tree;
    tree.root = v;
    std::vector<std::uint32_t> level_of(g.order(), static_cast<std::uint32_t>(-1));
    std::vector<Vertex> parent_of(g.order(), kNoVertex);
    level_of[v] = 0;
    tree.vertices.push_back(v);
    tree.level.push_back(0);

    std::vector<Vertex> frontier{v};
    std::vector<Vertex> scratch;
    for (std::uint32_t i = 0; i < depth; ++i) {
        const std::uint64_t round = depth - i;
        std::vector<Vertex> next;
        for (Vertex x : frontier) {
            const auto nb = g.neighbours(x);
            if (nb.empty()) continue;
            const std::uint32_t kx = k_of(d, static_cast<std::uint32_t>(nb.size()));
            tape.poll_subset(x, round, nb, kx, scratch);
            const std::vector<Vertex> poll = scratch;
            tree.polls.emplace_back(x, static_cast<std::uint32_t>(round), poll);
            for (Vertex y : poll) {
                if (y == parent_of[x]) continue;
                tree.edges.emplace_back(x, y);
                if (level_of[y] != static_cast<std::uint32_t>(-1)) {
                    ++tree.cycle_count;
                } else {
                    level_of[y] = i + 1;
                    parent_of[y] = x;
                    tree.vertices.push_back(y);
                    tree.level.push_back(i + 1);
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    return tree;
}

} // namespace lmp
