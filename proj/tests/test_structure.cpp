#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "generators.hpp"
#include "protocol.hpp"
#include "structure.hpp"
#include "theory.hpp"
#include "verify.hpp"

using namespace lmp;

namespace {

std::vector<Vertex> canonical_cycle(std::vector<Vertex> cycle) {
    const auto min_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), min_it, cycle.end());
    if (cycle.size() > 2 && cycle[1] > cycle.back())
        std::reverse(cycle.begin() + 1, cycle.end());
    return cycle;
}

// Independent cycle oracle: try every vertex subset of size 3..max_len in
// every cyclic order and keep the ones whose edges all exist. Feasible
// for n <= 12.
std::set<std::vector<Vertex>> cycles_by_brute_force(const Graph& g, std::uint32_t max_len) {
    std::set<std::vector<Vertex>> found;
    const Vertex n = g.order();
    std::vector<Vertex> subset;
    auto consider = [&](const std::vector<Vertex>& vs) {
        std::vector<Vertex> order(vs.begin() + 1, vs.end());
        std::sort(order.begin(), order.end());
        do {
            std::vector<Vertex> cycle{vs[0]};
            cycle.insert(cycle.end(), order.begin(), order.end());
            bool ok = true;
            for (std::size_t i = 0; i < cycle.size() && ok; ++i)
                if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) ok = false;
            if (ok) found.insert(canonical_cycle(cycle));
        } while (std::next_permutation(order.begin(), order.end()));
    };
    std::function<void(Vertex, std::uint32_t)> rec = [&](Vertex next, std::uint32_t want) {
        if (subset.size() == want) {
            consider(subset);
            return;
        }
        for (Vertex v = next; v < n; ++v) {
            subset.push_back(v);
            rec(v + 1, want);
            subset.pop_back();
        }
    };
    for (std::uint32_t len = 3; len <= std::min<std::uint32_t>(max_len, n); ++len) rec(0, len);
    return found;
}

Graph small_random_graph(std::uint32_t n, double p, std::uint64_t seed) {
    Tape tape(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (tape.edge_included(u, v, p)) edges.emplace_back(u, v);
    return Graph::build(n, edges);
}

} // namespace

TEST_SUITE_BEGIN("structure");

TEST_CASE("thresholds: worked examples at n = 1e6, d = 5") {
    const ThresholdSet t = thresholds(1000000, 5, 5.0);
    CHECK(t.omega_prime == doctest::Approx(1.336).epsilon(1e-3));
    CHECK(t.omega_prime_ceil == 2);
    CHECK(t.h == doctest::Approx(0.736).epsilon(1e-3));
    CHECK(t.h_ceil == 1);
    CHECK_FALSE(t.h_nonpositive);
    CHECK(t.nu == 2);
    CHECK(t.a_const == doctest::Approx(1.1 / (std::log(2.0) / std::log(5.0))).epsilon(1e-12));
    CHECK(t.a_const == doctest::Approx(2.554).epsilon(1e-3));
    CHECK(t.k_population == tree_population(5, t.h_ceil));
}

TEST_CASE("thresholds: preconditions and clamping") {
    CHECK_THROWS_AS(thresholds(1000, 4, 5.0), Error);
    CHECK_THROWS_AS(thresholds(1000, 5, 1.5), Error);
    // tiny n with a dense average degree drives h below zero: flagged and
    // the integer form clamps to 1
    const ThresholdSet t = audit_thresholds(8, 5, 20.0);
    CHECK(t.h < 0.0);
    CHECK(t.h_nonpositive);
    CHECK(t.h_ceil == 1);
}

TEST_CASE("find_small_cycles: worked examples") {
    SUBCASE("triangle") {
        const Graph g = Graph::build(3, {{0, 1}, {1, 2}, {2, 0}});
        const auto cycles = find_small_cycles(g, 1);
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0].size() == 3);
    }
    SUBCASE("trees have no cycles") {
        const Graph g = Graph::build(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}});
        CHECK(find_small_cycles(g, 3).empty());
    }
    SUBCASE("5-cycle with a pendant path") {
        const Graph g = Graph::build(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {4, 5}, {5, 6}});
        const auto cycles = find_small_cycles(g, 2); // cutoff 5
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0].size() == 5);
    }
}

TEST_CASE("find_small_cycles agrees with brute force on graphs with n <= 12") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::uint32_t n = 8 + seed % 5;
        const Graph g = small_random_graph(n, 0.3, seed);
        for (std::uint32_t omega = 1; omega <= 3; ++omega) {
            const std::uint32_t cutoff = 2 * omega + 1;
            const auto mine = find_small_cycles(g, omega);
            std::set<std::vector<Vertex>> mine_canon;
            for (const auto& c : mine) mine_canon.insert(canonical_cycle(c));
            CHECK(mine_canon.size() == mine.size()); // each reported once
            CHECK(mine_canon == cycles_by_brute_force(g, cutoff));
        }
    }
}

TEST_CASE("typicality: two triangles sharing a light vertex fail (b) only") {
    const Graph g = verify::shared_vertex_triangles_instance();
    const DegreeSequenceProfile p = degree_profile(g);
    const ThresholdSet t = audit_thresholds(g.order(), p.d_eff, p.theta);
    const TypicalityReport rep = check_typicality(g, t, p);
    CHECK(rep.a.pass);
    CHECK_FALSE(rep.b.pass);
    CHECK(rep.c.pass);
    CHECK(rep.d.pass);
    CHECK(rep.e.pass);
    REQUIRE(!rep.b.witnesses.empty());
    CHECK(rep.b.witnesses.front().vertex == 0); // the shared vertex
    CHECK(violates_two_cycles_on_vertex(g, rep.b.witnesses.front(), t.ell, t.small_cutoff()));
}

TEST_CASE("typicality: little vertex next to the only small cycle fails (c) only") {
    const Graph g = verify::little_vertex_instance();
    const DegreeSequenceProfile p = degree_profile(g);
    const ThresholdSet t = audit_thresholds(g.order(), p.d_eff, p.theta);
    const TypicalityReport rep = check_typicality(g, t, p);
    CHECK(p.d_eff == 3);
    CHECK(rep.small_cycles.size() == 1);
    CHECK(rep.a.pass);
    CHECK(rep.b.pass);
    CHECK_FALSE(rep.c.pass);
    CHECK(rep.d.pass);
    CHECK(rep.e.pass);
    REQUIRE(!rep.c.witnesses.empty());
    const Witness& w = rep.c.witnesses.front();
    CHECK(w.vertex == 17); // the pendant little vertex
    CHECK(w.kind == "little");
    CHECK(violates_cycle_near_bad_vertex(g, w, t.ell, p.d_eff, t.small_cutoff()));
}

TEST_CASE("typicality: heavy pair joined by a short path fails (d)") {
    // two degree-21 hubs joined by an edge, padded with pendant paths of
    // length 2; at n = 82 the light threshold is about 19.4, so exactly
    // the hubs are heavy
    std::vector<Edge> edges;
    const Vertex h1 = 0, h2 = 1;
    edges.emplace_back(h1, h2);
    Vertex next = 2;
    for (Vertex hub : {h1, h2}) {
        for (int i = 0; i < 20; ++i) {
            edges.emplace_back(hub, next);
            edges.emplace_back(next, static_cast<Vertex>(next + 1));
            next += 2;
        }
    }
    const Graph g = Graph::build(next, edges);
    const DegreeSequenceProfile p = degree_profile(g);
    const ThresholdSet t = audit_thresholds(g.order(), p.d_eff, p.theta);
    REQUIRE(t.ell < 21.0);
    const TypicalityReport rep = check_typicality(g, t, p);
    CHECK_FALSE(rep.d.pass);
    REQUIRE(!rep.d.witnesses.empty());
    CHECK(violates_bad_pair(g, rep.d.witnesses.front(), t.ell, p.d_eff, t.small_cutoff()));
    // no cycles at all, so (a)-(c) hold
    CHECK(rep.a.pass);
    CHECK(rep.b.pass);
    CHECK(rep.c.pass);
}

TEST_CASE("every reported witness re-validates in isolation") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = gen_regular(600, 5, Tape(seed), 100000, true);
        const DegreeSequenceProfile p = degree_profile(g);
        const ThresholdSet t = thresholds(g.order(), p.d_eff, p.theta);
        const TypicalityReport rep = check_typicality(g, t, p);
        for (const Witness& w : rep.a.witnesses)
            CHECK(violates_disjoint_cycle_pair(g, w, t.ell, t.small_cutoff()));
        for (const Witness& w : rep.b.witnesses)
            CHECK(violates_two_cycles_on_vertex(g, w, t.ell, t.small_cutoff()));
        for (const Witness& w : rep.c.witnesses)
            CHECK(violates_cycle_near_bad_vertex(g, w, t.ell, p.d_eff, t.small_cutoff()));
        for (const Witness& w : rep.d.witnesses)
            CHECK(violates_bad_pair(g, w, t.ell, p.d_eff, t.small_cutoff()));
        if (rep.f.applicable) {
            const std::uint32_t f_cutoff =
                static_cast<std::uint32_t>(std::ceil(100.0 * t.l1));
            for (const Witness& w : rep.f.witnesses)
                CHECK(violates_close_cycle_pair(g, w, f_cutoff));
        }
    }
}

TEST_CASE("count_tree_regular: complete graph has none, tree root qualifies") {
    std::vector<Edge> k6;
    for (Vertex u = 0; u < 6; ++u)
        for (Vertex v = u + 1; v < 6; ++v) k6.emplace_back(u, v);
    const Graph complete = Graph::build(6, k6);
    CHECK(count_tree_regular(complete, 5, 1, 1, 100.0).count == 0);

    // 5-regular tree of depth 4: the root is tree-like to depth 2 and
    // compliant to depth 3
    std::vector<Edge> edges;
    std::vector<std::pair<Vertex, std::uint32_t>> frontier{{0, 0}};
    Vertex next_id = 1;
    std::size_t head = 0;
    while (head < frontier.size()) {
        const auto [v, dv] = frontier[head++];
        if (dv == 4) continue;
        const std::uint32_t children = (v == 0) ? 5 : 4;
        for (std::uint32_t i = 0; i < children; ++i) {
            edges.emplace_back(v, next_id);
            frontier.emplace_back(next_id, dv + 1);
            ++next_id;
        }
    }
    const Graph tree = Graph::build(next_id, edges);
    const TreeRegularResult res = count_tree_regular(tree, 5, 2, 3, 1e9);
    CHECK(res.count >= 1);
    CHECK(std::find(res.vertices.begin(), res.vertices.end(), 0) != res.vertices.end());
    // counted vertices are tree-like by construction of the check
    for (Vertex v : res.vertices) CHECK(is_tree_like(ball(tree, v, 2), 5, 2));
}

TEST_CASE("count_tree_regular on a random 5-regular graph (measured band)") {
    // h = 1, omega = 3 as the audit would use at n = 1e4; at this size
    // roughly thirty percent of vertices root a tree 3-ball (short cycles
    // are dense), far from the asymptotic near-n count.
    const Graph g = gen_regular(10000, 5, Tape(321), 20000, true);
    const ThresholdSet t = thresholds(g.order(), 5, 5.0);
    const TreeRegularResult res = count_tree_regular(g, 5, 1, 3, t.ell);
    CHECK(res.count >= 1500);
    CHECK(res.count <= 5000);
}

TEST_CASE("check_regular_typicality: far cycles pass, touching cycles fail") {
    SUBCASE("two triangles joined by a path longer than the cutoff") {
        // L1 such that 100*L1 ~ 4; path length 30 >> 4
        std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}};
        Vertex a = 2;
        for (int i = 0; i < 30; ++i) {
            edges.emplace_back(a, static_cast<Vertex>(a + 1));
            ++a;
        }
        const Vertex t1 = a;
        edges.emplace_back(t1, static_cast<Vertex>(t1 + 1));
        edges.emplace_back(static_cast<Vertex>(t1 + 1), static_cast<Vertex>(t1 + 2));
        edges.emplace_back(t1, static_cast<Vertex>(t1 + 2));
        const Graph g = Graph::build(t1 + 3, edges);
        // not regular: the checker requires regularity
        CHECK_THROWS_AS(check_regular_typicality(g, 0.04), Error);
    }
    SUBCASE("regular graph: two triangles sharing an edge fail") {
        // K4 is 3-regular and contains many short cycle pairs at distance 0
        std::vector<Edge> k4;
        for (Vertex u = 0; u < 4; ++u)
            for (Vertex v = u + 1; v < 4; ++v) k4.emplace_back(u, v);
        const Graph g = Graph::build(4, k4);
        const PropertyVerdict verdict = check_regular_typicality(g, 0.05); // cutoff 5
        CHECK_FALSE(verdict.pass);
        REQUIRE(!verdict.witnesses.empty());
        CHECK(violates_close_cycle_pair(g, verdict.witnesses.front(), 5));
    }
    SUBCASE("large cycle graph passes: its only cycle is not small") {
        std::vector<Edge> edges;
        const Vertex n = 60;
        for (Vertex i = 0; i < n; ++i)
            edges.emplace_back(std::min<Vertex>(i, (i + 1) % n), std::max<Vertex>(i, (i + 1) % n));
        std::sort(edges.begin(), edges.end());
        const Graph g = Graph::build(n, edges);
        const PropertyVerdict verdict = check_regular_typicality(g, 0.04); // cutoff 4 < 60
        CHECK(verdict.pass);
    }
}

TEST_CASE("t_build: acyclic host gives zero cycles") {
    // 3-regular tree of depth 4
    std::vector<Edge> edges;
    std::vector<std::pair<Vertex, std::uint32_t>> frontier{{0, 0}};
    Vertex next_id = 1;
    std::size_t head = 0;
    while (head < frontier.size()) {
        const auto [v, dv] = frontier[head++];
        if (dv == 4) continue;
        const std::uint32_t children = (v == 0) ? 3 : 2;
        for (std::uint32_t i = 0; i < children; ++i) {
            edges.emplace_back(v, next_id);
            frontier.emplace_back(next_id, dv + 1);
            ++next_id;
        }
    }
    const Graph tree = Graph::build(next_id, edges);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const ExplorationTree t = t_build(tree, 0, 3, 3, Tape(seed));
        CHECK(t.cycle_count == 0);
        CHECK(t.edges.size() == t.vertices.size() - 1);
    }
}

TEST_CASE("t_build: K4 pigeonholes into revisits") {
    std::vector<Edge> k4;
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) k4.emplace_back(u, v);
    const Graph g = Graph::build(4, k4);
    const ExplorationTree t = t_build(g, 0, 2, 3, Tape(1));
    CHECK(t.cycle_count >= 1);
}

TEST_CASE("t_build: edge/vertex/cycle count identity") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = gen_regular(200, 5, Tape(seed), 100000, true);
        const ExplorationTree t = t_build(g, static_cast<Vertex>(seed % 200), 3, 5, Tape(seed));
        CHECK(t.edges.size() == t.vertices.size() - 1 + t.cycle_count);
    }
}

TEST_CASE("t_build polls match the protocol's subset draws at the same keys") {
    // average degree ~15, so polls of size 5 genuinely sample
    const Graph g = gen_gnp(300, 0.05, Tape(99));
    const Tape tape(4242);
    const std::uint32_t depth = 3;
    const ExplorationTree t = t_build(g, 17, depth, 5, tape);
    std::vector<Vertex> scratch;
    for (const auto& [x, round, poll] : t.polls) {
        const auto nb = g.neighbours(x);
        const std::uint32_t kx = k_of(5, static_cast<std::uint32_t>(nb.size()));
        tape.poll_subset(x, round, nb, kx, scratch);
        CHECK(scratch == poll);
    }
}

TEST_SUITE_END();
