#include "generators.hpp"

#include <algorithm>
#include <numeric>

namespace lmp {

namespace {

// One pairing attempt over the stub array. Pairs stubs sequentially, each
// time matching the next unmatched stub with a uniformly chosen remaining
// one. Aborts on the first loop or parallel edge. Swaps are undone by the
// caller so the stub array can be reused across attempts.
bool try_pairing(const std::vector<Vertex>& owner, std::vector<std::uint32_t>& stubs,
                 std::vector<std::vector<Vertex>>& adj, std::vector<Edge>& edges,
                 std::vector<Vertex>& touched, std::vector<std::pair<std::uint32_t, std::uint32_t>>& swaps,
                 Stream& draws) {
    const std::uint32_t total = static_cast<std::uint32_t>(stubs.size());
    edges.clear();
    touched.clear();
    swaps.clear();
    for (std::uint32_t i = 0; i < total; i += 2) {
        std::uint32_t j = i + 1 + static_cast<std::uint32_t>(draws.next_below(total - i - 1));
        if (j != i + 1) {
            std::swap(stubs[i + 1], stubs[j]);
            swaps.emplace_back(i + 1, j);
        }
        Vertex u = owner[stubs[i]];
        Vertex v = owner[stubs[i + 1]];
        if (u == v) return false;
        auto& nu = adj[u];
        if (std::find(nu.begin(), nu.end(), v) != nu.end()) return false;
        nu.push_back(v);
        adj[v].push_back(u);
        touched.push_back(u);
        touched.push_back(v);
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return true;
}

bool adjacency_connected(const std::vector<std::vector<Vertex>>& adj) {
    const std::size_t n = adj.size();
    if (n <= 1) return true;
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : adj[x]) {
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == n;
}

} // namespace

Graph gen_configuration(const GenSpec& spec, const Tape& tape) {
    const auto& degrees = spec.degrees;
    const std::uint32_t n = static_cast<std::uint32_t>(degrees.size());
    if (n == 0) fail(Errc::invalid_argument, "empty degree sequence");
    std::uint64_t degree_sum = 0;
    for (std::uint32_t d : degrees) {
        if (d < 1) fail(Errc::invalid_argument, "degree sequence entries must be >= 1");
        if (d >= n) fail(Errc::invalid_argument, "degree " + std::to_string(d) + " impossible on " +
                                                     std::to_string(n) + " vertices (simple graph)");
        degree_sum += d;
    }
    if (degree_sum % 2 != 0)
        fail(Errc::odd_degree_sum, "degree sequence has odd sum " + std::to_string(degree_sum));

    std::vector<Vertex> owner;
    owner.reserve(degree_sum);
    std::vector<std::uint32_t> stubs(degree_sum);
    for (Vertex v = 0; v < n; ++v)
        for (std::uint32_t i = 0; i < degrees[v]; ++i) owner.push_back(v);
    std::iota(stubs.begin(), stubs.end(), 0);

    std::vector<std::vector<Vertex>> adj(n);
    std::vector<Edge> edges;
    std::vector<Vertex> touched;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> swaps;

    for (std::uint32_t attempt = 0; attempt < spec.max_attempts; ++attempt) {
        Stream draws = tape.stream(Purpose::generation, attempt, 0);
        bool simple = try_pairing(owner, stubs, adj, edges, touched, swaps, draws);
        for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
            std::swap(stubs[it->first], stubs[it->second]);
        bool accept = simple && (!spec.require_connected || adjacency_connected(adj));
        if (accept) {
            std::sort(edges.begin(), edges.end());
            return Graph::build(n, edges);
        }
        for (Vertex v : touched) adj[v].clear();
    }
    fail(Errc::attempts_exhausted,
         "no simple" + std::string(spec.require_connected ? " connected" : "") +
             " pairing found in " + std::to_string(spec.max_attempts) + " attempts");
}

Graph gen_regular(std::uint32_t n, std::uint32_t d, const Tape& tape,
                  std::uint32_t max_attempts, bool require_connected) {
    if (d < 3 || d >= n)
        fail(Errc::invalid_argument, "regular generator requires 3 <= d < n");
    if ((static_cast<std::uint64_t>(n) * d) % 2 != 0)
        fail(Errc::odd_degree_sum, "n*d must be even");
    GenSpec spec;
    spec.family = Family::degree_sequence;
    spec.degrees.assign(n, d);
    spec.max_attempts = max_attempts;
    spec.require_connected = require_connected;
    return gen_configuration(spec, tape);
}

Graph gen_gnp(std::uint32_t n, double p, const Tape& tape) {
    if (!(p >= 0.0 && p <= 1.0)) fail(Errc::invalid_argument, "p must lie in [0, 1]");
    std::vector<Edge> edges;
    if (p > 0.0) {
        for (Vertex u = 0; u + 1 < n; ++u) {
            const std::uint64_t prefix = tape.key_prefix(Purpose::edge_inclusion, u);
            for (Vertex v = u + 1; v < n; ++v)
                if (p >= 1.0 || Tape::stream_at(prefix, v).next_unit() < p) edges.emplace_back(u, v);
        }
    }
    return Graph::build(n, edges);
}

Graph generate(const GenSpec& spec, const Tape& tape) {
    switch (spec.family) {
        case Family::degree_sequence:
            return gen_configuration(spec, tape);
        case Family::regular:
            return gen_regular(spec.n, spec.d, tape, spec.max_attempts, spec.require_connected);
        case Family::gnp:
            return gen_gnp(spec.n, spec.p, tape);
    }
    fail(Errc::internal, "unknown family");
}

} // namespace lmp
