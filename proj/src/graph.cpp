#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

namespace lmp {

Graph Graph::build(Vertex n, const std::vector<Edge>& edges) {
    std::vector<std::uint32_t> degree(n, 0);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            fail(Errc::vertex_out_of_range,
                 "edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v)
            fail(Errc::self_loop, "self-loop at vertex " + std::to_string(u));
        ++degree[u];
        ++degree[v];
    }

    Graph g;
    g.n_ = n;
    g.m_ = edges.size();
    g.offsets_.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    g.adjacency_.resize(2 * edges.size());

    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.adjacency_[cursor[u]++] = v;
        g.adjacency_[cursor[v]++] = u;
    }
    for (Vertex v = 0; v < n; ++v) {
        auto begin = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto end = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(begin, end);
        if (std::adjacent_find(begin, end) != end)
            fail(Errc::duplicate_edge, "duplicate edge at vertex " + std::to_string(v));
    }
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    auto nb = neighbours(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::uint32_t Graph::min_degree() const {
    if (n_ == 0) return 0;
    std::uint32_t d = degree(0);
    for (Vertex v = 1; v < n_; ++v) d = std::min(d, degree(v));
    return d;
}

std::uint32_t Graph::max_degree() const {
    std::uint32_t d = 0;
    for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    std::vector<bool> seen(n_, false);
    std::deque<Vertex> queue{0};
    seen[0] = true;
    std::uint64_t reached = 1;
    while (!queue.empty()) {
        Vertex x = queue.front();
        queue.pop_front();
        for (Vertex y : neighbours(x)) {
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                queue.push_back(y);
            }
        }
    }
    return reached == n_;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbours(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
    fail(Errc::parse, "edge list: " + what);
}

} // namespace

Graph read_edge_list(std::istream& in) {
    std::uint64_t n = 0, m = 0;
    std::string header;
    if (!std::getline(in, header)) parse_fail("missing header line");
    {
        std::istringstream hs(header);
        if (!(hs >> n >> m)) parse_fail("header must be 'n m'");
        std::string rest;
        if (hs >> rest) parse_fail("trailing tokens in header");
    }
    if (n > static_cast<std::uint64_t>(kNoVertex))
        parse_fail("vertex count too large");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t u = 0, v = 0;
        if (!(in >> u >> v))
            parse_fail("expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        if (u >= n || v >= n)
            fail(Errc::vertex_out_of_range,
                 "edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v) fail(Errc::self_loop, "self-loop at vertex " + std::to_string(u));
        if (u > v) parse_fail("edges must satisfy u < v: (" + std::to_string(u) + "," + std::to_string(v) + ")");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string tail;
    if (in >> tail) parse_fail("trailing content after " + std::to_string(m) + " edges");
    return Graph::build(static_cast<Vertex>(n), edges);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open '" + path + "' for reading");
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.order() << ' ' << g.size() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::io, "cannot open '" + path + "' for writing");
    write_edge_list(g, out);
    if (!out) fail(Errc::io, "write failed for '" + path + "'");
}

BallView ball(const Graph& g, Vertex v, std::uint32_t s) {
    BallWorkspace ws;
    return ball(g, v, s, ws);
}

BallView ball(const Graph& g, Vertex v, std::uint32_t s, BallWorkspace& ws) {
    g.check_vertex(v);
    if (ws.stamp.size() != g.order()) {
        ws.stamp.assign(g.order(), 0);
        ws.index.assign(g.order(), 0);
        ws.epoch = 0;
    }
    ++ws.epoch;
    if (ws.epoch == 0) { // stamp wrap-around
        ws.stamp.assign(g.order(), 0);
        ws.epoch = 1;
    }
    const std::uint32_t epoch = ws.epoch;
    auto in_ball = [&](Vertex x) { return ws.stamp[x] == epoch; };

    BallView b;
    b.root = v;
    b.radius = s;
    b.members.push_back(v);
    b.depth.push_back(0);
    b.parent.push_back(kNoVertex);
    ws.stamp[v] = epoch;
    ws.index[v] = 0;

    std::size_t head = 0;
    while (head < b.members.size()) {
        Vertex x = b.members[head];
        std::uint32_t dx = b.depth[head];
        ++head;
        if (dx == s) continue;
        for (Vertex y : g.neighbours(x)) {
            if (!in_ball(y)) {
                ws.stamp[y] = epoch;
                ws.index[y] = static_cast<std::uint32_t>(b.members.size());
                b.members.push_back(y);
                b.depth.push_back(dx + 1);
                b.parent.push_back(x);
            }
        }
    }

    b.degree_in_graph.reserve(b.members.size());
    for (Vertex x : b.members) b.degree_in_graph.push_back(g.degree(x));

    // Each induced edge belongs to radius max(depth(u), depth(v)).
    std::vector<std::uint64_t> edges_at(s + 1, 0);
    for (std::size_t i = 0; i < b.members.size(); ++i) {
        Vertex x = b.members[i];
        for (Vertex y : g.neighbours(x)) {
            if (x < y && in_ball(y)) {
                std::uint32_t r = std::max(b.depth[i], b.depth[ws.index[y]]);
                ++edges_at[r];
            }
        }
    }
    std::vector<std::uint64_t> members_at(s + 1, 0);
    for (std::uint32_t d : b.depth) ++members_at[d];

    b.edges_within.assign(s + 1, 0);
    b.members_within.assign(s + 1, 0);
    std::uint64_t ce = 0, cm = 0;
    for (std::uint32_t r = 0; r <= s; ++r) {
        ce += edges_at[r];
        cm += members_at[r];
        b.edges_within[r] = ce;
        b.members_within[r] = cm;
    }
    b.is_tree = b.is_tree_at(s);
    return b;
}

bool is_tree_like(const BallView& b, std::uint32_t d, std::uint32_t h) {
    if (h > b.radius) fail(Errc::precondition, "ball radius smaller than h");
    if (!b.is_tree_at(h)) return false;
    for (std::size_t i = 0; i < b.members.size(); ++i)
        if (b.depth[i] < h && b.degree_in_graph[i] != d) return false;
    return true;
}

bool is_compliant(const BallView& b, std::uint32_t d, std::uint32_t r) {
    if (r > b.radius) fail(Errc::precondition, "ball radius smaller than r");
    if (!b.is_tree_at(r)) return false;
    for (std::size_t i = 0; i < b.members.size(); ++i)
        if (b.depth[i] <= r && b.degree_in_graph[i] < d) return false;
    return true;
}

std::uint64_t DegreeSequenceProfile::count_with_degree(std::uint32_t j) const {
    for (const auto& [deg, cnt] : histogram)
        if (deg == j) return cnt;
    return 0;
}

DegreeSequenceProfile degree_profile(const Graph& g, double c, double kappa_min) {
    if (g.order() == 0) fail(Errc::precondition, "degree profile of empty graph");
    if (!(c > 0.0 && c < 0.125)) fail(Errc::invalid_argument, "c must lie in (0, 1/8)");
    if (!(kappa_min > 0.0 && kappa_min <= 1.0)) fail(Errc::invalid_argument, "kappa_min must lie in (0, 1]");

    DegreeSequenceProfile p;
    p.n = g.order();
    p.m = g.size();
    p.c = c;
    p.kappa_min = kappa_min;

    std::map<std::uint32_t, std::uint64_t> hist;
    for (Vertex v = 0; v < g.order(); ++v) ++hist[g.degree(v)];
    p.histogram.assign(hist.begin(), hist.end());
    p.min_degree = p.histogram.front().first;
    p.max_degree = p.histogram.back().first;

    const double n = static_cast<double>(p.n);
    p.theta = 2.0 * static_cast<double>(p.m) / n;
    p.gamma = std::cbrt(std::sqrt(std::log(n)) / p.theta);
    p.connected = g.connected();

    p.d_eff = 0;
    std::uint64_t n_deff = 0;
    bool found_d_eff = false;
    for (const auto& [deg, cnt] : p.histogram) {
        if (static_cast<double>(cnt) >= kappa_min * n) {
            p.d_eff = deg;
            n_deff = cnt;
            found_d_eff = true;
            break;
        }
    }
    if (!found_d_eff)
        fail(Errc::no_effective_degree,
             "no effective minimum degree: no degree attains a " +
                 std::to_string(kappa_min) + " fraction of vertices");
    p.kappa_hat = static_cast<double>(n_deff) / n;

    const double log_n = std::log(n);
    const double bad_cap = std::pow(n, c * (static_cast<double>(p.d_eff) - 1.0) / static_cast<double>(p.d_eff));

    std::uint64_t little = 0;
    for (const auto& [deg, cnt] : p.histogram)
        if (deg < p.d_eff) little += cnt;
    std::uint64_t upper_tail = 0;
    const double tail_from = p.gamma * p.theta;
    for (const auto& [deg, cnt] : p.histogram)
        if (static_cast<double>(deg) >= tail_from) upper_tail += cnt;

    p.conditions[0] = {p.theta <= std::sqrt(log_n), p.theta, std::sqrt(log_n)};
    p.conditions[1] = {p.min_degree >= 3, static_cast<double>(p.min_degree), 3.0};
    p.conditions[2] = {static_cast<double>(n_deff) >= kappa_min * n, static_cast<double>(n_deff), kappa_min * n};
    p.conditions[3] = {static_cast<double>(little) <= bad_cap, static_cast<double>(little), bad_cap};
    p.conditions[4] = {static_cast<double>(p.max_degree) <= bad_cap, static_cast<double>(p.max_degree), bad_cap};
    p.conditions[5] = {static_cast<double>(upper_tail) <= 10.0 * p.max_degree,
                       static_cast<double>(upper_tail), 10.0 * static_cast<double>(p.max_degree)};
    p.conditions[6] = {p.d_eff >= 5, static_cast<double>(p.d_eff), 5.0};
    return p;
}

} // namespace lmp
