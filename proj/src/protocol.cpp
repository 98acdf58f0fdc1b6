#include "protocol.hpp"

#include <algorithm>

namespace lmp {

std::uint32_t k_of(std::uint32_t k, std::uint32_t d_v) {
    if (k % 2 == 0) fail(Errc::precondition, "k must be odd");
    if (k < 1 || d_v < 1) fail(Errc::precondition, "k and d_v must be >= 1");
    const std::uint32_t largest_odd = 2 * ((d_v - 1) / 2) + 1;
    return std::min(k, largest_odd);
}

Colouring initial_colouring(Vertex n, double alpha, const Tape& tape) {
    if (!(alpha > 0.0 && alpha < 0.5))
        fail(Errc::precondition, "alpha must lie in (0, 1/2)");
    Colouring c(n, kBlue);
    for (Vertex v = 0; v < n; ++v)
        if (tape.initial_red(v, alpha)) c[v] = kRed;
    return c;
}

std::uint64_t red_count(const Colouring& c) {
    std::uint64_t r = 0;
    for (std::uint8_t b : c) r += (b == kRed);
    return r;
}

bool monochromatic(const Colouring& c) {
    if (c.empty()) return true;
    return std::all_of(c.begin(), c.end(), [&](std::uint8_t b) { return b == c.front(); });
}

MMPScope::MMPScope(const Graph& g, Vertex root, std::uint32_t radius)
    : root_(root), radius_(radius), tree_(ball(g, root, radius)), parent_of_(g.order(), kNotInTree) {
    if (!tree_.is_tree)
        fail(Errc::precondition, "scope ball G[" + std::to_string(root) + "," +
                                     std::to_string(radius) + "] is not a tree");
    for (std::size_t i = 0; i < tree_.members.size(); ++i)
        parent_of_[tree_.members[i]] = tree_.parent[i];
}

namespace {

// Count blue among the polled subset; `exclude` drops one sampled vertex
// from the sum (the parent rule). Returns the new colour against the
// unchanged threshold k(v)/2, i.e. blue iff blue_sum > k(v)/2.
inline std::uint8_t poll_vertex(const Graph& g, const Colouring& current, Vertex v,
                                std::uint32_t k, const Tape& tape, std::uint64_t t,
                                Vertex exclude, std::vector<Vertex>& scratch) {
    const auto nb = g.neighbours(v);
    const std::uint32_t d_v = static_cast<std::uint32_t>(nb.size());
    const std::uint32_t kv = k_of(k, d_v);
    std::uint32_t blue = 0;
    if (kv == d_v) {
        for (Vertex w : nb)
            if (w != exclude) blue += (current[w] == kBlue);
    } else {
        tape.poll_subset(v, t, nb, kv, scratch);
        for (Vertex w : scratch)
            if (w != exclude) blue += (current[w] == kBlue);
    }
    return 2 * blue > kv ? kBlue : kRed;
}

} // namespace

Colouring step_mp(const Graph& g, const Colouring& current, std::uint32_t k,
                  const Tape& tape, std::uint64_t t) {
    if (t < 1) fail(Errc::precondition, "steps are indexed from t = 1");
    if (current.size() != g.order()) fail(Errc::precondition, "colouring size mismatch");
    Colouring next(g.order());
    std::vector<std::uint32_t> scratch;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) == 0) { next[v] = current[v]; continue; }
        next[v] = poll_vertex(g, current, v, k, tape, t, kNoVertex, scratch);
    }
    return next;
}

Colouring step_mmp(const Graph& g, const Colouring& current, std::uint32_t k,
                   const MMPScope& scope, const Tape& tape, std::uint64_t t) {
    if (t < 1) fail(Errc::precondition, "steps are indexed from t = 1");
    if (current.size() != g.order()) fail(Errc::precondition, "colouring size mismatch");
    Colouring next(g.order());
    std::vector<std::uint32_t> scratch;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) == 0) { next[v] = current[v]; continue; }
        // The root carries no parent and updates as plain majority.
        const Vertex exclude = scope.in_tree(v) ? scope.parent(v) : kNoVertex;
        next[v] = poll_vertex(g, current, v, k, tape, t, exclude, scratch);
    }
    return next;
}

namespace {

std::uint8_t majority_of(const Colouring& c, bool& tie) {
    const std::uint64_t r = red_count(c);
    const std::uint64_t n = c.size();
    tie = (2 * r == n);
    return 2 * r < n ? kBlue : (2 * r > n ? kRed : kBlue);
}

} // namespace

ProtocolRun run(const Graph& g, ProtocolKind protocol, std::uint32_t k, double alpha,
                const Tape& tape, const RunOptions& options) {
    if (options.max_rounds < 1) fail(Errc::precondition, "max_rounds must be >= 1");

    std::optional<MMPScope> scope;
    if (protocol == ProtocolKind::mmp) {
        if (!options.scope_root || !options.scope_radius)
            fail(Errc::precondition, "mmp run requires a scope root and radius");
        scope.emplace(g, *options.scope_root, *options.scope_radius);
    }

    ProtocolRun result;
    result.protocol = protocol;
    result.k = k;
    result.alpha = alpha;
    result.seed = tape.seed();
    result.max_rounds = options.max_rounds;

    Colouring state = initial_colouring(g.order(), alpha, tape);
    result.initial_red = red_count(state);
    result.initial_majority = majority_of(state, result.initial_tie);
    result.red_counts.push_back(result.initial_red);
    if (options.record_colourings) result.colourings.push_back(state);

    auto note_consensus = [&](std::uint32_t t) {
        result.consensus_time = t;
        result.consensus_colour = state.empty() ? kBlue : state.front();
        result.majority_correct = !result.initial_tie && (*result.consensus_colour == result.initial_majority);
    };

    if (monochromatic(state)) note_consensus(0);

    for (std::uint32_t t = 1; t <= options.max_rounds && !result.consensus_time; ++t) {
        state = protocol == ProtocolKind::mp ? step_mp(g, state, k, tape, t)
                                             : step_mmp(g, state, k, *scope, tape, t);
        result.rounds_executed = t;
        result.red_counts.push_back(red_count(state));
        if (options.record_colourings) result.colourings.push_back(state);
        if (monochromatic(state)) note_consensus(t);
    }
    return result;
}

CoupledRun coupled_run(const Graph& g, std::uint32_t k, const MMPScope& scope,
                       double alpha, const Tape& tape, std::uint32_t t_max) {
    CoupledRun out;
    Colouring mp = initial_colouring(g.order(), alpha, tape);
    Colouring mmp = mp;
    out.mp_states.push_back(mp);
    out.mmp_states.push_back(mmp);
    for (std::uint32_t t = 1; t <= t_max; ++t) {
        mp = step_mp(g, mp, k, tape, t);
        mmp = step_mmp(g, mmp, k, scope, tape, t);
        out.mp_states.push_back(mp);
        out.mmp_states.push_back(mmp);
        for (Vertex x = 0; x < g.order(); ++x) {
            if (mmp[x] > mp[x]) {
                out.dominance = false;
                if (!out.first_violation) out.first_violation = {t, x};
            }
        }
    }
    return out;
}

StabilityVerdict local_stable_check(const StepFn& step, const Graph& g,
                                    const Colouring& colouring, std::uint32_t seeds) {
    std::vector<Vertex> candidates;
    for (Vertex v = 0; v < g.order(); ++v) {
        bool mono = true;
        for (Vertex w : g.neighbours(v))
            if (colouring[w] != colouring[v]) { mono = false; break; }
        if (mono) candidates.push_back(v);
    }
    StabilityVerdict verdict;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        Tape tape(s);
        Colouring next = step(g, colouring, tape, 1);
        for (Vertex v : candidates) {
            if (next[v] != colouring[v]) {
                verdict.stable = false;
                verdict.violating_vertex = v;
                verdict.violating_seed = s;
                return verdict;
            }
        }
    }
    return verdict;
}

const char* colour_name(std::uint8_t colour) {
    return colour == kBlue ? "blue" : "red";
}

} // namespace lmp
