#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "harness.hpp"
#include "protocol.hpp"
#include "structure.hpp"
#include "theory.hpp"

namespace lmp::verify {

namespace {

std::string fmt(double x, int precision = 6) {
    std::ostringstream out;
    out.precision(precision);
    out << x;
    return out.str();
}

// 1. Coupling dominance: exact pathwise domination of the modified
// protocol by the plain protocol on 100 random (graph, seed, scope)
// triples, every vertex, every round up to 50.
CriterionResult criterion_coupling() {
    CriterionResult res{1, "coupling dominance", false, ""};
    const double alphas[] = {0.05, 0.15, 0.25, 0.35, 0.45};
    std::uint32_t checked = 0, violations = 0;
    for (std::uint32_t i = 0; i < 100; ++i) {
        const std::uint32_t n = 50 + 2 * ((i * 7) % 76); // even sizes in [50, 200]
        const std::uint64_t seed = derive_run_seed(0xC0501, i);
        const Tape tape(seed);
        const Graph g = gen_regular(n, 5, tape, 20000, true);

        // scope: largest radius <= 2 whose ball is a tree, roots scanned
        // from a seed-dependent offset; radius 0 is always a valid tree.
        Stream pick = tape.stream(Purpose::scratch, 0, 0);
        const Vertex base = static_cast<Vertex>(pick.next_below(n));
        Vertex root = base;
        std::uint32_t radius = 0;
        for (std::uint32_t s = 2; s >= 1 && radius == 0; --s) {
            for (std::uint32_t off = 0; off < n; ++off) {
                const Vertex v = static_cast<Vertex>((base + off) % n);
                if (ball(g, v, s).is_tree) {
                    root = v;
                    radius = s;
                    break;
                }
            }
        }
        const MMPScope scope(g, root, radius);
        const std::uint32_t k = (i % 2 == 0) ? 3 : 5;
        const double alpha = alphas[i % 5];
        const CoupledRun coupled = coupled_run(g, k, scope, alpha, tape, 50);
        ++checked;
        if (!coupled.dominance) ++violations;
    }
    res.passed = checked == 100 && violations == 0;
    res.details = std::to_string(checked) + "/100 triples checked, " +
                  std::to_string(violations) + " dominance violations (exact, T=50)";
    return res;
}

// 2. Recursion exactness: closed-form values plus bound domination over
// an alpha grid whenever the bias condition holds.
CriterionResult criterion_recursion() {
    CriterionResult res{2, "recursion exactness", false, ""};
    const double eleven_sixteenth = recursion_step(0.5, 2);
    const bool exact_half = eleven_sixteenth == 11.0 / 16.0;

    const RecursionTrace tr = recursion_trace(0.05, 2, 5);
    const double p1 = tr.p[1];
    const bool p1_ok = std::abs(p1 - 0.01401875) <= 1e-9;

    std::uint32_t grid_pass = 0, grid_considered = 0;
    bool dominated_ok = true;
    for (int j = 1; j <= 100; ++j) {
        const double alpha = 0.5 * j / 101.0;
        const BiasCondition cond = check_condition(alpha, 5, 0.95);
        if (!cond.satisfied) continue;
        ++grid_considered;
        const RecursionTrace trace = recursion_trace(alpha, 2, 20);
        bool all = true;
        for (std::uint32_t t = 1; t <= 20; ++t)
            if (!trace.dominated[t]) all = false;
        if (all) ++grid_pass;
        else dominated_ok = false;
    }
    res.passed = exact_half && p1_ok && dominated_ok && grid_considered > 0;
    res.details = "recursion_step(1/2,2)=" + fmt(eleven_sixteenth, 17) +
                  (exact_half ? " (exact 11/16)" : " (MISMATCH)") + "; p_1(0.05)=" + fmt(p1, 10) +
                  "; dominated for " + std::to_string(grid_pass) + "/" +
                  std::to_string(grid_considered) + " admissible alphas, t<=20";
    return res;
}

// 3. Condition (1) arithmetic.
CriterionResult criterion_condition() {
    CriterionResult res{3, "condition (1) arithmetic", false, ""};
    const BiasCondition c1 = check_condition(0.05, 5, 0.6);
    const double alpha_max = check_condition(0.05, 5, 1.0).alpha_max;
    const double expected_alpha_max = (1.0 - std::sqrt(2.0 / 3.0)) / 2.0;
    const bool lhs_ok = std::abs(c1.lhs - 0.57) <= 1e-12;
    const bool amax_ok = std::abs(alpha_max - expected_alpha_max) <= 1e-12;
    res.passed = lhs_ok && amax_ok && c1.satisfied;
    res.details = "lhs(0.05,5)=" + fmt(c1.lhs, 15) + ", alpha_max(5,1)=" + fmt(alpha_max, 15) +
                  " vs (1-sqrt(2/3))/2=" + fmt(expected_alpha_max, 15);
    return res;
}

// 4. Complete-graph oracle agreement: Monte Carlo absorption frequency
// within 3 sigma of the exact chain.
CriterionResult criterion_oracle() {
    CriterionResult res{4, "complete-graph oracle agreement", false, ""};
    const std::uint32_t n = 11, k = 3;
    const double alpha = 0.1;
    const CompleteGraphChain chain = complete_graph_chain(n, k, alpha);

    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    const Graph g = Graph::build(n, edges);

    const std::uint32_t trials = 100000;
    std::uint32_t blue = 0, unresolved = 0;
    RunOptions options;
    options.max_rounds = 100000;
    for (std::uint32_t i = 0; i < trials; ++i) {
        const Tape tape(derive_run_seed(0xC0504, i));
        const ProtocolRun r = run(g, ProtocolKind::mp, k, alpha, tape, options);
        if (!r.consensus_time) ++unresolved;
        else if (*r.consensus_colour == kBlue) ++blue;
    }
    const double freq = static_cast<double>(blue) / trials;
    const double p = chain.absorb_blue_from_initial;
    const double sigma = std::sqrt(p * (1.0 - p) / trials);
    res.passed = unresolved == 0 && std::abs(freq - p) <= 3.0 * sigma;
    res.details = "exact=" + fmt(p, 8) + ", monte carlo=" + fmt(freq, 8) + " (" +
                  std::to_string(trials) + " seeds), |diff|=" + fmt(std::abs(freq - p), 4) +
                  " <= 3 sigma=" + fmt(3.0 * sigma, 4) +
                  (unresolved ? (", UNRESOLVED=" + std::to_string(unresolved)) : "");
    return res;
}

ExperimentConfig consensus_config(std::uint32_t n, std::uint32_t runs, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.gen.family = Family::regular;
    cfg.gen.n = n;
    cfg.gen.d = 5;
    cfg.gen.max_attempts = 20000;
    cfg.k = 5;
    cfg.alpha_grid = {0.02};
    cfg.runs = runs;
    cfg.master_seed = seed;
    cfg.audit = false;
    return cfg;
}

// 5. Desk-scale consensus: 100 seeds at n = 10^4 reach blue consensus
// within the round cap, and the median consensus time stays within the
// cap across three sizes.
CriterionResult criterion_consensus() {
    CriterionResult res{5, "desk-scale consensus", false, ""};
    const CampaignReport main_report = run_campaign(consensus_config(10000, 100, 0xC0505));
    const std::uint32_t cap = main_report.max_rounds_used;

    std::uint32_t good = 0;
    for (const RunRecord& r : main_report.records)
        if (!r.generation_failed && r.consensus_time >= 0 &&
            r.consensus_time <= static_cast<std::int64_t>(cap) && r.consensus_colour == "blue")
            ++good;

    const CampaignReport small = run_campaign(consensus_config(1000, 25, 0xC0515));
    const CampaignReport large = run_campaign(consensus_config(100000, 11, 0xC0525));
    const double med_small = small.aggregates[0].median_consensus_time;
    const double med_main = main_report.aggregates[0].median_consensus_time;
    const double med_large = large.aggregates[0].median_consensus_time;
    const bool medians_ok = med_small >= 0 && med_main >= 0 && med_large >= 0 &&
                            med_small <= small.max_rounds_used &&
                            med_main <= cap && med_large <= large.max_rounds_used;

    res.passed = good >= 95 && medians_ok;
    res.details = std::to_string(good) + "/100 blue consensus within cap " + std::to_string(cap) +
                  " at n=1e4; median times n=1e3:" + fmt(med_small, 3) + " n=1e4:" +
                  fmt(med_main, 3) + " n=1e5:" + fmt(med_large, 3) + " (caps " +
                  std::to_string(small.max_rounds_used) + "/" + std::to_string(cap) + "/" +
                  std::to_string(large.max_rounds_used) + ")";
    return res;
}

// 6. Planted lower bound: an all-red ball of radius 2 around a
// tree-regular vertex keeps it red through rounds 0 and 1, all 100 tapes.
CriterionResult criterion_planted() {
    CriterionResult res{6, "planted lower bound", false, ""};
    const Tape gen_tape(0xC0506);
    const Graph g = gen_regular(10000, 5, gen_tape, 20000, true);
    const ThresholdSet t = thresholds(g.order(), 5, 5.0);
    const std::uint32_t h = 2;
    const TreeRegularResult tr = count_tree_regular(g, 5, h, t.omega_ceil, t.ell);
    if (tr.count == 0) {
        res.details = "no tree-regular vertex found";
        return res;
    }
    const Vertex v = tr.vertices.front();
    std::uint32_t held = 0;
    for (std::uint32_t i = 0; i < 100; ++i) {
        const Tape tape(derive_run_seed(0xC0516, i));
        const PlantedResult p = planted_lower_bound(g, 5, h, v, 0.1, tape, 5, 50);
        const std::uint32_t first_blue = p.first_blue_round ? *p.first_blue_round : p.rounds_executed + 1;
        if (first_blue >= h) ++held;
    }
    res.passed = held == 100;
    res.details = std::to_string(held) + "/100 tapes kept vertex " + std::to_string(v) +
                  " red through rounds 0 and 1 (tree-regular pool: " + std::to_string(tr.count) + ")";
    return res;
}

// 7. Exploration-tree structure on G(n, p): at most one cycle per tree
// over 100 roots, and minimum degree Omega(log n), in >= 99/100 graphs.
CriterionResult criterion_exploration() {
    CriterionResult res{7, "exploration-tree structure", false, ""};
    const std::uint32_t n = 10000;
    const double p = 3.0 * std::log(static_cast<double>(n)) / n;
    const ThresholdSet t = thresholds(n, 5, 5.0);
    const std::uint32_t depth = t.a_omega_prime_ceil;
    const double c2 = 0.5;
    const double min_deg_needed = c2 * std::log(static_cast<double>(n));

    std::uint32_t good_seeds = 0, cycle_ok_seeds = 0, mindeg_ok_seeds = 0;
    std::uint64_t worst_cycles = 0;
    double total_mean_cycles = 0.0;
    for (std::uint32_t i = 0; i < 100; ++i) {
        const Tape tape(derive_run_seed(0xC0507, i));
        const Graph g = gen_gnp(n, p, tape);
        const bool mindeg_ok = static_cast<double>(g.min_degree()) >= min_deg_needed;

        Stream roots = tape.stream(Purpose::scratch, 1, 0);
        bool cycles_ok = true;
        std::uint64_t cycles_sum = 0;
        for (std::uint32_t j = 0; j < 100; ++j) {
            const Vertex root = static_cast<Vertex>(roots.next_below(n));
            const ExplorationTree tree = t_build(g, root, depth, 5, tape);
            cycles_sum += tree.cycle_count;
            worst_cycles = std::max(worst_cycles, tree.cycle_count);
            if (tree.cycle_count > 1) cycles_ok = false;
        }
        total_mean_cycles += static_cast<double>(cycles_sum) / 100.0;
        if (cycles_ok) ++cycle_ok_seeds;
        if (mindeg_ok) ++mindeg_ok_seeds;
        if (cycles_ok && mindeg_ok) ++good_seeds;
    }
    res.passed = good_seeds >= 99;
    res.details = std::to_string(good_seeds) + "/100 graph seeds satisfied both halves (need 99): " +
                  std::to_string(cycle_ok_seeds) + " had all 100 trees with cycle_count<=1 (depth " +
                  std::to_string(depth) + ", mean cycles/tree " + fmt(total_mean_cycles / 100.0, 3) +
                  ", worst " + std::to_string(worst_cycles) + "), " + std::to_string(mindeg_ok_seeds) +
                  " had min degree >= " + fmt(min_deg_needed, 3) + " (c2=0.5)";
    return res;
}

struct InstanceAudit {
    TypicalityReport report;
    DegreeSequenceProfile profile;
    ThresholdSet thresholds;
};

InstanceAudit audit_instance(const Graph& g) {
    InstanceAudit a;
    a.profile = degree_profile(g);
    a.thresholds = audit_thresholds(g.order(), a.profile.d_eff, a.profile.theta);
    a.report = check_typicality(g, a.thresholds, a.profile);
    return a;
}

// 8. Typicality audit: the hand-built instances fail exactly their
// property with re-validating witnesses, and random 5-regular graphs pass
// (a)-(d) and (f) in at least 90/100 seeds under default constants.
CriterionResult criterion_typicality() {
    CriterionResult res{8, "typicality audit", false, ""};

    const Graph g_b = shared_vertex_triangles_instance();
    const InstanceAudit audit_b = audit_instance(g_b);
    const bool b_exact = audit_b.report.a.pass && !audit_b.report.b.pass && audit_b.report.c.pass &&
                         audit_b.report.d.pass;
    const bool b_witness =
        !audit_b.report.b.witnesses.empty() &&
        violates_two_cycles_on_vertex(g_b, audit_b.report.b.witnesses.front(),
                                      audit_b.thresholds.ell, audit_b.thresholds.small_cutoff());

    const Graph g_c = little_vertex_instance();
    const InstanceAudit audit_c = audit_instance(g_c);
    const bool c_exact = audit_c.report.a.pass && audit_c.report.b.pass && !audit_c.report.c.pass &&
                         audit_c.report.d.pass;
    const bool c_witness =
        !audit_c.report.c.witnesses.empty() &&
        violates_cycle_near_bad_vertex(g_c, audit_c.report.c.witnesses.front(), audit_c.thresholds.ell,
                                       audit_c.profile.d_eff, audit_c.thresholds.small_cutoff());

    const bool instances_ok = b_exact && b_witness && c_exact && c_witness;

    std::uint32_t pass_ad = 0, pass_f = 0, pass_both = 0;
    for (std::uint32_t i = 0; i < 100; ++i) {
        const Tape tape(derive_run_seed(0xC0508, i));
        const Graph g = gen_regular(10000, 5, tape, 20000, true);
        const DegreeSequenceProfile profile = degree_profile(g);
        const ThresholdSet t = thresholds(g.order(), profile.d_eff, profile.theta);
        const TypicalityReport rep = check_typicality(g, t, profile);
        const bool ad = rep.all_pass_a_to_d();
        const bool f = rep.f.applicable && rep.f.pass;
        if (ad) ++pass_ad;
        if (f) ++pass_f;
        if (ad && f) ++pass_both;
    }

    res.passed = instances_ok && pass_both >= 90;
    res.details = std::string("hand instances: (b)-only=") + (b_exact ? "yes" : "NO") +
                  " witness-revalidates=" + (b_witness ? "yes" : "NO") + ", (c)-only=" +
                  (c_exact ? "yes" : "NO") + " witness-revalidates=" + (c_witness ? "yes" : "NO") +
                  "; random 5-regular n=1e4: " + std::to_string(pass_ad) + "/100 pass (a)-(d), " +
                  std::to_string(pass_f) + "/100 pass (f), " + std::to_string(pass_both) +
                  "/100 pass both (need 90)";
    return res;
}

// 9. Campaign determinism: re-running a campaign from the same config
// reproduces every record bit-exactly.
CriterionResult criterion_determinism() {
    CriterionResult res{9, "campaign determinism", false, ""};
    ExperimentConfig cfg;
    cfg.gen.family = Family::regular;
    cfg.gen.n = 500;
    cfg.gen.d = 5;
    cfg.gen.max_attempts = 20000;
    cfg.k = 5;
    cfg.alpha_grid = {0.05, 0.1};
    cfg.runs = 10;
    cfg.master_seed = 0xC0509;
    cfg.audit = true;

    const CampaignReport r1 = run_campaign(cfg);
    const CampaignReport r2 = run_campaign(cfg);
    const std::string csv1 = campaign_csv(r1);
    const std::string csv2 = campaign_csv(r2);
    const std::string json1 = campaign_json(r1).dump();
    const std::string json2 = campaign_json(r2).dump();
    res.passed = csv1 == csv2 && json1 == json2 && r1.hash == r2.hash;
    res.details = std::string("csv ") + (csv1 == csv2 ? "identical" : "DIFFERS") + ", json " +
                  (json1 == json2 ? "identical" : "DIFFERS") + ", config hash " + r1.hash;
    return res;
}

} // namespace

Graph shared_vertex_triangles_instance() {
    // s = 0 shared; triangles (s, a1, a2) and (s, b1, b2); a long cycle
    // a1 - p1 - ... - p6 - a2 keeps every degree >= 2 without adding a
    // small cycle. n = 11, ell ~ 5.75, d_eff = 2.
    const Vertex s = 0, a1 = 1, a2 = 2, b1 = 3, b2 = 4;
    std::vector<Edge> edges = {{s, a1}, {s, a2}, {a1, a2}, {s, b1}, {s, b2}, {b1, b2}};
    const Vertex p1 = 5;
    for (Vertex i = 0; i < 5; ++i) edges.emplace_back(p1 + i, p1 + i + 1);
    edges.emplace_back(a1, p1);
    edges.emplace_back(a2, p1 + 5);
    return Graph::build(11, edges);
}

Graph little_vertex_instance() {
    // Heawood graph on 0..13 (LCF [5,-5]^7): 3-regular, girth 6.
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 14; ++i) {
        edges.emplace_back(std::min<Vertex>(i, (i + 1) % 14), std::max<Vertex>(i, (i + 1) % 14));
        if (i % 2 == 0) {
            const Vertex j = (i + 5) % 14;
            edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // Planted triangle (a, b, c), pendant little vertex u - a, and two
    // anchor edges keeping b and c at degree 3. Anchors 0 and 7 sit at
    // Heawood distance 3, so no new cycle is small.
    const Vertex a = 14, b = 15, c = 16, u = 17;
    edges.emplace_back(a, b);
    edges.emplace_back(a, c);
    edges.emplace_back(b, c);
    edges.emplace_back(a, u);
    edges.emplace_back(0, b);
    edges.emplace_back(7, c);
    return Graph::build(18, edges);
}

std::vector<int> criterion_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9}; }

CriterionResult run_criterion(int id) {
    switch (id) {
        case 1: return criterion_coupling();
        case 2: return criterion_recursion();
        case 3: return criterion_condition();
        case 4: return criterion_oracle();
        case 5: return criterion_consensus();
        case 6: return criterion_planted();
        case 7: return criterion_exploration();
        case 8: return criterion_typicality();
        case 9: return criterion_determinism();
        default: fail(Errc::invalid_argument, "unknown criterion " + std::to_string(id));
    }
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> results;
    for (int id : criterion_ids()) results.push_back(run_criterion(id));
    return results;
}

} // namespace lmp::verify
