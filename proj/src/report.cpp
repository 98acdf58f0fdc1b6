#include "report.hpp"

#include <sstream>

namespace lmp {

namespace {

const char* condition_names[7] = {"i", "ii", "iii", "iv", "v", "vi", "vii"};

Json witness_json(const Witness& w) {
    Json j = Json::object();
    if (!w.cycle1.empty()) j["cycle1"] = w.cycle1;
    if (!w.cycle2.empty()) j["cycle2"] = w.cycle2;
    if (!w.path.empty()) j["path"] = w.path;
    if (w.vertex != kNoVertex) j["vertex"] = w.vertex;
    if (w.vertex2 != kNoVertex) j["vertex2"] = w.vertex2;
    if (!w.kind.empty()) j["kind"] = w.kind;
    if (!w.kind2.empty()) j["kind2"] = w.kind2;
    return j;
}

Json property_json(const PropertyVerdict& v) {
    Json j;
    j["pass"] = v.pass;
    j["applicable"] = v.applicable;
    j["violations"] = v.violation_count;
    Json ws = Json::array();
    for (const auto& w : v.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = ws;
    return j;
}

} // namespace

Json profile_json(const DegreeSequenceProfile& p) {
    Json j;
    j["n"] = p.n;
    j["m"] = p.m;
    j["min_degree"] = p.min_degree;
    j["max_degree"] = p.max_degree;
    j["avg_degree"] = p.theta;
    j["effective_min_degree"] = p.d_eff;
    j["kappa_hat"] = p.kappa_hat;
    j["gamma"] = p.gamma;
    j["c"] = p.c;
    j["kappa_min"] = p.kappa_min;
    j["connected"] = p.connected;
    Json hist = Json::array();
    for (const auto& [deg, cnt] : p.histogram) hist.push_back({deg, cnt});
    j["histogram"] = hist;
    Json conds;
    for (int i = 0; i < 7; ++i) {
        Json c;
        c["holds"] = p.conditions[i].holds;
        c["measured"] = p.conditions[i].measured;
        c["threshold"] = p.conditions[i].threshold;
        conds[condition_names[i]] = c;
    }
    j["conditions"] = conds;
    return j;
}

Json thresholds_json(const ThresholdSet& t) {
    Json j;
    j["omega"] = t.omega;
    j["omega_ceil"] = t.omega_ceil;
    j["ell"] = t.ell;
    j["h"] = t.h;
    j["h_ceil"] = t.h_ceil;
    j["h_nonpositive"] = t.h_nonpositive;
    j["omega_prime"] = t.omega_prime;
    j["omega_prime_ceil"] = t.omega_prime_ceil;
    j["L1"] = t.l1;
    j["A"] = t.a_const;
    j["A_omega_prime_ceil"] = t.a_omega_prime_ceil;
    j["nu"] = t.nu;
    j["K"] = t.k_population;
    j["small_cutoff"] = t.small_cutoff();
    j["constants"] = {{"C", t.constants.C},
                      {"B", t.constants.B},
                      {"eps1", t.constants.eps1},
                      {"eps", t.constants.eps}};
    return j;
}

Json typicality_json(const TypicalityReport& r) {
    Json j;
    j["interpretation"] = r.interpretation;
    Json verdicts;
    verdicts["a"] = property_json(r.a);
    verdicts["b"] = property_json(r.b);
    verdicts["c"] = property_json(r.c);
    verdicts["d"] = property_json(r.d);
    Json e = property_json(r.e);
    e["tree_regular_count"] = r.tree_regular_count;
    e["required"] = r.tree_regular_required;
    verdicts["e"] = e;
    verdicts["f"] = property_json(r.f);
    j["verdicts"] = verdicts;
    j["regular"] = r.regular;
    j["counts"] = {{"light", r.light_count},
                   {"heavy", r.heavy_count},
                   {"little", r.little_count},
                   {"small_cycles", r.small_cycles.size()}};
    Json cycles = Json::array();
    for (const auto& c : r.small_cycles) cycles.push_back(c);
    j["small_cycles"] = cycles;
    return j;
}

Json run_json(const ProtocolRun& r) {
    Json j;
    j["protocol"] = r.protocol == ProtocolKind::mp ? "mp" : "mmp";
    j["k"] = r.k;
    j["alpha"] = r.alpha;
    j["seed"] = r.seed;
    j["max_rounds"] = r.max_rounds;
    j["rounds_executed"] = r.rounds_executed;
    j["initial_red"] = r.initial_red;
    j["initial_majority"] = colour_name(r.initial_majority);
    j["initial_tie"] = r.initial_tie;
    if (r.consensus_time) j["consensus_time"] = *r.consensus_time;
    else j["consensus_time"] = nullptr;
    if (r.consensus_colour) j["consensus_colour"] = colour_name(*r.consensus_colour);
    else j["consensus_colour"] = nullptr;
    if (r.majority_correct) j["majority_correct"] = *r.majority_correct;
    else j["majority_correct"] = nullptr;
    j["red_counts"] = r.red_counts;
    if (!r.colourings.empty()) {
        Json states = Json::array();
        for (const auto& c : r.colourings) {
            std::string bits(c.size(), '0');
            for (std::size_t i = 0; i < c.size(); ++i)
                if (c[i] == kBlue) bits[i] = '1';
            states.push_back(bits);
        }
        j["colourings"] = states;
    }
    return j;
}

Json condition_json(const BiasCondition& c) {
    Json j;
    j["alpha"] = c.alpha;
    j["d"] = c.d;
    j["nu"] = c.nu;
    j["beta"] = c.beta;
    j["lhs"] = c.lhs;
    j["satisfied"] = c.satisfied;
    j["alpha_max"] = c.alpha_max;
    return j;
}

Json inspect_json(const Graph& g, const DegreeSequenceProfile& profile,
                  const ThresholdSet& t, const TypicalityReport& report) {
    Json j;
    j["n"] = g.order();
    j["m"] = g.size();
    j["profile"] = profile_json(profile);
    j["thresholds"] = thresholds_json(t);
    j["typicality"] = typicality_json(report);
    return j;
}

std::string recursion_csv(const RecursionTrace& trace) {
    std::ostringstream out;
    out << "t,p_t,bound_t,dominated\n";
    out.precision(17);
    for (std::size_t t = 0; t < trace.p.size(); ++t)
        out << t << ',' << trace.p[t] << ',' << trace.bound[t] << ','
            << (trace.dominated[t] ? 1 : 0) << '\n';
    return out.str();
}

} // namespace lmp
