#include "lmp/lmp.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "generators.hpp"
#include "graph.hpp"
#include "harness.hpp"
#include "protocol.hpp"
#include "report.hpp"
#include "structure.hpp"
#include "theory.hpp"
#include "verify.hpp"

using namespace lmp;

struct lmp_graph {
    Graph graph;
};

namespace {

thread_local std::string g_last_error;

lmp_status status_of(Errc code) {
    switch (code) {
        case Errc::invalid_argument:    return LMP_ERR_INVALID_ARGUMENT;
        case Errc::self_loop:           return LMP_ERR_SELF_LOOP;
        case Errc::duplicate_edge:      return LMP_ERR_DUPLICATE_EDGE;
        case Errc::vertex_out_of_range: return LMP_ERR_VERTEX_RANGE;
        case Errc::odd_degree_sum:      return LMP_ERR_ODD_DEGREE_SUM;
        case Errc::attempts_exhausted:  return LMP_ERR_ATTEMPTS_EXHAUSTED;
        case Errc::parse:               return LMP_ERR_PARSE;
        case Errc::io:                  return LMP_ERR_IO;
        case Errc::precondition:        return LMP_ERR_PRECONDITION;
        case Errc::no_effective_degree: return LMP_ERR_NO_EFFECTIVE_DEGREE;
        case Errc::state_space:         return LMP_ERR_STATE_SPACE;
        case Errc::config:              return LMP_ERR_CONFIG;
        case Errc::internal:            return LMP_ERR_INTERNAL;
    }
    return LMP_ERR_INTERNAL;
}

template <typename Fn>
lmp_status guarded(Fn&& fn) {
    try {
        fn();
        return LMP_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LMP_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return LMP_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

lmp_status require(bool ok, const char* message) {
    if (ok) return LMP_OK;
    g_last_error = message;
    return LMP_ERR_INVALID_ARGUMENT;
}

ThresholdConstants constants_of(const lmp_audit_params& p) {
    ThresholdConstants c;
    c.C = p.big_c;
    c.B = p.big_b;
    c.eps1 = p.eps1;
    c.eps = p.eps;
    return c;
}

std::string apply_overrides(const char* config_text, const char* out_dir_override) {
    std::string text = config_text;
    if (out_dir_override != nullptr && out_dir_override[0] != '\0')
        text += std::string("\nout_dir = ") + out_dir_override + "\n";
    return text;
}

} // namespace

extern "C" {

const char* lmp_version(void) { return "0.1.0"; }

const char* lmp_status_name(lmp_status status) {
    switch (status) {
        case LMP_OK:                      return "ok";
        case LMP_ERR_INVALID_ARGUMENT:    return "invalid_argument";
        case LMP_ERR_SELF_LOOP:           return "self_loop";
        case LMP_ERR_DUPLICATE_EDGE:      return "duplicate_edge";
        case LMP_ERR_VERTEX_RANGE:        return "vertex_out_of_range";
        case LMP_ERR_ODD_DEGREE_SUM:      return "odd_degree_sum";
        case LMP_ERR_ATTEMPTS_EXHAUSTED:  return "attempts_exhausted";
        case LMP_ERR_PARSE:               return "parse";
        case LMP_ERR_IO:                  return "io";
        case LMP_ERR_PRECONDITION:        return "precondition";
        case LMP_ERR_NO_EFFECTIVE_DEGREE: return "no_effective_degree";
        case LMP_ERR_STATE_SPACE:         return "state_space";
        case LMP_ERR_CONFIG:              return "config";
        case LMP_ERR_INTERNAL:            return "internal";
    }
    return "unknown";
}

const char* lmp_last_error(void) { return g_last_error.c_str(); }

void lmp_string_free(char* s) { delete[] s; }

void lmp_graph_free(lmp_graph* g) { delete g; }

lmp_status lmp_graph_build(uint32_t n, const uint32_t* endpoints, size_t edge_count,
                           lmp_graph** out) {
    if (auto st = require(out && (endpoints || edge_count == 0), "null argument")) return st;
    return guarded([&] {
        std::vector<Edge> edges;
        edges.reserve(edge_count);
        for (size_t i = 0; i < edge_count; ++i)
            edges.emplace_back(endpoints[2 * i], endpoints[2 * i + 1]);
        *out = new lmp_graph{Graph::build(n, edges)};
    });
}

lmp_status lmp_graph_read_file(const char* path, lmp_graph** out) {
    if (auto st = require(path && out, "null argument")) return st;
    return guarded([&] { *out = new lmp_graph{read_edge_list_file(path)}; });
}

lmp_status lmp_graph_write_file(const lmp_graph* g, const char* path) {
    if (auto st = require(g && path, "null argument")) return st;
    return guarded([&] { write_edge_list_file(g->graph, path); });
}

lmp_status lmp_graph_order(const lmp_graph* g, uint32_t* out) {
    if (auto st = require(g && out, "null argument")) return st;
    *out = g->graph.order();
    return LMP_OK;
}

lmp_status lmp_graph_size(const lmp_graph* g, uint64_t* out) {
    if (auto st = require(g && out, "null argument")) return st;
    *out = g->graph.size();
    return LMP_OK;
}

lmp_status lmp_graph_degree(const lmp_graph* g, uint32_t v, uint32_t* out) {
    if (auto st = require(g && out, "null argument")) return st;
    return guarded([&] { *out = g->graph.degree(v); });
}

lmp_status lmp_graph_connected(const lmp_graph* g, int* out) {
    if (auto st = require(g && out, "null argument")) return st;
    *out = g->graph.connected() ? 1 : 0;
    return LMP_OK;
}

lmp_status lmp_gen_regular(uint32_t n, uint32_t d, uint64_t seed, uint32_t max_attempts,
                           int require_connected, lmp_graph** out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    return guarded([&] {
        *out = new lmp_graph{
            gen_regular(n, d, Tape(seed), max_attempts, require_connected != 0)};
    });
}

lmp_status lmp_gen_configuration(const uint32_t* degrees, uint32_t n, uint64_t seed,
                                 uint32_t max_attempts, int require_connected, lmp_graph** out) {
    if (auto st = require(degrees && out, "null argument")) return st;
    return guarded([&] {
        GenSpec spec;
        spec.family = Family::degree_sequence;
        spec.degrees.assign(degrees, degrees + n);
        spec.max_attempts = max_attempts;
        spec.require_connected = require_connected != 0;
        *out = new lmp_graph{gen_configuration(spec, Tape(seed))};
    });
}

lmp_status lmp_gen_gnp(uint32_t n, double p, uint64_t seed, lmp_graph** out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    return guarded([&] { *out = new lmp_graph{gen_gnp(n, p, Tape(seed))}; });
}

void lmp_audit_params_default(lmp_audit_params* params) {
    if (!params) return;
    params->c = 0.1;
    params->kappa_min = 0.25;
    params->big_c = 1.0;
    params->big_b = 1.0;
    params->eps1 = 0.02;
    params->eps = 0.1;
    params->eta = 0.5;
}

lmp_status lmp_inspect_json(const lmp_graph* g, const lmp_audit_params* params, char** json_out) {
    if (auto st = require(g && json_out, "null argument")) return st;
    lmp_audit_params defaults;
    lmp_audit_params_default(&defaults);
    const lmp_audit_params p = params ? *params : defaults;
    return guarded([&] {
        const DegreeSequenceProfile profile = degree_profile(g->graph, p.c, p.kappa_min);
        const ThresholdSet t =
            audit_thresholds(g->graph.order(), profile.d_eff, profile.theta, constants_of(p));
        const TypicalityReport rep = check_typicality(g->graph, t, profile, p.eta);
        *json_out = dup_string(inspect_json(g->graph, profile, t, rep).dump(2) + "\n");
    });
}

lmp_status lmp_thresholds(uint64_t n, uint32_t d, double theta, const lmp_audit_params* params,
                          lmp_threshold_set* out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    lmp_audit_params defaults;
    lmp_audit_params_default(&defaults);
    const lmp_audit_params p = params ? *params : defaults;
    return guarded([&] {
        const ThresholdSet t = thresholds(n, d, theta, constants_of(p));
        out->omega = t.omega;
        out->ell = t.ell;
        out->h = t.h;
        out->omega_prime = t.omega_prime;
        out->l1 = t.l1;
        out->a_const = t.a_const;
        out->k_population = t.k_population;
        out->nu = t.nu;
        out->omega_ceil = t.omega_ceil;
        out->h_ceil = t.h_ceil;
        out->omega_prime_ceil = t.omega_prime_ceil;
        out->a_omega_prime_ceil = t.a_omega_prime_ceil;
        out->h_nonpositive = t.h_nonpositive ? 1 : 0;
    });
}

lmp_status lmp_condition_check(double alpha, uint32_t d, double beta, lmp_condition* out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    return guarded([&] {
        const BiasCondition c = check_condition(alpha, d, beta);
        out->lhs = c.lhs;
        out->satisfied = c.satisfied ? 1 : 0;
        out->alpha_max = c.alpha_max;
        out->nu = c.nu;
    });
}

lmp_status lmp_recursion_csv(double alpha, uint32_t d, double beta, uint32_t t_max,
                             char** csv_out) {
    if (auto st = require(csv_out != nullptr, "null argument")) return st;
    return guarded([&] {
        if (d < 5) fail(Errc::precondition, "recursion requires d >= 5");
        check_condition(alpha, d, beta); // validates alpha/beta ranges
        const RecursionTrace tr = recursion_trace(alpha, (d - 1) / 2, t_max);
        *csv_out = dup_string(recursion_csv(tr));
    });
}

lmp_status lmp_simulate_json(const lmp_graph* g, const lmp_sim_params* params, char** json_out) {
    if (auto st = require(g && params && json_out, "null argument")) return st;
    return guarded([&] {
        RunOptions options;
        options.record_colourings = params->record_colourings != 0;
        if (params->max_rounds > 0) {
            options.max_rounds = params->max_rounds;
        } else {
            const DegreeSequenceProfile profile = degree_profile(g->graph);
            options.max_rounds = default_max_rounds(
                audit_thresholds(g->graph.order(), profile.d_eff, profile.theta));
        }
        if (params->scope_radius >= 0) {
            options.scope_root = params->scope_root;
            options.scope_radius = static_cast<std::uint32_t>(params->scope_radius);
        }
        const ProtocolKind kind = params->protocol == 0 ? ProtocolKind::mp : ProtocolKind::mmp;
        const ProtocolRun r =
            run(g->graph, kind, params->k, params->alpha, Tape(params->seed), options);
        *json_out = dup_string(run_json(r).dump(2) + "\n");
    });
}

lmp_status lmp_campaign_run(const char* config_text, const char* out_dir_override,
                            char** summary_json_out) {
    if (auto st = require(config_text && summary_json_out, "null argument")) return st;
    return guarded([&] {
        const ExperimentConfig config =
            ExperimentConfig::from_text(apply_overrides(config_text, out_dir_override));
        const CampaignReport report = run_campaign(config);
        emit_report(report, "both", config.out_dir);
        Json summary;
        summary["config_hash"] = report.hash;
        summary["out_dir"] = config.out_dir;
        summary["max_rounds"] = report.max_rounds_used;
        summary["alpha_max"] = report.alpha_max;
        Json aggs = Json::array();
        for (const auto& a : report.aggregates) {
            Json j;
            j["alpha"] = a.alpha;
            j["runs"] = a.runs;
            j["correct_fraction"] = a.correct_fraction;
            j["consensus"] = a.consensus;
            j["median_consensus_time"] = a.median_consensus_time;
            j["generation_failures"] = a.generation_failures;
            aggs.push_back(j);
        }
        summary["aggregates"] = aggs;
        *summary_json_out = dup_string(summary.dump(2) + "\n");
    });
}

lmp_status lmp_sweep_run(const char* config_text, const char* out_dir_override,
                         char** summary_json_out) {
    if (auto st = require(config_text && summary_json_out, "null argument")) return st;
    return guarded([&] {
        ExperimentConfig config =
            ExperimentConfig::from_text(apply_overrides(config_text, out_dir_override));
        config.csv_name = "sweep_runs.csv";
        config.json_name = "sweep.json";
        const CampaignReport report = sweep_alpha(config);
        emit_report(report, "both", config.out_dir);
        // curve file alongside the full records
        namespace fs = std::filesystem;
        const std::string curve_path = (fs::path(config.out_dir) / "sweep_curve.csv").string();
        std::ofstream curve(curve_path, std::ios::binary);
        if (!curve) fail(Errc::io, "cannot open '" + curve_path + "' for writing");
        curve << sweep_csv(report);
        Json summary;
        summary["config_hash"] = report.hash;
        summary["out_dir"] = config.out_dir;
        summary["alpha_max"] = report.alpha_max;
        summary["curve"] = curve_path;
        *summary_json_out = dup_string(summary.dump(2) + "\n");
    });
}

lmp_status lmp_verify_run(int id, char** report_out, int* failures_out) {
    if (auto st = require(report_out && failures_out, "null argument")) return st;
    return guarded([&] {
        std::vector<verify::CriterionResult> results;
        if (id == 0) {
            results = verify::run_all();
        } else {
            results.push_back(verify::run_criterion(id));
        }
        std::string text;
        int failures = 0;
        for (const auto& r : results) {
            text += (r.passed ? "[PASS]" : "[FAIL]");
            text += " criterion " + std::to_string(r.id) + " (" + r.name + "): " + r.details + "\n";
            if (!r.passed) ++failures;
        }
        *failures_out = failures;
        *report_out = dup_string(text);
    });
}

} // extern "C"
