// Command-line front end for the local-majority consensus toolkit.
// Talks to the core library exclusively through the C API in lmp/lmp.h.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lmp/lmp.h"

namespace {

// Exit codes: 0 success, 2 configuration/usage error, 3 generation
// failure, 4 verification/assertion failure, 1 anything else.
constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGeneration = 3;
constexpr int kExitAssertion = 4;

int exit_code_for(lmp_status status) {
    switch (status) {
        case LMP_OK:
            return kExitOk;
        case LMP_ERR_CONFIG:
        case LMP_ERR_INVALID_ARGUMENT:
        case LMP_ERR_PRECONDITION:
            return kExitConfig;
        case LMP_ERR_ATTEMPTS_EXHAUSTED:
            return kExitGeneration;
        default:
            return kExitOther;
    }
}

int report_error(lmp_status status) {
    std::cerr << "error (" << lmp_status_name(status) << "): " << lmp_last_error() << "\n";
    return exit_code_for(status);
}

struct StringGuard {
    char* value = nullptr;
    ~StringGuard() { lmp_string_free(value); }
};

struct GraphGuard {
    lmp_graph* value = nullptr;
    ~GraphGuard() { lmp_graph_free(value); }
};

bool write_or_print(const std::string& out_path, const char* content) {
    if (out_path.empty()) {
        std::cout << content;
        return true;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return false;
    }
    out << content;
    return static_cast<bool>(out);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string env_or_empty(const char* name) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : std::string();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"local-majority consensus protocols on sparse graphs: generators, audits, "
                 "simulation and analytic bounds"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a graph and write it as an edge list");
    std::string family = "regular";
    std::uint32_t gen_n = 0, gen_d = 5, max_attempts = 1000;
    double gnp_p = 0.0;
    std::string degrees_csv;
    std::uint64_t gen_seed = 1;
    bool disconnected_ok = false;
    std::string gen_out;
    gen->add_option("--family", family, "regular | degree-sequence | gnp")
        ->check(CLI::IsMember({"regular", "degree-sequence", "gnp"}));
    gen->add_option("--n", gen_n, "vertex count (regular, gnp)");
    gen->add_option("--d", gen_d, "degree (regular)");
    gen->add_option("--p", gnp_p, "edge probability (gnp)");
    gen->add_option("--degrees", degrees_csv, "comma-separated degree list (degree-sequence)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--max-attempts", max_attempts, "pairing attempts before giving up");
    gen->add_flag("--allow-disconnected", disconnected_ok, "accept disconnected samples");
    gen->add_option("--out", gen_out, "output path")->required();

    // ---- inspect ----
    auto* inspect = app.add_subcommand("inspect", "audit a graph against the typicality properties");
    std::string inspect_graph, inspect_out;
    lmp_audit_params audit;
    lmp_audit_params_default(&audit);
    inspect->add_option("--graph", inspect_graph, "edge-list file")->required();
    inspect->add_option("--c", audit.c, "niceness exponent in (0, 1/8)");
    inspect->add_option("--kappa-min", audit.kappa_min, "effective-degree fraction");
    inspect->add_option("--C", audit.big_c, "small-cycle horizon factor");
    inspect->add_option("--B", audit.big_b, "light-degree factor");
    inspect->add_option("--eps1", audit.eps1, "regular-depth factor");
    inspect->add_option("--eps", audit.eps, "time-constant slack");
    inspect->add_option("--eta", audit.eta, "tree-regular proxy exponent");
    inspect->add_option("--out", inspect_out, "output path (stdout when omitted)");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "run a protocol and emit one JSON run record");
    std::string sim_graph, sim_protocol = "mp", sim_out;
    lmp_sim_params sim{};
    sim.k = 5;
    sim.alpha = 0.1;
    sim.seed = 1;
    sim.scope_radius = -1;
    simulate->add_option("--graph", sim_graph, "edge-list file")->required();
    simulate->add_option("--protocol", sim_protocol, "mp | mmp")
        ->check(CLI::IsMember({"mp", "mmp"}));
    simulate->add_option("--k", sim.k, "odd poll size");
    simulate->add_option("--alpha", sim.alpha, "initial red probability in (0, 1/2)");
    simulate->add_option("--seed", sim.seed, "randomness tape seed");
    simulate->add_option("--max-rounds", sim.max_rounds, "round cap (0 = auto)");
    simulate->add_option("--root", sim.scope_root, "scope root (mmp)");
    simulate->add_option("--radius", sim.scope_radius, "scope radius (mmp)");
    bool record_states = false;
    simulate->add_flag("--record-colourings", record_states, "include full per-round states");
    simulate->add_option("--out", sim_out, "output path (stdout when omitted)");

    // ---- recurse ----
    auto* recurse = app.add_subcommand("recurse", "evaluate the majority recursion and its bound");
    double rec_alpha = 0.05, rec_beta = 0.9;
    std::uint32_t rec_d = 5, rec_t = 20;
    std::string rec_out;
    recurse->add_option("--alpha", rec_alpha, "initial red probability")->required();
    recurse->add_option("--d", rec_d, "effective minimum degree (>= 5)");
    recurse->add_option("--beta", rec_beta, "condition target in (0, 1)");
    recurse->add_option("--T", rec_t, "rounds to trace");
    recurse->add_option("--out", rec_out, "output path (stdout when omitted)");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "run a campaign over an alpha grid from a config file");
    std::string sweep_config;
    std::string sweep_out_dir;
    sweep->add_option("--config", sweep_config, "flat key = value config file")->required();
    sweep->add_option("--out-dir", sweep_out_dir, "output directory override");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    int verify_id = 0;
    verify->add_option("--criterion", verify_id, "single criterion id (1-9); default all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    const std::string env_seed = env_or_empty("LMP_SEED");
    const std::string env_out_dir = env_or_empty("LMP_OUT_DIR");

    if (gen->parsed()) {
        if (!env_seed.empty()) gen_seed = std::strtoull(env_seed.c_str(), nullptr, 10);
        GraphGuard g;
        lmp_status st = LMP_OK;
        if (family == "regular") {
            st = lmp_gen_regular(gen_n, gen_d, gen_seed, max_attempts, disconnected_ok ? 0 : 1,
                                 &g.value);
        } else if (family == "gnp") {
            st = lmp_gen_gnp(gen_n, gnp_p, gen_seed, &g.value);
        } else {
            std::vector<std::uint32_t> degrees;
            std::stringstream ss(degrees_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) degrees.push_back(static_cast<std::uint32_t>(std::stoul(item)));
            if (degrees.empty()) {
                std::cerr << "error: --degrees required for degree-sequence family\n";
                return kExitConfig;
            }
            st = lmp_gen_configuration(degrees.data(), static_cast<std::uint32_t>(degrees.size()),
                                       gen_seed, max_attempts, disconnected_ok ? 0 : 1, &g.value);
        }
        if (st != LMP_OK) return report_error(st);
        if ((st = lmp_graph_write_file(g.value, gen_out.c_str())) != LMP_OK)
            return report_error(st);
        std::uint32_t n = 0;
        std::uint64_t m = 0;
        lmp_graph_order(g.value, &n);
        lmp_graph_size(g.value, &m);
        std::cout << "wrote " << gen_out << " (n=" << n << ", m=" << m << ")\n";
        return kExitOk;
    }

    if (inspect->parsed()) {
        GraphGuard g;
        lmp_status st = lmp_graph_read_file(inspect_graph.c_str(), &g.value);
        if (st != LMP_OK) return report_error(st);
        StringGuard json;
        if ((st = lmp_inspect_json(g.value, &audit, &json.value)) != LMP_OK)
            return report_error(st);
        return write_or_print(inspect_out, json.value) ? kExitOk : kExitOther;
    }

    if (simulate->parsed()) {
        if (!env_seed.empty()) sim.seed = std::strtoull(env_seed.c_str(), nullptr, 10);
        sim.protocol = sim_protocol == "mp" ? 0 : 1;
        sim.record_colourings = record_states ? 1 : 0;
        GraphGuard g;
        lmp_status st = lmp_graph_read_file(sim_graph.c_str(), &g.value);
        if (st != LMP_OK) return report_error(st);
        StringGuard json;
        if ((st = lmp_simulate_json(g.value, &sim, &json.value)) != LMP_OK)
            return report_error(st);
        return write_or_print(sim_out, json.value) ? kExitOk : kExitOther;
    }

    if (recurse->parsed()) {
        StringGuard csv;
        const lmp_status st = lmp_recursion_csv(rec_alpha, rec_d, rec_beta, rec_t, &csv.value);
        if (st != LMP_OK) return report_error(st);
        return write_or_print(rec_out, csv.value) ? kExitOk : kExitOther;
    }

    if (sweep->parsed()) {
        const std::string config_text = read_file(sweep_config);
        if (config_text.empty()) {
            std::cerr << "error: cannot read config file '" << sweep_config << "'\n";
            return kExitConfig;
        }
        std::string text = config_text;
        if (!env_seed.empty()) text += "\nseed = " + env_seed + "\n";
        const std::string out_dir = !sweep_out_dir.empty() ? sweep_out_dir : env_out_dir;
        StringGuard summary;
        const lmp_status st =
            lmp_sweep_run(text.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &summary.value);
        if (st != LMP_OK) return report_error(st);
        std::cout << summary.value;
        return kExitOk;
    }

    if (verify->parsed()) {
        StringGuard report;
        int failures = 0;
        const lmp_status st = lmp_verify_run(verify_id, &report.value, &failures);
        if (st != LMP_OK) return report_error(st);
        std::cout << report.value;
        if (failures > 0) {
            std::cout << failures << " criterion(s) failed\n";
            return kExitAssertion;
        }
        std::cout << "all criteria passed\n";
        return kExitOk;
    }

    return kExitConfig;
}
