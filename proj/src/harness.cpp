#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "theory.hpp"

namespace lmp {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    fail(Errc::config, "config key '" + key + "': expected boolean, got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(Errc::config, "config key '" + key + "': expected number, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(Errc::config, "config key '" + key + "': expected integer, got '" + value + "'");
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) fail(Errc::config, "config key '" + key + "': empty list");
    return out;
}

} // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(Errc::config, "config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(Errc::config, "config line " + std::to_string(line_no) + ": empty key");
        kv[key] = value; // later keys override earlier ones
    }
    return kv;
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    const auto kv = parse_config_text(text);
    ExperimentConfig c;
    for (const auto& [key, value] : kv) {
        if (key == "family") {
            if (value == "regular") c.gen.family = Family::regular;
            else if (value == "degree-sequence") c.gen.family = Family::degree_sequence;
            else if (value == "gnp") c.gen.family = Family::gnp;
            else fail(Errc::config, "unknown family '" + value + "'");
        } else if (key == "n") {
            c.gen.n = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "d") {
            c.gen.d = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "p") {
            c.gen.p = parse_double(key, value);
        } else if (key == "degrees") {
            c.gen.degrees.clear();
            for (double x : parse_double_list(key, value))
                c.gen.degrees.push_back(static_cast<std::uint32_t>(x));
        } else if (key == "seed") {
            c.master_seed = parse_u64(key, value);
        } else if (key == "runs") {
            c.runs = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "protocol") {
            if (value == "mp") c.protocol = ProtocolKind::mp;
            else if (value == "mmp") c.protocol = ProtocolKind::mmp;
            else fail(Errc::config, "unknown protocol '" + value + "'");
        } else if (key == "k") {
            c.k = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "alpha") {
            c.alpha_grid = parse_double_list(key, value);
        } else if (key == "max_rounds") {
            c.max_rounds = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "max_attempts") {
            c.gen.max_attempts = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "require_connected") {
            c.gen.require_connected = parse_bool(key, value);
        } else if (key == "audit") {
            c.audit = parse_bool(key, value);
        } else if (key == "record_colourings") {
            c.record_colourings = parse_bool(key, value);
        } else if (key == "beta") {
            c.beta = parse_double(key, value);
        } else if (key == "C") {
            c.constants.C = parse_double(key, value);
        } else if (key == "B") {
            c.constants.B = parse_double(key, value);
        } else if (key == "eps1") {
            c.constants.eps1 = parse_double(key, value);
        } else if (key == "eps") {
            c.constants.eps = parse_double(key, value);
        } else if (key == "c") {
            c.c = parse_double(key, value);
        } else if (key == "kappa_min") {
            c.kappa_min = parse_double(key, value);
        } else if (key == "eta") {
            c.eta = parse_double(key, value);
        } else if (key == "scope_root") {
            c.scope_root = static_cast<Vertex>(parse_u64(key, value));
        } else if (key == "scope_radius") {
            c.scope_radius = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "out_dir") {
            c.out_dir = value;
        } else if (key == "csv_name") {
            c.csv_name = value;
        } else if (key == "json_name") {
            c.json_name = value;
        } else if (key == "threads") {
            c.threads = static_cast<std::uint32_t>(parse_u64(key, value));
        } else {
            fail(Errc::config, "unknown config key '" + key + "'");
        }
    }

    if (c.alpha_grid.empty()) fail(Errc::config, "config requires at least one alpha");
    for (double a : c.alpha_grid)
        if (!(a > 0.0 && a < 0.5)) fail(Errc::config, "alpha must lie in (0, 1/2)");
    if (c.runs == 0) fail(Errc::config, "runs must be >= 1 (empty seed list)");
    if (c.k % 2 == 0) fail(Errc::config, "k must be odd");
    if (!(c.beta > 0.0 && c.beta < 1.0)) fail(Errc::config, "beta must lie in (0, 1)");
    switch (c.gen.family) {
        case Family::regular:
            if (c.gen.n == 0 || c.gen.d == 0) fail(Errc::config, "regular family requires n and d");
            break;
        case Family::gnp:
            if (c.gen.n == 0) fail(Errc::config, "gnp family requires n");
            if (!(c.gen.p >= 0.0 && c.gen.p <= 1.0)) fail(Errc::config, "p must lie in [0, 1]");
            break;
        case Family::degree_sequence:
            if (c.gen.degrees.empty()) fail(Errc::config, "degree-sequence family requires degrees");
            break;
    }
    if (c.protocol == ProtocolKind::mmp && (!c.scope_root || !c.scope_radius))
        fail(Errc::config, "mmp protocol requires scope_root and scope_radius");
    return c;
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream out;
    out.precision(17);
    out << "family = "
        << (gen.family == Family::regular ? "regular"
                                          : gen.family == Family::gnp ? "gnp" : "degree-sequence")
        << '\n';
    if (gen.family == Family::degree_sequence) {
        out << "degrees = ";
        for (std::size_t i = 0; i < gen.degrees.size(); ++i)
            out << (i ? "," : "") << gen.degrees[i];
        out << '\n';
    } else {
        out << "n = " << gen.n << '\n';
    }
    if (gen.family == Family::regular) out << "d = " << gen.d << '\n';
    if (gen.family == Family::gnp) out << "p = " << gen.p << '\n';
    out << "max_attempts = " << gen.max_attempts << '\n';
    out << "require_connected = " << (gen.require_connected ? "true" : "false") << '\n';
    out << "protocol = " << (protocol == ProtocolKind::mp ? "mp" : "mmp") << '\n';
    out << "k = " << k << '\n';
    out << "alpha = ";
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) out << (i ? "," : "") << alpha_grid[i];
    out << '\n';
    out << "seed = " << master_seed << '\n';
    out << "runs = " << runs << '\n';
    out << "max_rounds = " << max_rounds << '\n';
    out << "audit = " << (audit ? "true" : "false") << '\n';
    out << "record_colourings = " << (record_colourings ? "true" : "false") << '\n';
    out << "beta = " << beta << '\n';
    out << "C = " << constants.C << '\n';
    out << "B = " << constants.B << '\n';
    out << "eps1 = " << constants.eps1 << '\n';
    out << "eps = " << constants.eps << '\n';
    out << "c = " << c << '\n';
    out << "kappa_min = " << kappa_min << '\n';
    out << "eta = " << eta << '\n';
    if (scope_root) out << "scope_root = " << *scope_root << '\n';
    if (scope_radius) out << "scope_radius = " << *scope_radius << '\n';
    return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
    const std::string text = config.canonical_text();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

namespace {

struct CampaignScale {
    std::uint32_t bound_a_omega = 1;
    std::uint32_t lower_h = 1;
    std::uint32_t max_rounds = 50;
    double alpha_max = 0.0;
};

CampaignScale campaign_scale(const ExperimentConfig& config) {
    CampaignScale s;
    std::uint64_t n = 0;
    std::uint32_t d = 0;
    double theta = 0.0;
    switch (config.gen.family) {
        case Family::regular:
            n = config.gen.n;
            d = config.gen.d;
            theta = d;
            break;
        case Family::gnp:
            n = config.gen.n;
            d = config.k; // protocol subset size plays the role of d
            theta = static_cast<double>(n - 1) * config.gen.p;
            break;
        case Family::degree_sequence: {
            n = config.gen.degrees.size();
            std::uint64_t sum = 0;
            std::map<std::uint32_t, std::uint64_t> hist;
            for (std::uint32_t deg : config.gen.degrees) {
                sum += deg;
                ++hist[deg];
            }
            theta = static_cast<double>(sum) / static_cast<double>(n);
            for (const auto& [deg, cnt] : hist) {
                if (static_cast<double>(cnt) >= config.kappa_min * static_cast<double>(n)) {
                    d = deg;
                    break;
                }
            }
            break;
        }
    }
    if (n >= 3 && d >= 1) {
        const ThresholdSet t = audit_thresholds(n, d, theta, config.constants);
        s.bound_a_omega = t.a_omega_prime_ceil;
        s.lower_h = t.h_ceil;
    }
    s.max_rounds = config.max_rounds > 0
                       ? config.max_rounds
                       : std::max<std::uint32_t>(50, 10 * s.bound_a_omega);
    if (d >= 5) s.alpha_max = check_condition(0.01, d, config.beta).alpha_max;
    return s;
}

template <typename Fn>
void parallel_runs(std::uint32_t count, std::uint32_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count == 0 ? 1u : count);
    if (threads <= 1) {
        for (std::uint32_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    pool.reserve(threads);
    for (std::uint32_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::uint32_t i = t; i < count; i += threads) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double quantile_of_sorted(const std::vector<std::uint32_t>& sorted, double q) {
    if (sorted.empty()) return -1.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return static_cast<double>(sorted[lo]) * (1.0 - frac) + static_cast<double>(sorted[hi]) * frac;
}

} // namespace

CampaignReport run_campaign(const ExperimentConfig& config) {
    CampaignReport report;
    report.config = config;
    report.hash = config_hash(config);

    const CampaignScale scale = campaign_scale(config);
    report.max_rounds_used = scale.max_rounds;
    report.bound_a_omega = scale.bound_a_omega;
    report.lower_h = scale.lower_h;
    report.alpha_max = scale.alpha_max;

    const std::uint32_t total = static_cast<std::uint32_t>(config.alpha_grid.size()) * config.runs;
    report.records.resize(total);

    parallel_runs(total, config.threads, [&](std::uint32_t idx) {
        const std::uint32_t alpha_idx = idx / config.runs;
        const double alpha = config.alpha_grid[alpha_idx];
        const std::uint64_t run_seed = derive_run_seed(config.master_seed, idx);
        const Tape tape(run_seed);

        RunRecord rec;
        rec.k = config.k;
        rec.alpha = alpha;
        rec.seed = run_seed;
        rec.bound_a_omega = scale.bound_a_omega;
        rec.lower_h = scale.lower_h;
        rec.d = config.gen.family == Family::regular ? config.gen.d : config.k;
        if (config.gen.family == Family::regular && config.gen.d >= 5) {
            rec.condition_satisfied = check_condition(alpha, config.gen.d, config.beta).satisfied;
        } else if (config.k >= 5) {
            rec.condition_satisfied = check_condition(alpha, config.k, config.beta).satisfied;
        }

        try {
            const Graph g = generate(config.gen, tape);
            rec.n = g.order();
            if (config.audit) {
                const DegreeSequenceProfile profile = degree_profile(g, config.c, config.kappa_min);
                const ThresholdSet t =
                    audit_thresholds(g.order(), profile.d_eff, profile.theta, config.constants);
                const TypicalityReport typ = check_typicality(g, t, profile, config.eta);
                rec.audited = true;
                rec.typicality_a_to_d = typ.all_pass_a_to_d();
                rec.typicality_f = typ.f.applicable ? typ.f.pass : true;
            }
            RunOptions options;
            options.max_rounds = scale.max_rounds;
            options.record_colourings = config.record_colourings;
            options.scope_root = config.scope_root;
            options.scope_radius = config.scope_radius;
            const ProtocolRun run_result = run(g, config.protocol, config.k, alpha, tape, options);
            rec.red_counts = run_result.red_counts;
            if (run_result.consensus_time) {
                rec.consensus_time = static_cast<std::int64_t>(*run_result.consensus_time);
                rec.consensus_colour = colour_name(*run_result.consensus_colour);
                rec.majority_correct = run_result.majority_correct;
            } else {
                rec.consensus_time = -1;
            }
        } catch (const Error& e) {
            if (e.code() == Errc::attempts_exhausted) {
                rec.generation_failed = true;
                rec.consensus_time = -2;
                rec.n = config.gen.family == Family::degree_sequence
                            ? config.gen.degrees.size()
                            : config.gen.n;
            } else {
                throw;
            }
        }
        report.records[idx] = std::move(rec);
    });

    std::stable_sort(report.records.begin(), report.records.end(),
                     [](const RunRecord& a, const RunRecord& b) {
                         return std::tie(a.n, a.alpha, a.seed) < std::tie(b.n, b.alpha, b.seed);
                     });

    for (double alpha : config.alpha_grid) {
        AlphaAggregate agg;
        agg.alpha = alpha;
        std::vector<std::uint32_t> times;
        std::uint32_t audited = 0, pass_ad = 0, pass_f = 0;
        for (const RunRecord& rec : report.records) {
            if (rec.alpha != alpha) continue;
            ++agg.runs;
            if (rec.generation_failed) {
                ++agg.generation_failures;
                continue;
            }
            if (rec.consensus_time >= 0) {
                ++agg.consensus;
                times.push_back(static_cast<std::uint32_t>(rec.consensus_time));
            }
            if (rec.majority_correct && *rec.majority_correct) ++agg.correct;
            if (rec.audited) {
                ++audited;
                if (rec.typicality_a_to_d) ++pass_ad;
                if (rec.typicality_f) ++pass_f;
            }
        }
        agg.correct_fraction =
            agg.runs > 0 ? static_cast<double>(agg.correct) / static_cast<double>(agg.runs) : 0.0;
        std::sort(times.begin(), times.end());
        agg.median_consensus_time = quantile_of_sorted(times, 0.5);
        agg.p90_consensus_time = quantile_of_sorted(times, 0.9);
        agg.max_consensus_time = times.empty() ? 0 : times.back();
        if (audited > 0) {
            agg.typicality_pass_rate_a_to_d = static_cast<double>(pass_ad) / audited;
            agg.typicality_pass_rate_f = static_cast<double>(pass_f) / audited;
        }
        report.aggregates.push_back(agg);
    }
    return report;
}

CampaignReport sweep_alpha(const ExperimentConfig& config) {
    if (!std::is_sorted(config.alpha_grid.begin(), config.alpha_grid.end()))
        fail(Errc::precondition, "alpha grid must be sorted ascending");
    return run_campaign(config);
}

std::string campaign_csv(const CampaignReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "# config_hash=" << report.hash << '\n';
    out << "n,d,k,alpha,seed,consensus_time,consensus_colour,majority_correct,bound_Aomega,lower_h\n";
    for (const RunRecord& r : report.records) {
        out << r.n << ',' << r.d << ',' << r.k << ',' << r.alpha << ',' << r.seed << ','
            << r.consensus_time << ',' << r.consensus_colour << ','
            << (r.majority_correct ? (*r.majority_correct ? "true" : "false") : "") << ','
            << r.bound_a_omega << ',' << r.lower_h << '\n';
    }
    return out.str();
}

namespace {

Json aggregate_json(const AlphaAggregate& a) {
    Json j;
    j["alpha"] = a.alpha;
    j["runs"] = a.runs;
    j["correct"] = a.correct;
    j["consensus"] = a.consensus;
    j["generation_failures"] = a.generation_failures;
    j["correct_fraction"] = a.correct_fraction;
    j["median_consensus_time"] = a.median_consensus_time;
    j["p90_consensus_time"] = a.p90_consensus_time;
    j["max_consensus_time"] = a.max_consensus_time;
    if (a.typicality_pass_rate_a_to_d >= 0.0) {
        j["typicality_pass_rate_a_to_d"] = a.typicality_pass_rate_a_to_d;
        j["typicality_pass_rate_f"] = a.typicality_pass_rate_f;
    }
    return j;
}

} // namespace

Json campaign_json(const CampaignReport& report) {
    Json j;
    j["config_hash"] = report.hash;
    j["config"] = report.config.canonical_text();
    j["environment"] = {{"seed", report.config.master_seed},
                        {"version", "0.1.0"},
                        {"config_hash", report.hash}};
    j["max_rounds"] = report.max_rounds_used;
    j["bound_Aomega"] = report.bound_a_omega;
    j["lower_h"] = report.lower_h;
    j["alpha_max"] = report.alpha_max;
    Json records = Json::array();
    for (const RunRecord& r : report.records) {
        Json rec;
        rec["n"] = r.n;
        rec["d"] = r.d;
        rec["k"] = r.k;
        rec["alpha"] = r.alpha;
        rec["seed"] = r.seed;
        rec["consensus_time"] = r.consensus_time;
        rec["consensus_colour"] = r.consensus_colour;
        if (r.majority_correct) rec["majority_correct"] = *r.majority_correct;
        else rec["majority_correct"] = nullptr;
        rec["bound_Aomega"] = r.bound_a_omega;
        rec["lower_h"] = r.lower_h;
        rec["generation_failed"] = r.generation_failed;
        rec["condition_satisfied"] = r.condition_satisfied;
        rec["red_counts"] = r.red_counts;
        if (r.audited) {
            rec["typicality_a_to_d"] = r.typicality_a_to_d;
            rec["typicality_f"] = r.typicality_f;
        }
        records.push_back(rec);
    }
    j["records"] = records;
    Json aggs = Json::array();
    for (const AlphaAggregate& a : report.aggregates) aggs.push_back(aggregate_json(a));
    j["aggregates"] = aggs;
    return j;
}

std::string sweep_csv(const CampaignReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "# config_hash=" << report.hash << '\n';
    out << "# alpha_max=" << report.alpha_max << '\n';
    out << "alpha,runs,correct_fraction,consensus,median_consensus_time,generation_failures\n";
    for (const AlphaAggregate& a : report.aggregates) {
        out << a.alpha << ',' << a.runs << ',' << a.correct_fraction << ',' << a.consensus << ','
            << a.median_consensus_time << ',' << a.generation_failures << '\n';
    }
    return out.str();
}

std::vector<std::string> emit_report(const CampaignReport& report, const std::string& format,
                                     const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) fail(Errc::io, "cannot create output directory '" + out_dir + "': " + ec.message());

    std::vector<std::string> written;
    auto write_file = [&](const std::string& name, const std::string& content) {
        const std::string path = (fs::path(out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) fail(Errc::io, "cannot open '" + path + "' for writing");
        out << content;
        if (!out) fail(Errc::io, "write failed for '" + path + "'");
        written.push_back(path);
    };

    if (format == "csv" || format == "both")
        write_file(report.config.csv_name, campaign_csv(report));
    if (format == "json" || format == "both")
        write_file(report.config.json_name, campaign_json(report).dump(2) + "\n");
    if (written.empty()) fail(Errc::invalid_argument, "unknown report format '" + format + "'");
    return written;
}

PlantedResult planted_lower_bound(const Graph& g, std::uint32_t d, std::uint32_t h,
                                  Vertex v, double alpha, const Tape& tape,
                                  std::uint32_t k, std::uint32_t max_rounds) {
    const BallView b = ball(g, v, h);
    if (!is_tree_like(b, d, h))
        fail(Errc::precondition, "vertex " + std::to_string(v) + " is not " + std::to_string(d) +
                                     "-tree-like to depth " + std::to_string(h));

    Colouring state = initial_colouring(g.order(), alpha, tape);
    for (Vertex x : b.members) state[x] = kRed;

    PlantedResult result;
    result.h = h;
    for (std::uint32_t t = 1; t <= max_rounds; ++t) {
        state = step_mp(g, state, k, tape, t);
        result.rounds_executed = t;
        if (state[v] == kBlue) {
            result.first_blue_round = t;
            break;
        }
    }
    return result;
}

} // namespace lmp
