#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "graph.hpp"
#include "protocol.hpp"
#include "report.hpp"
#include "structure.hpp"

namespace lmp {

// Flat key = value configuration, '#' comments, later keys override
// earlier ones (environment overrides are appended by the caller).
std::map<std::string, std::string> parse_config_text(const std::string& text);

struct ExperimentConfig {
    GenSpec gen;
    ProtocolKind protocol = ProtocolKind::mp;
    std::uint32_t k = 5;
    std::vector<double> alpha_grid;
    std::uint64_t master_seed = 1;
    std::uint32_t runs = 1;
    std::uint32_t max_rounds = 0; // 0 = auto: max(50, 10 ceil(A omega'))
    bool audit = true;
    bool record_colourings = false;
    double beta = 0.9;
    ThresholdConstants constants;
    double c = 0.1;
    double kappa_min = 0.25;
    double eta = 0.5;
    std::optional<Vertex> scope_root;
    std::optional<std::uint32_t> scope_radius;
    std::string out_dir = "out";
    std::string csv_name = "campaign.csv";
    std::string json_name = "campaign.json";
    std::uint32_t threads = 0; // 0 = hardware

    static ExperimentConfig from_text(const std::string& text);
    std::string canonical_text() const;
};

// FNV-1a over the canonical config text; stable across platforms.
std::string config_hash(const ExperimentConfig& config);

struct RunRecord {
    std::uint64_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::int64_t consensus_time = -1;   // -1 no consensus, -2 generation failed
    std::string consensus_colour;        // "blue"/"red"/""
    std::optional<bool> majority_correct;
    std::uint32_t bound_a_omega = 0;     // ceil(A omega')
    std::uint32_t lower_h = 0;           // ceil(h)
    bool generation_failed = false;
    bool condition_satisfied = false;
    std::vector<std::uint64_t> red_counts;
    bool typicality_a_to_d = false;
    bool typicality_f = false;
    bool audited = false;
};

struct AlphaAggregate {
    double alpha = 0.0;
    std::uint32_t runs = 0;
    std::uint32_t correct = 0;
    std::uint32_t consensus = 0;
    std::uint32_t generation_failures = 0;
    double correct_fraction = 0.0;
    double median_consensus_time = -1.0;
    double p90_consensus_time = -1.0;
    std::uint32_t max_consensus_time = 0;
    double typicality_pass_rate_a_to_d = -1.0; // -1 when not audited
    double typicality_pass_rate_f = -1.0;
};

struct CampaignReport {
    std::string hash;
    ExperimentConfig config;
    std::vector<RunRecord> records; // ordered by (n, alpha, seed)
    std::vector<AlphaAggregate> aggregates;
    std::uint32_t max_rounds_used = 0;
    std::uint32_t bound_a_omega = 0;
    std::uint32_t lower_h = 0;
    double alpha_max = 0.0; // analytical marker for (d, beta); 0 when d < 5
};

CampaignReport run_campaign(const ExperimentConfig& config);

// Empirical majority-correct fraction per alpha plus the analytical
// alpha_max marker; thin wrapper over run_campaign for sorted alpha grids.
CampaignReport sweep_alpha(const ExperimentConfig& config);

std::string campaign_csv(const CampaignReport& report);
Json campaign_json(const CampaignReport& report);
std::string sweep_csv(const CampaignReport& report);

// Writes CSV and JSON into config.out_dir, creating it when missing.
// Returns the file paths written.
std::vector<std::string> emit_report(const CampaignReport& report, const std::string& format,
                                     const std::string& out_dir);

// Plants an all-red ball of radius h around v (remaining vertices coloured
// per alpha), runs the plain protocol and reports the first round v turns
// blue. Locality makes the result at least h for every tape.
struct PlantedResult {
    std::uint32_t h = 0;
    std::optional<std::uint32_t> first_blue_round;
    std::uint32_t rounds_executed = 0;
};

PlantedResult planted_lower_bound(const Graph& g, std::uint32_t d, std::uint32_t h,
                                  Vertex v, double alpha, const Tape& tape,
                                  std::uint32_t k, std::uint32_t max_rounds);

} // namespace lmp
