#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "harness.hpp"
#include "structure.hpp"
#include "theory.hpp"

using namespace lmp;

namespace {

const char* kSmallCampaign = R"(
# small deterministic campaign
family = regular
n = 300
d = 5
k = 5
alpha = 0.05,0.1
seed = 42
runs = 6
max_attempts = 100000
audit = true
)";

} // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("config parsing: comments, overrides, validation errors") {
    const auto kv = parse_config_text("# comment line\n a = 1 \n\nb= x # trailing\n a = 2\n");
    CHECK(kv.at("a") == "2"); // later key wins
    CHECK(kv.at("b") == "x");

    CHECK_THROWS_AS(parse_config_text("novalue\n"), Error);

    auto code_of = [](const std::string& text) {
        try {
            ExperimentConfig::from_text(text);
            return Errc::internal;
        } catch (const Error& e) {
            return e.code();
        }
    };
    CHECK(code_of("family = regular\nn = 100\nd = 5\nalpha = 0.1\nruns = 0\n") == Errc::config);
    CHECK(code_of("family = regular\nn = 100\nd = 5\nruns = 5\n") == Errc::config); // no alpha
    CHECK(code_of("family = regular\nn = 100\nd = 5\nalpha = 0.7\nruns = 5\n") == Errc::config);
    CHECK(code_of("family = regular\nn = 100\nd = 5\nalpha = 0.1\nruns = 5\nk = 4\n") ==
          Errc::config);
    CHECK(code_of("family = nosuch\nalpha = 0.1\n") == Errc::config);
    CHECK(code_of("family = regular\nn = 100\nd = 5\nalpha = 0.1\nruns = 5\nwhatever = 1\n") ==
          Errc::config);
}

TEST_CASE("campaign runs are deterministic and reproducible from the config") {
    const ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    const CampaignReport r1 = run_campaign(config);
    const CampaignReport r2 = run_campaign(config);
    REQUIRE(r1.records.size() == 12);
    CHECK(campaign_csv(r1) == campaign_csv(r2));
    CHECK(campaign_json(r1).dump() == campaign_json(r2).dump());
    CHECK(r1.hash == r2.hash);
    CHECK(r1.hash == config_hash(config));
}

TEST_CASE("campaign aggregates are recomputable from the records") {
    const ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    const CampaignReport report = run_campaign(config);
    for (const AlphaAggregate& agg : report.aggregates) {
        std::uint32_t runs = 0, correct = 0, consensus = 0, failures = 0;
        for (const RunRecord& rec : report.records) {
            if (rec.alpha != agg.alpha) continue;
            ++runs;
            if (rec.generation_failed) ++failures;
            if (rec.consensus_time >= 0) ++consensus;
            if (rec.majority_correct && *rec.majority_correct) ++correct;
        }
        CHECK(agg.runs == runs);
        CHECK(agg.correct == correct);
        CHECK(agg.consensus == consensus);
        CHECK(agg.generation_failures == failures);
        CHECK(agg.correct_fraction ==
              doctest::Approx(static_cast<double>(correct) / runs).epsilon(1e-12));
    }
}

TEST_CASE("campaign records are ordered by (n, alpha, seed)") {
    const ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    const CampaignReport report = run_campaign(config);
    for (std::size_t i = 1; i < report.records.size(); ++i) {
        const auto& a = report.records[i - 1];
        const auto& b = report.records[i];
        CHECK(std::tie(a.n, a.alpha, a.seed) <= std::tie(b.n, b.alpha, b.seed));
    }
}

TEST_CASE("csv shape: hash line, fixed header, one row per run") {
    const ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    const CampaignReport report = run_campaign(config);
    const std::string csv = campaign_csv(report);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("# config_hash=", 0) == 0);
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "n,d,k,alpha,seed,consensus_time,consensus_colour,majority_correct,bound_Aomega,lower_h");
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == report.records.size());
}

TEST_CASE("runs outside the condition region are flagged, not failed") {
    ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    config.alpha_grid = {0.02, 0.4};
    config.runs = 3;
    config.audit = false;
    const CampaignReport report = run_campaign(config);
    for (const RunRecord& rec : report.records) {
        if (rec.alpha == 0.02) CHECK(rec.condition_satisfied);
        if (rec.alpha == 0.4) CHECK_FALSE(rec.condition_satisfied);
    }
    // correctness fraction is still reported for the unsatisfied alpha
    CHECK(report.aggregates[1].runs == 3);
}

TEST_CASE("a report with no records emits a header-only csv") {
    CampaignReport empty;
    empty.config = ExperimentConfig::from_text(kSmallCampaign);
    empty.hash = config_hash(empty.config);
    const std::string csv = campaign_csv(empty);
    std::istringstream in(csv);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 2); // hash comment + header, no data rows
}

TEST_CASE("empty campaign config is rejected; generation failure is recorded") {
    // max_attempts = 1 at n = 60, d = 5 fails generation almost surely
    ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    config.gen.n = 60;
    config.gen.max_attempts = 1;
    config.alpha_grid = {0.1};
    config.runs = 8;
    const CampaignReport report = run_campaign(config);
    std::uint32_t failures = 0;
    for (const RunRecord& rec : report.records) {
        if (rec.generation_failed) {
            ++failures;
            CHECK(rec.consensus_time == -2);
            CHECK(rec.consensus_colour.empty());
        }
    }
    CHECK(failures == report.aggregates[0].generation_failures);
    CHECK(failures > 0); // with one pairing attempt, most seeds fail
}

TEST_CASE("emit_report writes byte-identical files on re-emit") {
    const ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    CampaignReport report = run_campaign(config);
    const std::string dir = "harness_test_out";
    const auto paths1 = emit_report(report, "both", dir);
    REQUIRE(paths1.size() == 2);
    std::ostringstream first;
    for (const auto& p : paths1) {
        std::ifstream in(p, std::ios::binary);
        first << in.rdbuf();
    }
    const auto paths2 = emit_report(report, "both", dir);
    std::ostringstream second;
    for (const auto& p : paths2) {
        std::ifstream in(p, std::ios::binary);
        second << in.rdbuf();
    }
    CHECK(first.str() == second.str());
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep requires a sorted grid and carries the alpha_max marker") {
    ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    config.alpha_grid = {0.1, 0.05};
    CHECK_THROWS_AS(sweep_alpha(config), Error);

    config.alpha_grid = {0.05};
    const CampaignReport single = sweep_alpha(config);
    CHECK(single.aggregates.size() == 1);
    CHECK(single.alpha_max ==
          doctest::Approx(check_condition(0.01, 5, config.beta).alpha_max).epsilon(1e-12));
    const std::string curve = sweep_csv(single);
    CHECK(curve.find("alpha,runs,correct_fraction") != std::string::npos);
    CHECK(curve.find("# alpha_max=") != std::string::npos);
}

TEST_CASE("sweep: correctness falls off between small and near-critical bias") {
    ExperimentConfig config = ExperimentConfig::from_text(kSmallCampaign);
    config.gen.n = 400;
    config.alpha_grid = {0.02, 0.49};
    config.runs = 30;
    config.audit = false;
    const CampaignReport report = sweep_alpha(config);
    CHECK(report.aggregates[0].correct_fraction >= 0.9);
    CHECK(report.aggregates[1].correct_fraction <= 0.9);
}

TEST_CASE("planted_lower_bound: contract and edge cases") {
    // large enough that tree 3-balls (the compliance radius at this size)
    // are plentiful
    const Graph g = gen_regular(5000, 5, Tape(17), 100000, true);
    const ThresholdSet t = thresholds(g.order(), 5, 5.0);
    const TreeRegularResult tr = count_tree_regular(g, 5, 2, t.omega_ceil, t.ell);
    REQUIRE(tr.count > 0);
    const Vertex v = tr.vertices.front();

    SUBCASE("first blue round is at least h, over 100 tapes") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const PlantedResult p = planted_lower_bound(g, 5, 2, v, 0.1, Tape(seed), 5, 50);
            const std::uint32_t first_blue =
                p.first_blue_round ? *p.first_blue_round : p.rounds_executed + 1;
            CHECK(first_blue >= 2);
        }
    }
    SUBCASE("h = 0 is trivially satisfied") {
        const PlantedResult p = planted_lower_bound(g, 5, 0, v, 0.1, Tape(1), 5, 10);
        const std::uint32_t first_blue =
            p.first_blue_round ? *p.first_blue_round : p.rounds_executed + 1;
        CHECK(first_blue >= 0);
    }
    SUBCASE("planting the whole graph red never turns blue") {
        // radius beyond the diameter paints everything red; red is
        // absorbing, so the vertex never flips
        const PlantedResult p = planted_lower_bound(g, 5, 2, v, 0.1, Tape(2), 5, 30);
        (void)p;
        const Graph small = gen_regular(50, 5, Tape(3), 100000, true);
        const TreeRegularResult tr_small = count_tree_regular(small, 5, 1, 1, 1e9);
        REQUIRE(tr_small.count > 0);
        const Vertex w = tr_small.vertices.front();
        // radius 50 >> diameter
        const BallView everything = ball(small, w, 50);
        REQUIRE(everything.members.size() == small.order());
        Colouring all_red(small.order(), kRed);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Colouring next = step_mp(small, all_red, 5, Tape(seed), 1);
            CHECK(next == all_red);
        }
    }
    SUBCASE("non-tree-like vertex is rejected") {
        // a vertex on a triangle cannot be 5-tree-like to depth 2
        std::vector<Edge> k4;
        for (Vertex u = 0; u < 4; ++u)
            for (Vertex vv = u + 1; vv < 4; ++vv) k4.emplace_back(u, vv);
        const Graph complete = Graph::build(4, k4);
        CHECK_THROWS_AS(planted_lower_bound(complete, 3, 1, 0, 0.1, Tape(1), 3, 10), Error);
    }
}

TEST_SUITE_END();
