// Exercises the shared-library C API end to end: handles, status codes,
// string ownership, and the JSON/CSV payloads the CLI depends on.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "lmp/lmp.h"

namespace {

struct Str {
    char* value = nullptr;
    ~Str() { lmp_string_free(value); }
    std::string str() const { return value ? std::string(value) : std::string(); }
};

struct G {
    lmp_graph* value = nullptr;
    ~G() { lmp_graph_free(value); }
};

} // namespace

TEST_SUITE_BEGIN("capi");

TEST_CASE("build, query and file round trip") {
    const uint32_t endpoints[] = {0, 1, 1, 2, 2, 0};
    G g;
    REQUIRE(lmp_graph_build(3, endpoints, 3, &g.value) == LMP_OK);
    uint32_t n = 0, deg = 0;
    uint64_t m = 0;
    CHECK(lmp_graph_order(g.value, &n) == LMP_OK);
    CHECK(lmp_graph_size(g.value, &m) == LMP_OK);
    CHECK(lmp_graph_degree(g.value, 1, &deg) == LMP_OK);
    CHECK(n == 3);
    CHECK(m == 3);
    CHECK(deg == 2);
    int connected = 0;
    CHECK(lmp_graph_connected(g.value, &connected) == LMP_OK);
    CHECK(connected == 1);

    const std::string path = "capi_roundtrip.txt";
    REQUIRE(lmp_graph_write_file(g.value, path.c_str()) == LMP_OK);
    G h;
    REQUIRE(lmp_graph_read_file(path.c_str(), &h.value) == LMP_OK);
    uint64_t m2 = 0;
    lmp_graph_size(h.value, &m2);
    CHECK(m2 == 3);
    std::filesystem::remove(path);
}

TEST_CASE("status codes carry error identity; message is thread-local") {
    const uint32_t loop[] = {1, 1};
    G g;
    CHECK(lmp_graph_build(2, loop, 1, &g.value) == LMP_ERR_SELF_LOOP);
    CHECK(std::strlen(lmp_last_error()) > 0);
    CHECK(std::string(lmp_status_name(LMP_ERR_SELF_LOOP)) == "self_loop");

    const uint32_t dup[] = {0, 1, 0, 1};
    CHECK(lmp_graph_build(2, dup, 2, &g.value) == LMP_ERR_DUPLICATE_EDGE);
    CHECK(lmp_graph_build(2, nullptr, 2, &g.value) == LMP_ERR_INVALID_ARGUMENT);
    CHECK(lmp_graph_read_file("no/such/file.txt", &g.value) == LMP_ERR_IO);
}

TEST_CASE("generators: determinism and parity errors through the C API") {
    G a, b;
    REQUIRE(lmp_gen_regular(100, 5, 7, 20000, 1, &a.value) == LMP_OK);
    REQUIRE(lmp_gen_regular(100, 5, 7, 20000, 1, &b.value) == LMP_OK);
    const std::string pa = "capi_a.txt", pb = "capi_b.txt";
    lmp_graph_write_file(a.value, pa.c_str());
    lmp_graph_write_file(b.value, pb.c_str());
    std::ifstream fa(pa), fb(pb);
    std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    std::filesystem::remove(pa);
    std::filesystem::remove(pb);

    G bad;
    CHECK(lmp_gen_regular(5, 3, 7, 1000, 1, &bad.value) == LMP_ERR_ODD_DEGREE_SUM);

    const uint32_t odd_degrees[] = {1, 1, 1};
    CHECK(lmp_gen_configuration(odd_degrees, 3, 7, 1000, 1, &bad.value) ==
          LMP_ERR_ODD_DEGREE_SUM);

    G gnp;
    REQUIRE(lmp_gen_gnp(50, 1.0, 3, &gnp.value) == LMP_OK);
    uint64_t m = 0;
    lmp_graph_size(gnp.value, &m);
    CHECK(m == 50ull * 49 / 2);
}

TEST_CASE("inspect json has the documented shape") {
    G g;
    REQUIRE(lmp_gen_regular(200, 5, 11, 20000, 1, &g.value) == LMP_OK);
    Str json;
    REQUIRE(lmp_inspect_json(g.value, nullptr, &json.value) == LMP_OK);
    const auto doc = nlohmann::json::parse(json.str());
    CHECK(doc.at("n") == 200);
    CHECK(doc.at("profile").at("effective_min_degree") == 5);
    CHECK(doc.at("profile").at("conditions").contains("vii"));
    CHECK(doc.at("thresholds").contains("omega"));
    for (const char* key : {"a", "b", "c", "d", "e", "f"})
        CHECK(doc.at("typicality").at("verdicts").contains(key));
}

TEST_CASE("thresholds and condition structs") {
    lmp_threshold_set t{};
    REQUIRE(lmp_thresholds(1000000, 5, 5.0, nullptr, &t) == LMP_OK);
    CHECK(t.omega_prime_ceil == 2);
    CHECK(t.h_ceil == 1);
    CHECK(t.nu == 2);

    lmp_condition c{};
    REQUIRE(lmp_condition_check(0.05, 5, 0.6, &c) == LMP_OK);
    CHECK(c.satisfied == 1);
    CHECK(c.lhs == doctest::Approx(0.57).epsilon(1e-12));
    CHECK(lmp_condition_check(0.05, 4, 0.6, &c) == LMP_ERR_PRECONDITION);
}

TEST_CASE("recursion csv is parseable and dominated early on") {
    Str csv;
    REQUIRE(lmp_recursion_csv(0.05, 5, 0.9, 10, &csv.value) == LMP_OK);
    const std::string text = csv.str();
    CHECK(text.rfind("t,p_t,bound_t,dominated\n", 0) == 0);
    // 11 data rows (t = 0..10)
    CHECK(std::count(text.begin(), text.end(), '\n') == 12);
}

TEST_CASE("simulate json reports consensus fields") {
    G g;
    REQUIRE(lmp_gen_regular(500, 5, 23, 20000, 1, &g.value) == LMP_OK);
    lmp_sim_params params{};
    params.protocol = 0;
    params.k = 5;
    params.alpha = 0.05;
    params.seed = 9;
    params.max_rounds = 0; // auto
    params.scope_radius = -1;
    Str json;
    REQUIRE(lmp_simulate_json(g.value, &params, &json.value) == LMP_OK);
    const auto doc = nlohmann::json::parse(json.str());
    CHECK(doc.at("protocol") == "mp");
    CHECK(doc.at("max_rounds") == 50);
    CHECK(doc.at("red_counts").is_array());
    CHECK(doc.contains("consensus_time"));
    CHECK(doc.contains("majority_correct"));
}

TEST_CASE("campaign and sweep write reports and return summaries") {
    const std::string dir = "capi_campaign_out";
    const std::string config = "family = regular\nn = 200\nd = 5\nk = 5\n"
                               "alpha = 0.05\nseed = 3\nruns = 4\nmax_attempts = 100000\n"
                               "audit = false\nout_dir = " + dir + "\n";
    Str summary;
    REQUIRE(lmp_campaign_run(config.c_str(), nullptr, &summary.value) == LMP_OK);
    const auto doc = nlohmann::json::parse(summary.str());
    CHECK(doc.contains("config_hash"));
    CHECK(std::filesystem::exists(dir + "/campaign.csv"));
    CHECK(std::filesystem::exists(dir + "/campaign.json"));

    Str sweep_summary;
    const std::string sweep_config = config + "alpha = 0.05,0.15\n";
    REQUIRE(lmp_sweep_run(sweep_config.c_str(), nullptr, &sweep_summary.value) == LMP_OK);
    CHECK(std::filesystem::exists(dir + "/sweep_curve.csv"));

    CHECK(lmp_campaign_run("family = nosuch\n", nullptr, &summary.value) == LMP_ERR_CONFIG);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify entry point runs a single fast criterion") {
    Str report;
    int failures = -1;
    REQUIRE(lmp_verify_run(3, &report.value, &failures) == LMP_OK);
    CHECK(failures == 0);
    CHECK(report.str().find("criterion 3") != std::string::npos);
}

TEST_SUITE_END();
