#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "tape.hpp"

namespace lmp {

struct ThresholdConstants {
    double C = 1.0;    // small-cycle horizon factor
    double B = 1.0;    // light-degree factor
    double eps1 = 0.02; // regular-case depth factor
    double eps = 0.1;  // time constant slack
};

// Derived threshold parameters. Real values are kept alongside integer
// ceilings; hop-count comparisons use the ceilings, clamped to at least 1.
struct ThresholdSet {
    double omega = 0.0;        // C * log log n
    double ell = 0.0;          // B * (log n)^2
    double h = 0.0;            // (1/log d) log(log n / (log log n * log theta))
    double omega_prime = 0.0;  // log_d log_d n
    double l1 = 0.0;           // eps1 * log_d n
    double a_const = 0.0;      // (1 + eps) / log_d nu
    std::uint32_t nu = 0;      // floor((d-1)/2)
    double k_population = 0.0; // 1 + d((d-1)^ceil(h) - 1)/(d-2)
    std::uint32_t omega_ceil = 1;
    std::uint32_t h_ceil = 1;
    std::uint32_t omega_prime_ceil = 1;
    std::uint32_t a_omega_prime_ceil = 1; // ceil(A * omega'), protocol time scale
    bool h_nonpositive = false;           // inner ratio <= 1; integer form clamped
    ThresholdConstants constants;

    std::uint32_t small_cutoff() const { return 2 * omega_ceil + 1; } // max vertices of a small cycle/path
};

ThresholdSet thresholds(std::uint64_t n, std::uint32_t d, double theta,
                        const ThresholdConstants& constants = {});

// Relaxed variant for auditing arbitrary graphs: tolerates d < 5 and
// theta < 2 by leaving the protocol-time fields (nu, A) at their clamped
// defaults when undefined. The strict entry point above enforces the
// d >= 5 contract the time bounds need.
ThresholdSet audit_thresholds(std::uint64_t n, std::uint32_t d, double theta,
                              const ThresholdConstants& constants = {});

// Default round cap: max(50, 10 * ceil(A * omega')).
std::uint32_t default_max_rounds(const ThresholdSet& t);

// All simple cycles with at most max_vertices vertices, each reported once
// in canonical form (minimal vertex first, smaller neighbour second).
std::vector<std::vector<Vertex>> find_small_cycles(const Graph& g, std::uint32_t omega_ceil);
std::vector<std::vector<Vertex>> enumerate_cycles_up_to(const Graph& g, std::uint32_t max_vertices);

// Structural properties. Witnesses carry the full violating structure so
// they can be re-validated in isolation.
struct Witness {
    std::vector<Vertex> cycle1;
    std::vector<Vertex> cycle2;
    std::vector<Vertex> path;   // joined path where applicable, endpoints included
    Vertex vertex = kNoVertex;  // offending vertex where applicable
    Vertex vertex2 = kNoVertex;
    std::string kind;           // "little" / "heavy" for (c), (d)
    std::string kind2;
};

struct PropertyVerdict {
    bool pass = true;
    bool applicable = true;
    std::uint64_t violation_count = 0; // capped at witness cap when counting stops early
    std::vector<Witness> witnesses;    // up to 10
};

struct TypicalityReport {
    // "small path" means at most 2*ceil(omega)+1 vertices; for (a) every
    // path vertex must be light, for (c)/(d) interior vertices are
    // unrestricted; a little/heavy vertex is flagged anywhere on the path.
    std::string interpretation;
    PropertyVerdict a, b, c, d, e, f;
    std::vector<std::vector<Vertex>> small_cycles;
    std::uint64_t tree_regular_count = 0;
    double tree_regular_required = 0.0; // n^(1-eta)
    std::uint64_t light_count = 0;
    std::uint64_t heavy_count = 0;
    std::uint64_t little_count = 0;
    bool regular = false;

    bool all_pass_a_to_d() const { return a.pass && b.pass && c.pass && d.pass; }
};

TypicalityReport check_typicality(const Graph& g, const ThresholdSet& t,
                                  const DegreeSequenceProfile& profile, double eta = 0.5);

// Count of vertices rooting a d-regular tree to depth h whose omega-ball
// is a tree with all degrees >= d and all members light.
struct TreeRegularResult {
    std::uint64_t count = 0;
    std::vector<Vertex> vertices;
};

TreeRegularResult count_tree_regular(const Graph& g, std::uint32_t d, std::uint32_t h,
                                     std::uint32_t omega, double ell);

// Property (f): no two cycles of length <= ceil(100 L1) within distance
// ceil(100 L1) of each other. Requires a regular graph.
PropertyVerdict check_regular_typicality(const Graph& g, double l1);

// Single-property re-validation of witnesses, independent of the scan that
// produced them.
bool violates_disjoint_cycle_pair(const Graph& g, const Witness& w, double ell, std::uint32_t cutoff);
bool violates_two_cycles_on_vertex(const Graph& g, const Witness& w, double ell, std::uint32_t cutoff);
bool violates_cycle_near_bad_vertex(const Graph& g, const Witness& w, double ell,
                                    std::uint32_t d_eff, std::uint32_t cutoff);
bool violates_bad_pair(const Graph& g, const Witness& w, double ell,
                       std::uint32_t d_eff, std::uint32_t cutoff);
bool violates_close_cycle_pair(const Graph& g, const Witness& w, std::uint32_t cutoff);

// Level-by-level exploration over the protocol's own subset choices.
// Level-i vertices expand with their round-(depth - i) subsets; a sampled
// parent is not re-expanded; every other pick lands either on a fresh
// vertex or increments cycle_count.
struct ExplorationTree {
    Vertex root = 0;
    std::vector<Vertex> vertices;          // discovery order
    std::vector<std::uint32_t> level;      // per vertex
    std::vector<std::pair<Vertex, Vertex>> edges; // multiset, (parent, picked)
    std::uint64_t cycle_count = 0;
    // Every subset drawn during the build, for cross-checking against the
    // protocol's polls: (vertex, round, polled neighbours).
    std::vector<std::tuple<Vertex, std::uint32_t, std::vector<Vertex>>> polls;
};

ExplorationTree t_build(const Graph& g, Vertex v, std::uint32_t depth,
                        std::uint32_t d, const Tape& tape);

} // namespace lmp
