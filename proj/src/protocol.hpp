#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "tape.hpp"

namespace lmp {

// One bit per vertex; 1 = blue, 0 = red.
using Colouring = std::vector<std::uint8_t>;

constexpr std::uint8_t kRed = 0;
constexpr std::uint8_t kBlue = 1;

// Effective subset size: min(k, largest odd integer not greater than d_v).
std::uint32_t k_of(std::uint32_t k, std::uint32_t d_v);

// Vertex v red iff its initial-colour draw < alpha. Red is the minority
// colour by convention, hence the (0, 1/2) gate.
Colouring initial_colouring(Vertex n, double alpha, const Tape& tape);

std::uint64_t red_count(const Colouring& c);
bool monochromatic(const Colouring& c);

// Scope of the modified protocol: a tree ball G[v,s] with its parent map.
class MMPScope {
public:
    MMPScope(const Graph& g, Vertex root, std::uint32_t radius);

    Vertex root() const { return root_; }
    std::uint32_t radius() const { return radius_; }
    const BallView& tree() const { return tree_; }

    bool in_tree(Vertex x) const { return parent_of_[x] != kNotInTree; }
    // Parent of x in the tree; kNoVertex for the root.
    Vertex parent(Vertex x) const { return parent_of_[x]; }

private:
    static constexpr Vertex kNotInTree = static_cast<Vertex>(-2);
    Vertex root_;
    std::uint32_t radius_;
    BallView tree_;
    std::vector<Vertex> parent_of_;
};

// Synchronous step of the k-choice majority protocol: every vertex polls a
// uniform k(v)-subset of its neighbours (tape key: subset-choice, v, t) and
// adopts the majority colour. Updates are simultaneous.
Colouring step_mp(const Graph& g, const Colouring& current, std::uint32_t k,
                  const Tape& tape, std::uint64_t t);

// Modified step: vertices inside the scope tree poll the same subset but a
// sampled parent is dropped from the sum while the threshold k(v)/2 stays,
// i.e. a polled parent counts as red. The root and vertices outside the
// tree update as plain majority (on the modified states).
Colouring step_mmp(const Graph& g, const Colouring& current, std::uint32_t k,
                   const MMPScope& scope, const Tape& tape, std::uint64_t t);

enum class ProtocolKind { mp, mmp };

struct ProtocolRun {
    ProtocolKind protocol = ProtocolKind::mp;
    std::uint32_t k = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::uint32_t max_rounds = 0;
    std::optional<std::uint32_t> consensus_time;
    std::optional<std::uint8_t> consensus_colour;
    std::optional<bool> majority_correct;
    std::uint64_t initial_red = 0;
    std::uint8_t initial_majority = kBlue; // kBlue/kRed; ties resolved as blue with flag
    bool initial_tie = false;
    std::vector<std::uint64_t> red_counts;       // per round, index 0 = initial
    std::vector<Colouring> colourings;           // full states when recorded
    std::uint32_t rounds_executed = 0;
};

struct RunOptions {
    std::uint32_t max_rounds = 50;
    bool record_colourings = false;
    std::optional<Vertex> scope_root;       // mmp only
    std::optional<std::uint32_t> scope_radius;
};

ProtocolRun run(const Graph& g, ProtocolKind protocol, std::uint32_t k, double alpha,
                const Tape& tape, const RunOptions& options);

// Lockstep run of both protocols on one tape. Dominance holds iff the
// modified protocol's blue indicator never exceeds the plain protocol's,
// for every vertex and every round up to T.
struct CoupledRun {
    std::vector<Colouring> mp_states;   // t = 0..T
    std::vector<Colouring> mmp_states;  // t = 0..T
    bool dominance = true;
    std::optional<std::pair<std::uint32_t, Vertex>> first_violation; // (t, x)
};

CoupledRun coupled_run(const Graph& g, std::uint32_t k, const MMPScope& scope,
                       double alpha, const Tape& tape, std::uint32_t t_max);

// Pluggable step for the local-stable contract: the update of v may depend
// only on the states of N(v) and v plus v's tape draws.
using StepFn = std::function<Colouring(const Graph&, const Colouring&, const Tape&, std::uint64_t)>;

struct StabilityVerdict {
    bool stable = true;
    std::optional<Vertex> violating_vertex;
    std::optional<std::uint64_t> violating_seed;
};

// For every vertex whose closed neighbourhood is monochromatic in
// `colouring`, one application of the step must leave its colour unchanged,
// for every sampled tape (>= 100 seeds).
StabilityVerdict local_stable_check(const StepFn& step, const Graph& g,
                                    const Colouring& colouring, std::uint32_t seeds = 100);

const char* colour_name(std::uint8_t colour);

} // namespace lmp
