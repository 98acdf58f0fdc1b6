#pragma once

#include <cstdint>
#include <vector>

#include "graph.hpp"
#include "tape.hpp"

namespace lmp {

enum class Family { degree_sequence, regular, gnp };

struct GenSpec {
    Family family = Family::regular;
    std::vector<std::uint32_t> degrees; // degree-sequence family
    std::uint32_t n = 0;
    std::uint32_t d = 0;   // regular family
    double p = 0.0;        // gnp family
    std::uint32_t max_attempts = 1000;
    bool require_connected = true;
};

// Uniform pairing of half-edges with whole-sample rejection of loops,
// parallel edges and (optionally) disconnected samples. Accepted samples
// are uniform over the simple graphs with the prescribed degrees; an
// early abort on the first collision leaves that distribution unchanged
// because the whole pairing would have been rejected anyway.
Graph gen_configuration(const GenSpec& spec, const Tape& tape);

// Constant degree sequence, delegated to the pairing sampler.
Graph gen_regular(std::uint32_t n, std::uint32_t d, const Tape& tape,
                  std::uint32_t max_attempts = 1000, bool require_connected = true);

// Each of the C(n,2) pairs included independently with probability p.
// Pairs are enumerated in lexicographic order with one tape draw each, so
// the edge set is a pure function of (seed, n, p).
Graph gen_gnp(std::uint32_t n, double p, const Tape& tape);

Graph generate(const GenSpec& spec, const Tape& tape);

} // namespace lmp
