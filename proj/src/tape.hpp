#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"

namespace lmp {

// Randomness tape: every draw the system makes is a pure function of
// (seed, purpose, vertex, round, draw index). Two protocols reading the
// same tape see identical initial colours and identical subset choices,
// independent of evaluation order and platform. That keyed layout is what
// makes exact pathwise coupling of the protocols testable.
enum class Purpose : std::uint64_t {
    initial_colour = 0x11,
    subset_choice  = 0x22,
    edge_inclusion = 0x33,
    generation     = 0x44,
    scratch        = 0x55,
};

namespace detail {

// splitmix64 finalizer; full avalanche on 64 bits.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

// Sequential stream of draws rooted at one tape key.
class Stream {
public:
    explicit Stream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound). Modulo bias is ~bound/2^64, irrelevant at the
    // bounds this library uses.
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

private:
    std::uint64_t state_;
};

class Tape {
public:
    Tape() : seed_(0) {}
    explicit Tape(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Optional vertex key remapping, used by relabelling tests: draws for
    // vertex v are keyed by key_map[v] instead of v.
    void set_key_map(const std::vector<std::uint32_t>* map) { key_map_ = map; }

    // Key prefix for (seed, purpose, vertex); folding in the round gives
    // the stream state. Splitting the derivation lets hot loops hoist the
    // per-vertex part.
    std::uint64_t key_prefix(Purpose purpose, std::uint64_t vertex) const {
        if (key_map_ != nullptr && vertex < key_map_->size())
            vertex = (*key_map_)[vertex];
        std::uint64_t s = detail::mix64(seed_);
        s = detail::mix64(s ^ (static_cast<std::uint64_t>(purpose) * 0xd6e8feb86659fd93ULL));
        return detail::mix64(s ^ (vertex * 0xa3b195354a39b70dULL));
    }

    static Stream stream_at(std::uint64_t prefix, std::uint64_t round) {
        return Stream(detail::mix64(prefix ^ (round * 0x1b03738712fad5c9ULL)));
    }

    Stream stream(Purpose purpose, std::uint64_t vertex, std::uint64_t round) const {
        return stream_at(key_prefix(purpose, vertex), round);
    }

    bool initial_red(std::uint32_t vertex, double alpha) const {
        Stream s = stream(Purpose::initial_colour, vertex, 0);
        return s.next_unit() < alpha;
    }

    bool edge_included(std::uint32_t u, std::uint32_t v, double p) const {
        Stream s = stream(Purpose::edge_inclusion, u, v);
        return s.next_unit() < p;
    }

    // Uniform k-subset of the given neighbours for the key (seed,
    // subset-choice, vertex, round): each neighbour gets a keyed weight
    // and the k smallest win. Keying the weight by the neighbour's own id
    // (rather than its position in the adjacency list) makes the chosen
    // set equivariant under vertex relabelling with a matching key map.
    // Output ascending; k == |neighbours| returns them all.
    void poll_subset(std::uint64_t vertex, std::uint64_t round,
                     std::span<const std::uint32_t> neighbours, std::uint32_t k,
                     std::vector<std::uint32_t>& out) const;

private:
    std::uint64_t seed_;
    const std::vector<std::uint32_t>* key_map_ = nullptr;
};

// Per-run tape seeds for campaigns: one master seed, one derived seed per
// run index, collision-free in practice.
inline std::uint64_t derive_run_seed(std::uint64_t master, std::uint64_t run_index) {
    return detail::mix64(detail::mix64(master) ^ (run_index + 1) * 0x2545f4914f6cdd1dULL);
}

} // namespace lmp
