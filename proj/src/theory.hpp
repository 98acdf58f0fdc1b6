#pragma once

#include <cstdint>
#include <vector>

#include "error.hpp"

namespace lmp {

// Bias condition: [(1 + 1/sqrt(2 nu)) * 2]^(1/(nu-1)) * 4 a (1-a) < beta,
// with nu = floor((d-1)/2).
struct BiasCondition {
    double alpha = 0.0;
    std::uint32_t d = 0;
    std::uint32_t nu = 0;
    double beta = 0.0;
    double lhs = 0.0;
    bool satisfied = false;
    double alpha_max = 0.0; // supremum alpha satisfying the condition for (d, beta)
};

BiasCondition check_condition(double alpha, std::uint32_t d, double beta);

// One step of the majority recursion:
// p' = sum_{i=nu}^{2 nu} C(2 nu, i) p^i (1-p)^(2 nu - i).
double recursion_step(double p, std::uint32_t nu);

struct RecursionTrace {
    double alpha = 0.0;
    std::uint32_t nu = 0;
    std::vector<double> p;       // p_0 = alpha, ..., p_T
    std::vector<double> bound;   // (1/4) * lhs^(nu^t)
    std::vector<bool> dominated; // p_t <= bound_t
    std::vector<bool> clamped;   // value fell below 1e-300 and was clamped to 0
    double lhs = 0.0;
    // p_1 <= (1/2)(1 + 1/sqrt(2 nu))(4 a (1-a))^nu, checked against the
    // exact binomial p_1.
    double first_step_bound = 0.0;
    bool first_step_ok = false;
};

RecursionTrace recursion_trace(double alpha, std::uint32_t nu, std::uint32_t t_max);

// Vertex count of the d-regular tree of depth h:
// K = 1 + d ((d-1)^h - 1)/(d-2).
double tree_population(std::uint32_t d, std::uint32_t h);

// Hypergeometric upper tail: probability of drawing at least `need` marked
// items in `draws` from a population of `total` containing `marked`.
double hypergeometric_at_least(std::uint32_t total, std::uint32_t marked,
                               std::uint32_t draws, std::uint32_t need);

// Per-vertex one-step law on the complete graph: probability a vertex is
// red next round, given r red among n vertices and the vertex's own colour.
double complete_graph_red_probability(std::uint32_t n, std::uint32_t k,
                                      std::uint32_t r, bool vertex_is_red);

// Exact absorbing Markov chain on the red count for the complete graph,
// used as an independent oracle against Monte Carlo runs.
struct CompleteGraphChain {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    double alpha = 0.0;
    std::vector<std::vector<double>> transition;  // (n+1) x (n+1), row-stochastic
    std::vector<double> absorb_blue;              // per starting red count
    std::vector<double> expected_time;            // per starting red count
    double absorb_blue_from_initial = 0.0;        // under Binomial(n, alpha) reds
    double expected_time_from_initial = 0.0;
};

CompleteGraphChain complete_graph_chain(std::uint32_t n, std::uint32_t k, double alpha);

} // namespace lmp
