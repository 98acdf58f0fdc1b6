#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"

namespace lmp::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
};

// Hand-built audit fixtures. Both are engineered so that exactly one of
// the structural properties fails.
//
// Two small triangles sharing a light vertex, padded with a long cycle so
// that the shared vertex stays light, no vertex is little and the padding
// cycle is not small: fails (b) only.
Graph shared_vertex_triangles_instance();

// Heawood graph (3-regular, girth 6) with a planted triangle and a
// pendant degree-1 vertex next to it; the only little vertex sits one hop
// from the only small cycle: fails (c) only.
Graph little_vertex_instance();

std::vector<int> criterion_ids();
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

} // namespace lmp::verify
