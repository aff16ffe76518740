#pragma once

#include "regnet/digraph.hpp"
#include "regnet/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace regnet {

// Per-arrow data, aligned with Digraph::arrows().
using SignAssignment = std::vector<std::int8_t>;   // each entry -1 or +1
using ThresholdAssignment = std::vector<double>;   // each entry in [0,1]
using ActivityVector = std::vector<double>;        // per vertex, in [0,1]

/// Directed Erdos-Renyi graph: each ordered pair (u,v) is an arrow
/// independently with probability p; pairs (v,v) only if allow_self_loops.
Digraph sample_erdos_renyi(std::size_t n, double p, bool allow_self_loops, Rng& rng);

/// Preferential-attachment growth from the complete graph K_m0: every new
/// vertex joins `m` distinct existing vertices, drawn sequentially without
/// replacement with weights equal to their degrees at the start of the step.
/// Each undirected edge is then oriented one way (1/4), the other way (1/4)
/// or both ways (1/2).
Digraph sample_barabasi_albert(std::size_t n, std::size_t m0, std::size_t m, Rng& rng);

/// Scale-free tree: the growth above from a single edge with one attachment
/// per step, oriented the same way.
Digraph sample_scale_free_tree(std::size_t n, Rng& rng);

/// Orients an undirected edge list with the 1/4, 1/4, 1/2 rule.
Digraph orient_edges(std::size_t n, const std::vector<Arrow>& undirected_edges, Rng& rng);

/// i.i.d. signs with P(-1) = eta.
SignAssignment sample_signs(std::size_t arrow_count, double eta, Rng& rng);

/// i.i.d. uniform thresholds on [0,1).
ThresholdAssignment sample_thresholds(std::size_t arrow_count, Rng& rng);

/// i.i.d. uniform activities on [0,1).
ActivityVector sample_initial(std::size_t vertex_count, Rng& rng);

/// One point of a random-graph family.
struct GraphModel {
    enum class Kind { erdos_renyi, barabasi_albert, tree };
    Kind kind = Kind::erdos_renyi;
    double p = 0.0;          // erdos_renyi
    bool self_loops = false;  // erdos_renyi
    std::size_t m0 = 2;      // barabasi_albert
    std::size_t m = 1;       // barabasi_albert

    std::string name() const;
    // p for erdos_renyi, m for barabasi_albert, 0 for trees.
    double parameter() const;
};

Digraph sample_graph(const GraphModel& model, std::size_t n, Rng& rng);

}  // namespace regnet
