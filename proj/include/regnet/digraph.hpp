#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace regnet {

using Vertex = std::uint32_t;

struct Arrow {
    Vertex from = 0;
    Vertex to = 0;

    auto operator<=>(const Arrow&) const = default;
};

/// Directed graph on the dense vertex set {0, ..., n-1}.
///
/// Arrows are kept sorted lexicographically and deduplicated-by-contract:
/// per-arrow data elsewhere in the library (signs, thresholds, activation
/// bits) is stored in vectors aligned with `arrows()`. Self-loops are allowed.
/// Immutable after construction.
class Digraph {
public:
    Digraph() = default;
    // Throws DomainError on out-of-range endpoints or duplicate arrows.
    Digraph(std::size_t n, std::vector<Arrow> arrows);

    std::size_t vertex_count() const { return n_; }
    std::size_t arrow_count() const { return arrows_.size(); }
    std::span<const Arrow> arrows() const { return arrows_; }
    const Arrow& arrow(std::size_t i) const { return arrows_[i]; }

    // Indices into arrows() of the arrows with head / tail v.
    std::span<const std::uint32_t> in_arrows(Vertex v) const;
    std::span<const std::uint32_t> out_arrows(Vertex v) const;

    std::optional<std::size_t> arrow_index(Arrow a) const;
    bool has_arrow(Vertex u, Vertex v) const { return arrow_index({u, v}).has_value(); }
    bool has_vertex(Vertex v) const { return v < n_; }

private:
    std::size_t n_ = 0;
    std::vector<Arrow> arrows_;
    std::vector<std::uint32_t> in_offsets_, in_index_;
    std::vector<std::uint32_t> out_offsets_, out_index_;
};

/// Number of arrows with head v. Throws DomainError for an unknown vertex.
std::size_t in_degree(const Digraph& g, Vertex v);

/// Length of the shortest directed path u -> v; nullopt when unreachable.
std::optional<std::size_t> directed_distance(const Digraph& g, Vertex u, Vertex v);

/// How vertices are grouped into components.
///  - weak: connected components of the underlying undirected graph.
///  - cycle: two vertices are connected when a closed directed walk visits
///    both, i.e. strongly connected components; a vertex on no cycle is its
///    own singleton component.
enum class Connectivity { weak, cycle };

/// Components sorted by smallest member; members sorted ascending.
std::vector<std::vector<Vertex>> weak_components(const Digraph& g);
std::vector<std::vector<Vertex>> cycle_components(const Digraph& g);
std::vector<std::vector<Vertex>> components(const Digraph& g, Connectivity c);

/// Parity of the undirected BFS distance from the lowest-indexed vertex of
/// each weak component (0 = even, the pivot's class). Always defined; it is a
/// proper 2-coloring exactly when the graph is bipartite.
std::vector<std::uint8_t> pivot_parity(const Digraph& g);

/// 2-coloring of the underlying undirected graph in which every arrow joins
/// opposite colors, or nullopt. Self-loops make a graph non-bipartite.
/// The pivot (lowest-indexed vertex) of each weak component gets color 0.
std::optional<std::vector<std::uint8_t>> bipartition(const Digraph& g);

/// Some odd cycle of the underlying undirected graph as a closed vertex
/// sequence (first vertex not repeated); empty when the graph is bipartite.
std::vector<Vertex> odd_cycle(const Digraph& g);

/// Vertex subset of a parent digraph together with arrows among them.
/// Vertex and arrow ids refer to the parent; both lists are sorted.
struct Subnetwork {
    std::vector<Vertex> vertices;
    std::vector<Arrow> arrows;

    bool empty() const { return vertices.empty(); }
    bool contains(Vertex v) const;
    bool contains(Arrow a) const;
    // Position of v in `vertices`; v must be a member.
    std::size_t local_index(Vertex v) const;
    // The subnetwork relabelled onto 0..|vertices|-1.
    Digraph local_graph() const;
};

/// Subnetwork spanned by `arrows` (vertices = all endpoints).
/// Throws DomainError when an arrow is not in g.
Subnetwork induced_subnetwork(const Digraph& g, std::vector<Arrow> arrows);

}  // namespace regnet
