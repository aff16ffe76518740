#pragma once

#include "regnet/digraph.hpp"
#include "regnet/ensembles.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace regnet {

/// Interaction term used for a vertex with no incoming arrows.
///  - decay: D_v = 0, the activity relaxes geometrically to 0.
///  - midpoint: D_v = 1/2. This is the only constant invariant under the
///    sign flip D -> 1 - D, and it is what the parity conjugacy in
///    symmetry.hpp needs when input-less vertices are present.
enum class InputlessDrive { decay, midpoint };

/// The tuple (G, sigma, T, a) defining x' = a x + (1-a) D(x), with
/// D(x)_v = (1/Id(v)) * sum over arrows (u,v) of H(sigma_uv (x_u - T_uv)).
///
/// Besides the arrow-ordered signs/thresholds it keeps a head-major copy
/// (sources, signs, thresholds grouped by head vertex) for the step kernel.
class RegulatoryNetwork {
public:
    RegulatoryNetwork(Digraph graph, SignAssignment signs, ThresholdAssignment thresholds, double rate,
                      InputlessDrive inputless = InputlessDrive::decay);

    const Digraph& graph() const { return graph_; }
    const SignAssignment& signs() const { return signs_; }
    const ThresholdAssignment& thresholds() const { return thresholds_; }
    double rate() const { return rate_; }
    InputlessDrive inputless() const { return inputless_; }
    std::size_t vertex_count() const { return graph_.vertex_count(); }
    std::size_t arrow_count() const { return graph_.arrow_count(); }

    // D_v for a vertex whose active-input count is k.
    double drive(Vertex v, std::uint32_t k) const {
        const auto id = in_offsets_[v + 1] - in_offsets_[v];
        if (id == 0) return inputless_ == InputlessDrive::midpoint ? 0.5 : 0.0;
        return static_cast<double>(k) / static_cast<double>(id);
    }

    // Unchecked kernels. `out` must not alias `x`.
    void active_counts(std::span<const double> x, std::span<std::uint32_t> counts) const;
    // One step; writes per-vertex active counts of x and returns the distance
    // from x to the discontinuity set.
    double step_into(std::span<const double> x, std::span<double> out, std::span<std::uint32_t> counts) const;
    void step_into(std::span<const double> x, std::span<double> out) const;

private:
    Digraph graph_;
    SignAssignment signs_;
    ThresholdAssignment thresholds_;
    double rate_;
    InputlessDrive inputless_;

    std::vector<std::uint32_t> in_offsets_;
    std::vector<Vertex> in_source_;
    std::vector<double> in_threshold_;
    std::vector<std::int8_t> in_sign_;
};

/// Per-arrow activation bit and per-vertex active-input count.
struct SymbolState {
    std::vector<std::uint8_t> active;   // aligned with graph arrows
    std::vector<std::uint32_t> counts;  // per vertex

    bool operator==(const SymbolState&) const = default;
};

/// H(z) = 1 for z >= 0, else 0.
constexpr bool heaviside(double z) { return z >= 0.0; }

/// Throws DomainError unless x has one entry per vertex, each in [0,1].
void validate_activity(const RegulatoryNetwork& net, std::span<const double> x);

SymbolState symbol_state(const RegulatoryNetwork& net, std::span<const double> x);

ActivityVector step(const RegulatoryNetwork& net, std::span<const double> x);

/// min over arrows (u,v) of |x_u - T_uv|, i.e. the max-norm distance to the
/// discontinuity set; +infinity for an arrowless graph.
double distance_to_discontinuity(const RegulatoryNetwork& net, std::span<const double> x);

/// Max-norm distance.
double max_distance(std::span<const double> x, std::span<const double> y);

}  // namespace regnet
