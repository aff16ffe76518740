#pragma once

#include "regnet/digraph.hpp"
#include "regnet/dynamics.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace regnet {

struct DetectOptions {
    std::size_t max_steps = 100000;
    // Number of full periods the symbol sequence must repeat before a
    // candidate period is checked analytically.
    std::size_t window = 3;
    // Attractors closer than this to the discontinuity set are not accepted.
    double verify_tol = 1e-9;
};

enum class Outcome {
    converged,   // verified periodic attractor
    unresolved,  // symbols periodic but the limit cycle lies within verify_tol of a threshold
    horizon,     // no verified attractor within max_steps
};

struct AttractorReport {
    Outcome outcome = Outcome::horizon;
    std::size_t transient_steps = 0;
    std::size_t period = 0;
    // y^0..y^{period-1}; y^s is the limit of x^{transient + s + k*period}.
    std::vector<ActivityVector> periodic_points;
    // min over the cycle of distance_to_discontinuity; positive when converged.
    double margin = 0.0;
    std::vector<SymbolState> symbol_cycle;
    // min distance to the discontinuity set over every simulated orbit point.
    double orbit_clearance = 0.0;
    std::size_t steps_simulated = 0;
    std::string diagnostic;

    bool converged() const { return outcome == Outcome::converged; }
};

/// The unique periodic orbit of the affine maps selected by a cycle of
/// symbol states: y^0_v = (1-a) sum_{s=1..tau} a^{s-1} d_v^{(tau-s)} / (1 - a^tau),
/// then y^{t+1} = a y^t + (1-a) d^{(t)}. Only the counts are used.
std::vector<ActivityVector> periodic_point_from_symbols(const RegulatoryNetwork& net,
                                                        std::span<const SymbolState> symbol_cycle);

/// Iterates from x0, finds a candidate period from the exact symbol
/// sequence and accepts it only after the analytic cycle reproduces the
/// symbols, stays more than verify_tol away from every threshold, is
/// minimal, and the current orbit point already sits inside its basin.
AttractorReport detect_attractor(const RegulatoryNetwork& net, std::span<const double> x0,
                                 const DetectOptions& opts = {});

/// The asymptotic period of a converged report.
std::optional<std::size_t> asymptotic_period(const AttractorReport& report);

struct OscillatorySubnetwork {
    Subnetwork subnetwork;
    std::size_t size = 0;
    std::size_t component_count = 0;
    // k -> fraction of oscillating vertices with k oscillating in-arrows.
    std::map<std::size_t, double> degree_distribution;
    // Same as counts, for exact pooling across orbits.
    std::map<std::size_t, std::size_t> degree_histogram;
};

/// Arrows whose activation bit is not constant over the symbol cycle, with
/// their endpoints. Throws DomainError for a report that is not converged.
OscillatorySubnetwork oscillatory_subnetwork(const RegulatoryNetwork& net, const AttractorReport& report,
                                             Connectivity connectivity = Connectivity::weak);

}  // namespace regnet
