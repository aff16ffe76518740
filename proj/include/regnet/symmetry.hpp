#pragma once

#include "regnet/attractor.hpp"
#include "regnet/digraph.hpp"
#include "regnet/dynamics.hpp"
#include "regnet/ensembles.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace regnet {

/// Parity classes of a bipartite digraph (0 = even, the class of the
/// lowest-indexed vertex of each weak component) and the induced coordinate
/// flips: x_v -> 1 - x_v on even vertices, T_uv -> 1 - T_uv when u is even.
struct ParityTransform {
    std::vector<std::uint8_t> parity;
    std::vector<std::uint8_t> arrow_flip;
};

/// Throws PreconditionError naming an odd cycle when the underlying
/// undirected graph is not bipartite.
ParityTransform build_parity_transform(const Digraph& g);

ActivityVector psi_V(const ParityTransform& pt, std::span<const double> x);
ThresholdAssignment psi_A(const ParityTransform& pt, std::span<const double> thresholds);

/// The network with every sign negated and thresholds mapped by psi_A.
RegulatoryNetwork sign_flipped(const RegulatoryNetwork& net, const ParityTransform& pt);

struct FlipDefect {
    // max over t <= steps of d_max(psi_V(F^t(x)), F_flipped^t(psi_V(x))).
    double defect = 0.0;
    // min distance to the discontinuity set along the original orbit.
    double clearance = 0.0;
};

/// Refuses (PreconditionError) non-bipartite graphs and graphs with
/// input-less vertices under InputlessDrive::decay, for which the flipped
/// system is not conjugate.
FlipDefect sign_flip_conjugacy_defect(const RegulatoryNetwork& net, std::span<const double> x, std::size_t steps);

struct SymmetrySpec {
    GraphModel model{GraphModel::Kind::tree};
    std::size_t n_vertices = 50;
    double rate = 0.3;
    double eta = 0.2;
    std::size_t instances = 200;
    std::size_t defect_steps = 1000;
    InputlessDrive inputless = InputlessDrive::midpoint;
    DetectOptions detect;
};

struct SymmetryReport {
    double eta = 0.0;
    std::size_t n_instances = 0;
    std::size_t n_excluded = 0;
    bool period_hist_match = false;
    bool osc_hist_match = false;
    double max_defect = 0.0;
    std::map<std::size_t, std::size_t> period_hist;          // ensemble at eta
    std::map<std::size_t, std::size_t> coupled_period_hist;  // coupled ensemble at 1 - eta
};

/// Samples instances (sigma, T, x0) at eta and couples each with
/// (-sigma, psi_A(T), psi_V(x0)), a sample of the 1 - eta ensemble. Parity
/// comes from pivot_parity, so non-bipartite models run as a negative
/// control. Instances with an unconverged orbit or an orbit within 1e-9 of a
/// threshold on either side are excluded.
/// `threads` = 0 keeps the OpenMP default.
SymmetryReport paired_ensemble_symmetry(const SymmetrySpec& spec, std::uint64_t seed, int threads = 0);
SymmetryReport paired_ensemble_symmetry_serial(const SymmetrySpec& spec, std::uint64_t seed);

}  // namespace regnet
