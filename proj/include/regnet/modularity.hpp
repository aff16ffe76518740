#pragma once

#include "regnet/attractor.hpp"
#include "regnet/digraph.hpp"
#include "regnet/dynamics.hpp"
#include "regnet/rng.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace regnet {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
};

/// Exact rational with positive denominator, for the surjectivity checks.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t n, std::int64_t d);
    bool operator==(const Rational&) const = default;
};
Rational operator+(Rational x, Rational y);
Rational operator*(Rational x, Rational y);
Rational operator-(Rational x);

/// Embedding of a module (V_bar, A_bar) into an extension digraph in which
/// every arrow outside the module has a frozen activation bit, so that the
/// module evolves exactly as the isolated subnetwork after the affine change
/// of variables phi_V (activities) and phi_A (thresholds).
///
/// Vertex ids of `extension` are those of the witness graph, plus one extra
/// vertex (id = witness vertex count) when an external source had to be
/// created for the in-degree repair.
struct ModuleEmbedding {
    Subnetwork module;
    Digraph extension;
    double rate = 0.0;
    InputlessDrive inputless = InputlessDrive::decay;
    double epsilon = 0.0;
    bool added_vertex = false;

    // Signs of the extension arrows; entries of module arrows are overridden
    // by sigma_bar in extend_signs().
    SignAssignment base_signs;
    // Extension arrow index of each module arrow (module.arrows order).
    std::vector<std::uint32_t> module_arrow_index;

    std::vector<Interval> rect_T;  // per extension arrow
    std::vector<Interval> rect_x;  // per extension vertex

    // Per extension vertex: D(v) = frozen-on inputs from outside the module,
    // Id(v) in the extension, Id_osc(v) = inputs from module arrows.
    std::vector<std::uint32_t> external_level;
    std::vector<std::uint32_t> in_degree;
    std::vector<std::uint32_t> module_in_degree;
    // Frozen activation bit of each extension arrow outside the module.
    std::vector<std::uint8_t> frozen_active;

    // phi_A: per module arrow (u,v) slope Id(u)/Id_osc(u), constant -D(u)/Id_osc(u).
    std::vector<double> slope_A, const_A;
    // phi_V: per module vertex v slope Id(v)/Id_osc(v), constant -D(v)/Id_osc(v).
    std::vector<double> slope_V, const_V;

    std::size_t module_vertex_count() const { return module.vertices.size(); }
    std::size_t module_arrow_count() const { return module.arrows.size(); }

    SignAssignment extend_signs(std::span<const std::int8_t> sigma_bar) const;
    ThresholdAssignment phi_A(std::span<const double> thresholds) const;
    ActivityVector phi_V(std::span<const double> x) const;
    // Preimages inside the module coordinates of the rectangles; the
    // external coordinates are copied from `base`.
    ThresholdAssignment phi_A_inverse(std::span<const double> module_thresholds,
                                      std::span<const double> base) const;
    ActivityVector phi_V_inverse(std::span<const double> module_x, std::span<const double> base) const;

    RegulatoryNetwork extended_network(std::span<const std::int8_t> sigma_bar,
                                       std::span<const double> thresholds) const;
    RegulatoryNetwork module_network(std::span<const std::int8_t> sigma_bar,
                                     std::span<const double> module_thresholds) const;

    // Exact rational evaluation of slope * interval + constant per module
    // coordinate; true when every image is exactly [0,1].
    bool phi_A_surjective() const;
    bool phi_V_surjective() const;
};

/// Builds the embedding from a converged witness orbit whose oscillatory
/// subnetwork is contained in `module`. Throws DomainError with a diagnostic
/// when the witness is not converged or does not match the module.
ModuleEmbedding build_embedding(const RegulatoryNetwork& witness, const AttractorReport& report,
                                const Subnetwork& module);

/// The (sigma, theta, D(u) > 0) lookup used for arrows leaving the module:
/// returns the replacement sign that keeps theta once the threshold is moved
/// below (has_external_input) or above the source's activity interval.
std::int8_t frozen_sign(std::uint8_t theta, std::int8_t sigma, bool has_external_input);

struct RectangleSample {
    SignAssignment sigma_bar;
    ThresholdAssignment thresholds;
    ActivityVector x;
};
RectangleSample sample_rectangles(const ModuleEmbedding& emb, Rng& rng);

struct ConjugacyResult {
    // max over t <= steps of d_max(phi_V(F_ext^t(x)), F_module^t(phi_V(x))).
    double defect = 0.0;
    // Every arrow outside the module kept its frozen activation bit.
    bool contained = true;
};

/// Throws DomainError when thresholds or x leave the rectangles or sizes
/// do not match. `constant_shift` is added to every phi_V constant (used for
/// negative controls; 0 for the actual conjugacy).
ConjugacyResult conjugacy_defect(const ModuleEmbedding& emb, std::span<const std::int8_t> sigma_bar,
                                 std::span<const double> thresholds, std::span<const double> x,
                                 std::size_t steps, double constant_shift = 0.0);

/// An isolated module together with a rectangle (thresholds x activities) on
/// which its asymptotic period is constant.
struct IsolatedModule {
    RegulatoryNetwork net;
    std::vector<Interval> rect_T;
    std::vector<Interval> rect_x;
};

/// Boxes of radius margin/3 around the thresholds and the first periodic
/// point of a converged orbit; every point of them has the same symbol cycle.
IsolatedModule stable_rectangle(const RegulatoryNetwork& net, const AttractorReport& report);

struct LcmReport {
    std::size_t samples = 0;
    std::size_t converged = 0;
    std::size_t matches = 0;  // full period == lcm(tau1, tau2)
    std::map<std::size_t, std::size_t> full_periods;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> module_periods;
    double max_defect = 0.0;  // conjugacy defect on the sampled points
};

/// Places the two modules side by side with one external vertex, embeds the
/// union, and for each sample draws module-coordinate points from the module
/// rectangles, pulls them back into the extension, and compares the full
/// asymptotic period with lcm of the isolated-module periods.
LcmReport lcm_period_check(const IsolatedModule& first, const IsolatedModule& second, std::size_t samples,
                           std::uint64_t seed, const DetectOptions& opts = {});

}  // namespace regnet
