#include "regnet/symmetry.hpp"

#include "regnet/error.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <string>

namespace regnet {

namespace {

ParityTransform transform_from(const Digraph& g, std::vector<std::uint8_t> parity) {
    ParityTransform pt;
    pt.arrow_flip.reserve(g.arrow_count());
    for (const auto& a : g.arrows()) pt.arrow_flip.push_back(parity[a.from] == 0);
    pt.parity = std::move(parity);
    return pt;
}

FlipDefect flip_defect_unchecked(const RegulatoryNetwork& net, const ParityTransform& pt, std::span<const double> x,
                                 std::size_t steps) {
    const RegulatoryNetwork flipped = sign_flipped(net, pt);
    ActivityVector xs(x.begin(), x.end()), xs_next(xs.size());
    ActivityVector ys = psi_V(pt, xs), ys_next(ys.size());
    FlipDefect out;
    out.clearance = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0;; ++t) {
        out.defect = std::max(out.defect, max_distance(psi_V(pt, xs), ys));
        out.clearance = std::min(out.clearance, distance_to_discontinuity(net, xs));
        if (t == steps) break;
        net.step_into(xs, xs_next);
        flipped.step_into(ys, ys_next);
        std::swap(xs, xs_next);
        std::swap(ys, ys_next);
    }
    return out;
}

constexpr double kClearanceFloor = 1e-9;

struct InstanceOutcome {
    bool excluded = true;
    std::size_t period = 0, coupled_period = 0;
    std::vector<Arrow> osc, coupled_osc;
    double defect = 0.0;
};

InstanceOutcome run_instance(const SymmetrySpec& spec, const EnsembleSeed& root, std::size_t i) {
    Rng rng = root.stream("symmetry", {i});
    Digraph g = sample_graph(spec.model, spec.n_vertices, rng);
    const auto m = g.arrow_count();
    SignAssignment sigma = sample_signs(m, spec.eta, rng);
    ThresholdAssignment t = sample_thresholds(m, rng);
    ActivityVector x0 = sample_initial(spec.n_vertices, rng);

    const ParityTransform pt = transform_from(g, pivot_parity(g));
    const RegulatoryNetwork net(g, sigma, t, spec.rate, spec.inputless);
    const RegulatoryNetwork coupled = sign_flipped(net, pt);
    const ActivityVector y0 = psi_V(pt, x0);

    InstanceOutcome out;
    const auto r = detect_attractor(net, x0, spec.detect);
    const auto rc = detect_attractor(coupled, y0, spec.detect);
    if (!r.converged() || !rc.converged()) return out;
    if (r.orbit_clearance <= kClearanceFloor || rc.orbit_clearance <= kClearanceFloor) return out;
    out.excluded = false;
    out.period = r.period;
    out.coupled_period = rc.period;
    out.osc = oscillatory_subnetwork(net, r).subnetwork.arrows;
    out.coupled_osc = oscillatory_subnetwork(coupled, rc).subnetwork.arrows;
    out.defect = flip_defect_unchecked(net, pt, x0, spec.defect_steps).defect;
    return out;
}

void validate(const SymmetrySpec& spec) {
    if (!(spec.eta >= 0.0 && spec.eta <= 1.0)) throw DomainError("symmetry: eta must lie in [0,1]");
    if (!(spec.rate >= 0.0 && spec.rate < 1.0)) throw DomainError("symmetry: rate must lie in [0,1)");
    if (spec.n_vertices < 1) throw DomainError("symmetry: n_vertices must be >= 1");
}

SymmetryReport summarize(const SymmetrySpec& spec, const std::vector<InstanceOutcome>& outcomes) {
    SymmetryReport rep;
    rep.eta = spec.eta;
    rep.n_instances = outcomes.size();
    std::map<std::vector<Arrow>, std::size_t> osc_hist, coupled_osc_hist;
    for (const auto& o : outcomes) {
        if (o.excluded) {
            ++rep.n_excluded;
            continue;
        }
        ++rep.period_hist[o.period];
        ++rep.coupled_period_hist[o.coupled_period];
        ++osc_hist[o.osc];
        ++coupled_osc_hist[o.coupled_osc];
        rep.max_defect = std::max(rep.max_defect, o.defect);
    }
    rep.period_hist_match = rep.period_hist == rep.coupled_period_hist;
    rep.osc_hist_match = osc_hist == coupled_osc_hist;
    return rep;
}

}  // namespace

ParityTransform build_parity_transform(const Digraph& g) {
    auto parity = bipartition(g);
    if (!parity) {
        std::string cycle;
        for (Vertex v : odd_cycle(g)) cycle += (cycle.empty() ? "" : " ") + std::to_string(v);
        throw PreconditionError("parity transform needs a bipartite graph; odd cycle: " + cycle);
    }
    return transform_from(g, std::move(*parity));
}

ActivityVector psi_V(const ParityTransform& pt, std::span<const double> x) {
    if (x.size() != pt.parity.size()) throw DomainError("psi_V: activity vector has the wrong length");
    ActivityVector out(x.begin(), x.end());
    for (std::size_t v = 0; v < out.size(); ++v) {
        if (pt.parity[v] == 0) out[v] = 1.0 - out[v];
    }
    return out;
}

ThresholdAssignment psi_A(const ParityTransform& pt, std::span<const double> thresholds) {
    if (thresholds.size() != pt.arrow_flip.size()) throw DomainError("psi_A: threshold vector has the wrong length");
    ThresholdAssignment out(thresholds.begin(), thresholds.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (pt.arrow_flip[i]) out[i] = 1.0 - out[i];
    }
    return out;
}

RegulatoryNetwork sign_flipped(const RegulatoryNetwork& net, const ParityTransform& pt) {
    SignAssignment s = net.signs();
    for (auto& v : s) v = static_cast<std::int8_t>(-v);
    return RegulatoryNetwork(net.graph(), std::move(s), psi_A(pt, net.thresholds()), net.rate(), net.inputless());
}

FlipDefect sign_flip_conjugacy_defect(const RegulatoryNetwork& net, std::span<const double> x, std::size_t steps) {
    const ParityTransform pt = build_parity_transform(net.graph());
    if (net.inputless() == InputlessDrive::decay) {
        for (Vertex v = 0; v < net.vertex_count(); ++v) {
            if (net.graph().in_arrows(v).empty()) {
                throw PreconditionError("sign-flip conjugacy: vertex " + std::to_string(v) +
                                        " has no inputs and decays to 0; use the midpoint input-less drive");
            }
        }
    }
    validate_activity(net, x);
    return flip_defect_unchecked(net, pt, x, steps);
}

SymmetryReport paired_ensemble_symmetry(const SymmetrySpec& spec, std::uint64_t seed, int threads) {
    validate(spec);
    const EnsembleSeed root{seed};
    std::vector<InstanceOutcome> outcomes(spec.instances);
    const auto count = static_cast<std::int64_t>(spec.instances);
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t i = 0; i < count; ++i) {
        outcomes[static_cast<std::size_t>(i)] = run_instance(spec, root, static_cast<std::size_t>(i));
    }
    return summarize(spec, outcomes);
}

SymmetryReport paired_ensemble_symmetry_serial(const SymmetrySpec& spec, std::uint64_t seed) {
    validate(spec);
    const EnsembleSeed root{seed};
    std::vector<InstanceOutcome> outcomes;
    outcomes.reserve(spec.instances);
    for (std::size_t i = 0; i < spec.instances; ++i) outcomes.push_back(run_instance(spec, root, i));
    return summarize(spec, outcomes);
}

}  // namespace regnet
