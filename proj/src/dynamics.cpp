#include "regnet/dynamics.hpp"

#include "regnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace regnet {

RegulatoryNetwork::RegulatoryNetwork(Digraph graph, SignAssignment signs, ThresholdAssignment thresholds,
                                     double rate, InputlessDrive inputless)
    : graph_(std::move(graph)),
      signs_(std::move(signs)),
      thresholds_(std::move(thresholds)),
      rate_(rate),
      inputless_(inputless) {
    const std::size_t m = graph_.arrow_count();
    if (signs_.size() != m) throw DomainError("network: one sign per arrow required");
    if (thresholds_.size() != m) throw DomainError("network: one threshold per arrow required");
    if (!(rate_ >= 0.0 && rate_ < 1.0)) throw DomainError("network: contraction rate must lie in [0,1)");
    for (auto s : signs_) {
        if (s != 1 && s != -1) throw DomainError("network: signs must be -1 or +1");
    }
    for (double t : thresholds_) {
        if (!(t >= 0.0 && t <= 1.0)) throw DomainError("network: thresholds must lie in [0,1]");
    }

    const std::size_t n = graph_.vertex_count();
    in_offsets_.assign(n + 1, 0);
    in_source_.reserve(m);
    in_threshold_.reserve(m);
    in_sign_.reserve(m);
    for (Vertex v = 0; v < n; ++v) {
        for (auto i : graph_.in_arrows(v)) {
            in_source_.push_back(graph_.arrow(i).from);
            in_threshold_.push_back(thresholds_[i]);
            in_sign_.push_back(signs_[i]);
        }
        in_offsets_[v + 1] = static_cast<std::uint32_t>(in_source_.size());
    }
}

void RegulatoryNetwork::active_counts(std::span<const double> x, std::span<std::uint32_t> counts) const {
    const std::size_t n = graph_.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t k = 0;
        for (auto i = in_offsets_[v]; i < in_offsets_[v + 1]; ++i) {
            k += heaviside(in_sign_[i] * (x[in_source_[i]] - in_threshold_[i]));
        }
        counts[v] = k;
    }
}

double RegulatoryNetwork::step_into(std::span<const double> x, std::span<double> out,
                                    std::span<std::uint32_t> counts) const {
    const std::size_t n = graph_.vertex_count();
    const double a = rate_;
    double clearance = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t k = 0;
        for (auto i = in_offsets_[v]; i < in_offsets_[v + 1]; ++i) {
            const double diff = x[in_source_[i]] - in_threshold_[i];
            clearance = std::min(clearance, std::abs(diff));
            k += heaviside(in_sign_[i] * diff);
        }
        counts[v] = k;
        out[v] = a * x[v] + (1.0 - a) * drive(static_cast<Vertex>(v), k);
    }
    return clearance;
}

void RegulatoryNetwork::step_into(std::span<const double> x, std::span<double> out) const {
    const std::size_t n = graph_.vertex_count();
    const double a = rate_;
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t k = 0;
        for (auto i = in_offsets_[v]; i < in_offsets_[v + 1]; ++i) {
            k += heaviside(in_sign_[i] * (x[in_source_[i]] - in_threshold_[i]));
        }
        out[v] = a * x[v] + (1.0 - a) * drive(static_cast<Vertex>(v), k);
    }
}

void validate_activity(const RegulatoryNetwork& net, std::span<const double> x) {
    if (x.size() != net.vertex_count()) {
        throw DomainError("activity vector has " + std::to_string(x.size()) + " entries, expected " +
                          std::to_string(net.vertex_count()));
    }
    for (double v : x) {
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError("activity values must lie in [0,1]");
    }
}

SymbolState symbol_state(const RegulatoryNetwork& net, std::span<const double> x) {
    validate_activity(net, x);
    const auto& g = net.graph();
    SymbolState s;
    s.active.resize(g.arrow_count());
    s.counts.assign(g.vertex_count(), 0);
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const auto& arrow = g.arrow(i);
        const bool on = heaviside(net.signs()[i] * (x[arrow.from] - net.thresholds()[i]));
        s.active[i] = on;
        s.counts[arrow.to] += on;
    }
    return s;
}

ActivityVector step(const RegulatoryNetwork& net, std::span<const double> x) {
    validate_activity(net, x);
    ActivityVector out(x.size());
    net.step_into(x, out);
    // Convex combination of values in [0,1]; clamp away the last-ulp excursions.
    for (double& v : out) v = std::clamp(v, 0.0, 1.0);
    return out;
}

double distance_to_discontinuity(const RegulatoryNetwork& net, std::span<const double> x) {
    const auto& g = net.graph();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        d = std::min(d, std::abs(x[g.arrow(i).from] - net.thresholds()[i]));
    }
    return d;
}

double max_distance(std::span<const double> x, std::span<const double> y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

}  // namespace regnet
