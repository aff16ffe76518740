#include "regnet/attractor.hpp"

#include "regnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace regnet {

namespace {

constexpr std::size_t kChainLimit = 64;

std::uint64_t hash_counts(std::span<const std::uint32_t> counts) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto c : counts) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return h;
}

std::vector<std::size_t> prime_factors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool counts_periodic(const std::vector<std::vector<std::uint32_t>>& cycle, std::size_t lag) {
    for (std::size_t s = 0; s + lag < cycle.size(); ++s) {
        if (cycle[s] != cycle[s + lag]) return false;
    }
    return true;
}

// Longest run of indices i (ending at the newest checked index) with
// hash[i] == hash[i - lag]. Each (lag, i) pair is compared at most once.
struct LagRun {
    std::int64_t lo = 0;  // run covers [lo, hi]
    std::int64_t hi = -1;
};

enum class Verdict { accepted, unresolved, rejected };

// `collected` holds the exact symbol counts at times t-2L+1 .. t. On
// acceptance (or an unresolved cycle) fills `report`; otherwise records why
// in `failure`.
Verdict verify_candidate(const RegulatoryNetwork& net, const DetectOptions& opts,
                         std::vector<std::vector<std::uint32_t>> collected, std::size_t lag, std::int64_t t,
                         const std::vector<std::uint64_t>& hashes, std::span<const double> next,
                         AttractorReport& report, std::string& failure) {
    for (std::size_t j = 0; j < lag; ++j) {
        if (collected[j] != collected[j + lag]) {
            failure = "hash collision on candidate period " + std::to_string(lag);
            return Verdict::rejected;
        }
    }
    collected.resize(lag);
    const std::int64_t first = t - 2 * static_cast<std::int64_t>(lag) + 1;

    for (bool shrunk = true; shrunk;) {
        shrunk = false;
        for (std::size_t q : prime_factors(lag)) {
            if (counts_periodic(collected, lag / q)) {
                lag /= q;
                collected.resize(lag);
                shrunk = true;
                break;
            }
        }
    }

    const auto L = static_cast<std::int64_t>(lag);
    std::int64_t s = t - L;
    while (s >= 0 && hashes[s] == hashes[s + L]) --s;
    const std::int64_t t0 = s + 1;
    const auto phase0 = static_cast<std::size_t>(((t0 - first) % L + L) % L);

    std::vector<SymbolState> cycle(lag);
    for (std::size_t j = 0; j < lag; ++j) cycle[j].counts = collected[(phase0 + j) % lag];
    auto points = periodic_point_from_symbols(net, cycle);

    double margin = std::numeric_limits<double>::infinity();
    bool consistent = true;
    for (std::size_t j = 0; j < lag; ++j) {
        margin = std::min(margin, distance_to_discontinuity(net, points[j]));
        SymbolState sym = symbol_state(net, points[j]);
        if (sym.counts != cycle[j].counts) consistent = false;
        cycle[j] = std::move(sym);
    }

    if (margin <= opts.verify_tol) {
        report.outcome = Outcome::unresolved;
        report.period = lag;
        report.transient_steps = static_cast<std::size_t>(t0);
        report.margin = margin;
        report.diagnostic = "periodic symbols with period " + std::to_string(lag) +
                            " but the limit cycle is within verify_tol of a threshold";
        return Verdict::unresolved;
    }
    if (!consistent) {
        failure = "analytic cycle for period " + std::to_string(lag) + " does not reproduce its symbols";
        return Verdict::rejected;
    }
    // x^{t+1} within the margin of its cycle point shares its symbols forever.
    const auto phase = static_cast<std::size_t>((t + 1 - t0) % L);
    if (!(max_distance(next, points[phase]) < margin)) {
        failure = "orbit not yet inside the basin of the period-" + std::to_string(lag) + " cycle";
        return Verdict::rejected;
    }

    report.outcome = Outcome::converged;
    report.transient_steps = static_cast<std::size_t>(t0);
    report.period = lag;
    report.periodic_points = std::move(points);
    report.margin = margin;
    report.symbol_cycle = std::move(cycle);
    return Verdict::accepted;
}

}  // namespace

std::vector<ActivityVector> periodic_point_from_symbols(const RegulatoryNetwork& net,
                                                        std::span<const SymbolState> symbol_cycle) {
    const std::size_t tau = symbol_cycle.size();
    if (tau == 0) throw DomainError("periodic_point_from_symbols: empty symbol cycle");
    const std::size_t n = net.vertex_count();
    const double a = net.rate();
    for (const auto& s : symbol_cycle) {
        if (s.counts.size() != n) throw DomainError("periodic_point_from_symbols: symbol state size mismatch");
    }

    // Horner form of (1-a) sum_{s=1..tau} a^{s-1} d^{(tau-s)}.
    ActivityVector acc(n, 0.0);
    for (std::size_t t = 0; t < tau; ++t) {
        for (std::size_t v = 0; v < n; ++v) {
            acc[v] = a * acc[v] + (1.0 - a) * net.drive(static_cast<Vertex>(v), symbol_cycle[t].counts[v]);
        }
    }
    const double denom = 1.0 - std::pow(a, static_cast<double>(tau));
    std::vector<ActivityVector> points(tau, ActivityVector(n));
    for (std::size_t v = 0; v < n; ++v) points[0][v] = std::clamp(acc[v] / denom, 0.0, 1.0);
    for (std::size_t t = 0; t + 1 < tau; ++t) {
        for (std::size_t v = 0; v < n; ++v) {
            const double d = net.drive(static_cast<Vertex>(v), symbol_cycle[t].counts[v]);
            points[t + 1][v] = std::clamp(a * points[t][v] + (1.0 - a) * d, 0.0, 1.0);
        }
    }
    return points;
}

std::optional<std::size_t> asymptotic_period(const AttractorReport& report) {
    if (!report.converged()) return std::nullopt;
    return report.period;
}

AttractorReport detect_attractor(const RegulatoryNetwork& net, std::span<const double> x0,
                                 const DetectOptions& opts) {
    validate_activity(net, x0);
    if (opts.window < 1) throw DomainError("detect_attractor: window must be >= 1");

    const std::size_t n = net.vertex_count();
    AttractorReport report;
    report.orbit_clearance = std::numeric_limits<double>::infinity();

    ActivityVector x(x0.begin(), x0.end()), next(n);
    std::vector<std::uint32_t> counts(n);
    std::vector<std::uint64_t> hashes;
    std::vector<std::int64_t> prev;
    std::unordered_map<std::uint64_t, std::int64_t> last_seen;
    std::unordered_map<std::int64_t, LagRun> runs;

    // Exact symbol states of the 2L steps following a hash-confirmed lag L.
    std::size_t collect_lag = 0;
    std::vector<std::vector<std::uint32_t>> collected;
    std::size_t quiet_until = 0;
    std::string last_failure;

    const auto window = static_cast<std::int64_t>(opts.window);

    auto run_ok = [&](std::int64_t t, std::int64_t lag) {
        auto [it, fresh] = runs.try_emplace(lag);
        LagRun& r = it->second;
        if (fresh) {
            // Backward scan over the window only.
            const std::int64_t stop = std::max(lag, t - window * lag + 1);
            std::int64_t i = t;
            while (i >= stop && hashes[i] == hashes[i - lag]) --i;
            r.lo = i + 1;
            r.hi = t;
        } else {
            for (std::int64_t i = r.hi + 1; i <= t; ++i) {
                if (hashes[i] != hashes[i - lag]) r.lo = i + 1;
            }
            r.hi = t;
        }
        return t - r.lo + 1 >= window * lag;
    };

    for (std::size_t step_index = 0; step_index < opts.max_steps; ++step_index) {
        const auto t = static_cast<std::int64_t>(step_index);
        const double clearance = net.step_into(x, next, counts);
        report.orbit_clearance = std::min(report.orbit_clearance, clearance);

        const std::uint64_t h = hash_counts(counts);
        hashes.push_back(h);
        auto [seen, inserted] = last_seen.try_emplace(h, t);
        prev.push_back(inserted ? -1 : seen->second);
        seen->second = t;

        if (collect_lag != 0) {
            collected.push_back(counts);
            if (collected.size() == 2 * collect_lag) {
                const std::size_t lag = collect_lag;
                collect_lag = 0;
                const auto verdict =
                    verify_candidate(net, opts, std::move(collected), lag, t, hashes, next, report, last_failure);
                collected.clear();
                if (verdict != Verdict::rejected) {
                    report.steps_simulated = step_index + 1;
                    return report;
                }
                quiet_until = step_index + lag;
            }
        } else if (step_index >= quiet_until) {
            std::int64_t p = prev.back();
            for (std::size_t chain = 0; p >= 0 && chain < kChainLimit; ++chain, p = prev[p]) {
                const std::int64_t lag = t - p;
                if ((window + 1) * lag > t + 1) break;
                if (run_ok(t, lag)) {
                    collect_lag = static_cast<std::size_t>(lag);
                    collected.clear();
                    break;
                }
            }
        }

        std::swap(x, next);
    }

    report.outcome = Outcome::horizon;
    report.steps_simulated = opts.max_steps;
    report.diagnostic = "no verified attractor within " + std::to_string(opts.max_steps) + " steps";
    if (!last_failure.empty()) report.diagnostic += " (last candidate: " + last_failure + ")";
    return report;
}

OscillatorySubnetwork oscillatory_subnetwork(const RegulatoryNetwork& net, const AttractorReport& report,
                                             Connectivity connectivity) {
    if (!report.converged()) throw DomainError("oscillatory_subnetwork: report is not converged");
    const auto& g = net.graph();
    std::vector<Arrow> osc_arrows;
    for (std::size_t i = 0; i < g.arrow_count(); ++i) {
        const auto first = report.symbol_cycle.front().active[i];
        for (const auto& s : report.symbol_cycle) {
            if (s.active[i] != first) {
                osc_arrows.push_back(g.arrow(i));
                break;
            }
        }
    }

    OscillatorySubnetwork out;
    out.subnetwork = induced_subnetwork(g, std::move(osc_arrows));
    out.size = out.subnetwork.vertices.size();
    if (out.size == 0) return out;

    const Digraph local = out.subnetwork.local_graph();
    out.component_count = components(local, connectivity).size();
    for (Vertex v = 0; v < local.vertex_count(); ++v) ++out.degree_histogram[local.in_arrows(v).size()];
    for (const auto& [k, c] : out.degree_histogram) {
        out.degree_distribution[k] = static_cast<double>(c) / static_cast<double>(out.size);
    }
    return out;
}

}  // namespace regnet
