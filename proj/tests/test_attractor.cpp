#include "regnet/attractor.hpp"
#include "regnet/ensembles.hpp"
#include "regnet/error.hpp"

#include "doctest.h"

#include <cmath>
#include <numeric>

using namespace regnet;

namespace {

RegulatoryNetwork self_loop(int sign, double t, double a) {
    return RegulatoryNetwork(Digraph(1, {{0, 0}}), {static_cast<std::int8_t>(sign)}, {t}, a);
}

RegulatoryNetwork random_er(Rng& r, std::size_t n, double p, double a) {
    Digraph g = sample_erdos_renyi(n, p, false, r);
    const auto m = g.arrow_count();
    auto s = sample_signs(m, 0.5, r);
    auto t = sample_thresholds(m, r);
    return RegulatoryNetwork(std::move(g), std::move(s), std::move(t), a);
}

SymbolState counts_only(std::vector<std::uint32_t> k) {
    return {{}, std::move(k)};
}

}  // namespace

TEST_CASE("periodic points from constant symbols") {
    const auto net = RegulatoryNetwork(Digraph(2, {{0, 1}, {1, 0}}), {1, 1}, {0.5, 0.5}, 0.4);
    for (std::size_t tau : {1u, 2u, 5u}) {
        std::vector<SymbolState> on(tau, counts_only({1, 1})), off(tau, counts_only({0, 0}));
        for (const auto& y : periodic_point_from_symbols(net, on)) {
            CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-15));
        }
        for (const auto& y : periodic_point_from_symbols(net, off)) {
            CHECK(y[0] == 0.0);
            CHECK(y[1] == 0.0);
        }
    }
}

TEST_CASE("periodic points of the negative self-loop") {
    const auto net = self_loop(-1, 0.5, 0.2);
    const std::vector<SymbolState> cycle{counts_only({1}), counts_only({0})};
    const auto pts = periodic_point_from_symbols(net, cycle);
    REQUIRE(pts.size() == 2);
    // y^0 = a/(1+a) solves y = a(a y + (1-a)).
    CHECK(std::abs(pts[0][0] - 0.2 / 1.2) < 1e-15);
    CHECK(std::abs(pts[1][0] - 1.0 / 1.2) < 1e-15);
}

TEST_CASE("detect: negative self-loop") {
    const auto rep = detect_attractor(self_loop(-1, 0.5, 0.2), std::vector<double>{0.9});
    REQUIRE(rep.converged());
    CHECK(rep.period == 2);
    CHECK(asymptotic_period(rep) == 2u);
    double lo = std::min(rep.periodic_points[0][0], rep.periodic_points[1][0]);
    double hi = std::max(rep.periodic_points[0][0], rep.periodic_points[1][0]);
    CHECK(std::abs(lo - 1.0 / 6) < 1e-12);
    CHECK(std::abs(hi - 5.0 / 6) < 1e-12);
    CHECK(std::abs(rep.margin - 1.0 / 3) < 1e-12);
}

TEST_CASE("detect: positive self-loop converges to 1") {
    const auto rep = detect_attractor(self_loop(1, 0.5, 0.5), std::vector<double>{0.9});
    REQUIRE(rep.converged());
    CHECK(rep.period == 1);
    CHECK(rep.periodic_points[0][0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("detect: starting on a fixed point has no transient") {
    const auto net = self_loop(1, 0.5, 0.5);
    const auto rep = detect_attractor(net, std::vector<double>{1.0});
    REQUIRE(rep.converged());
    CHECK(rep.period == 1);
    CHECK(rep.transient_steps == 0);
}

TEST_CASE("detect: limit cycle on a threshold is unresolved") {
    // x decays towards 0, which is exactly the threshold.
    const auto rep = detect_attractor(self_loop(-1, 0.0, 0.5), std::vector<double>{0.7});
    CHECK(rep.outcome == Outcome::unresolved);
    CHECK_FALSE(rep.converged());
    CHECK_FALSE(asymptotic_period(rep).has_value());
    CHECK_FALSE(rep.diagnostic.empty());
}

TEST_CASE("detect: exhausted step budget") {
    Rng r(1);
    const auto net = random_er(r, 20, 0.3, 0.8);
    DetectOptions opts;
    opts.max_steps = 2;
    const auto rep = detect_attractor(net, sample_initial(20, r), opts);
    CHECK(rep.outcome == Outcome::horizon);
    CHECK(rep.periodic_points.empty());
}

TEST_CASE("oscillatory subnetwork examples") {
    const auto fixed = self_loop(1, 0.5, 0.5);
    const auto rf = detect_attractor(fixed, std::vector<double>{0.9});
    CHECK(oscillatory_subnetwork(fixed, rf).subnetwork.empty());

    const auto osc = self_loop(-1, 0.5, 0.2);
    const auto ro = detect_attractor(osc, std::vector<double>{0.9});
    const auto s = oscillatory_subnetwork(osc, ro);
    CHECK(s.subnetwork.arrows == std::vector<Arrow>{{0, 0}});
    CHECK(s.size == 1);
    CHECK(s.component_count == 1);
    CHECK(s.degree_distribution.at(1) == 1.0);

    // Oscillator on vertex 0 next to the chain 1 -> 2 -> 3.
    const RegulatoryNetwork mixed(Digraph(4, {{0, 0}, {1, 2}, {2, 3}}), {-1, 1, -1}, {0.5, 0.3, 0.6}, 0.2);
    const auto rm = detect_attractor(mixed, std::vector<double>{0.9, 0.8, 0.1, 0.4});
    REQUIRE(rm.converged());
    CHECK(rm.period == 2);
    CHECK(oscillatory_subnetwork(mixed, rm).subnetwork.arrows == std::vector<Arrow>{{0, 0}});

    CHECK_THROWS_AS(oscillatory_subnetwork(mixed, AttractorReport{}), DomainError);
}

TEST_CASE("cycle connectivity counts strongly connected pieces") {
    // Two negative self-loops joined by a frozen arrow-free gap: nc = 2 either way.
    const RegulatoryNetwork net(Digraph(2, {{0, 0}, {1, 1}}), {-1, -1}, {0.5, 0.5}, 0.2);
    const auto rep = detect_attractor(net, std::vector<double>{0.9, 0.3});
    REQUIRE(rep.converged());
    CHECK(oscillatory_subnetwork(net, rep, Connectivity::weak).component_count == 2);
    CHECK(oscillatory_subnetwork(net, rep, Connectivity::cycle).component_count == 2);
}

TEST_CASE("property: verified attractors on random networks") {
    const EnsembleSeed root{5};
    int checked = 0;
    for (std::uint64_t i = 0; i < 150; ++i) {
        Rng r = root.stream("attr", {i});
        const double a = 0.1 + 0.7 * static_cast<double>(i % 8) / 7.0;
        const auto net = random_er(r, 15, 0.3, a);
        const auto x0 = sample_initial(15, r);
        const auto rep = detect_attractor(net, x0);
        if (!rep.converged()) continue;
        ++checked;
        const std::size_t tau = rep.period;
        REQUIRE(rep.periodic_points.size() == tau);
        REQUIRE(rep.symbol_cycle.size() == tau);
        CHECK(rep.margin > 0.0);
        for (std::size_t t = 0; t < tau; ++t) {
            const auto& y = rep.periodic_points[t];
            CHECK(max_distance(step(net, y), rep.periodic_points[(t + 1) % tau]) <= 1e-12);
            CHECK(symbol_state(net, y) == rep.symbol_cycle[t]);
        }
        // Minimality: every prime divisor q leaves some point unmatched.
        std::size_t rest = tau;
        for (std::size_t q = 2; q <= rest; ++q) {
            if (rest % q != 0) continue;
            while (rest % q == 0) rest /= q;
            bool differs = false;
            for (std::size_t t = 0; t < tau && !differs; ++t) {
                differs = max_distance(rep.periodic_points[t], rep.periodic_points[(t + tau / q) % tau]) > 1e-9;
            }
            CHECK(differs);
        }
        // Brute force: the orbit approaches the cycle at rate a.
        auto x = x0;
        for (std::size_t s = 0; s < rep.transient_steps + 300; ++s) x = step(net, x);
        CHECK(max_distance(x, rep.periodic_points[300 % tau]) <= std::pow(a, 300) + 1e-12);
    }
    CHECK(checked >= 140);
}

TEST_CASE("property: perturbing within a third of the margin keeps the attractor") {
    const EnsembleSeed root{6};
    for (std::uint64_t i = 0; i < 60; ++i) {
        Rng r = root.stream("stab", {i});
        const auto net = random_er(r, 12, 0.3, 0.4);
        const auto rep = detect_attractor(net, sample_initial(12, r));
        if (!rep.converged()) continue;
        const double d = rep.margin / 3.0;
        ThresholdAssignment t = net.thresholds();
        for (auto& v : t) v = std::clamp(v + r.uniform(-0.99, 0.99) * d, 0.0, 1.0);
        ActivityVector x = rep.periodic_points[0];
        for (auto& v : x) v = std::clamp(v + r.uniform(-0.99, 0.99) * d, 0.0, 1.0);
        const RegulatoryNetwork moved(net.graph(), net.signs(), t, net.rate());
        const auto rep2 = detect_attractor(moved, x);
        REQUIRE(rep2.converged());
        CHECK(rep2.period == rep.period);
        CHECK(rep2.transient_steps == 0);
        CHECK(rep2.symbol_cycle == rep.symbol_cycle);
    }
}

TEST_CASE("almost every orbit converges on a small ensemble") {
    const EnsembleSeed root{7};
    int failed = 0;
    const int orbits = 1000;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(orbits); ++i) {
        Rng r = root.stream("conv", {i});
        const auto net = random_er(r, 20, 0.3, 0.3);
        failed += !detect_attractor(net, sample_initial(20, r)).converged();
    }
    CHECK(failed <= 1);
}
