#include "regnet/ensembles.hpp"
#include "regnet/error.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace regnet;

namespace {

std::set<std::pair<Vertex, Vertex>> undirected(const Digraph& g) {
    std::set<std::pair<Vertex, Vertex>> out;
    for (const auto& a : g.arrows()) out.insert({std::min(a.from, a.to), std::max(a.from, a.to)});
    return out;
}

bool connected_acyclic(const Digraph& g) {
    return undirected(g).size() + 1 == g.vertex_count() && weak_components(g).size() == 1;
}

std::size_t max_degree(std::size_t n, const std::set<std::pair<Vertex, Vertex>>& edges) {
    std::vector<std::size_t> deg(n, 0);
    for (const auto& [u, v] : edges) ++deg[u], ++deg[v];
    return *std::max_element(deg.begin(), deg.end());
}

// Uniform-attachment (random recursive) tree: the oracle without preference.
std::size_t uniform_tree_max_degree(std::size_t n, Rng& rng) {
    std::set<std::pair<Vertex, Vertex>> edges{{0, 1}};
    for (Vertex v = 2; v < n; ++v) edges.insert({static_cast<Vertex>(rng.below(v)), v});
    return max_degree(n, edges);
}

}  // namespace

TEST_CASE("erdos_renyi extremes") {
    Rng r(1);
    CHECK(sample_erdos_renyi(7, 0.0, true, r).arrow_count() == 0);
    const auto full = sample_erdos_renyi(3, 1.0, false, r);
    CHECK(full.arrow_count() == 6);
    for (const auto& a : full.arrows()) CHECK(a.from != a.to);
    CHECK(sample_erdos_renyi(3, 1.0, true, r).arrow_count() == 9);
    CHECK_THROWS_AS(sample_erdos_renyi(3, 1.5, false, r), DomainError);
    CHECK_THROWS_AS(sample_erdos_renyi(3, -0.1, false, r), DomainError);
}

TEST_CASE("erdos_renyi mean arrow count") {
    const EnsembleSeed root{2024};
    double sum = 0.0;
    const int seeds = 1000;
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(seeds); ++s) {
        Rng r = root.stream("er", {s});
        sum += static_cast<double>(sample_erdos_renyi(100, 0.2, false, r).arrow_count());
    }
    const double sigma = std::sqrt(9900 * 0.2 * 0.8);
    CHECK(std::abs(sum / seeds - 1980.0) < 3 * sigma / std::sqrt(seeds));
}

TEST_CASE("erdos_renyi arrow count is binomial (chi-square)") {
    // n = 3 without self-loops: Binomial(6, 0.3).
    const double p = 0.3;
    std::vector<double> expected(7);
    for (int k = 0; k <= 6; ++k) {
        expected[k] = std::tgamma(7) / (std::tgamma(k + 1) * std::tgamma(7 - k)) * std::pow(p, k) * std::pow(1 - p, 6 - k);
    }
    std::vector<int> observed(7, 0);
    const int draws = 10000;
    Rng r(77);
    for (int i = 0; i < draws; ++i) ++observed[sample_erdos_renyi(3, p, false, r).arrow_count()];
    // Pool k = 5, 6 so every expected count exceeds 5.
    double chi2 = 0.0;
    for (int k = 0; k <= 4; ++k) chi2 += std::pow(observed[k] - draws * expected[k], 2) / (draws * expected[k]);
    const double tail = draws * (expected[5] + expected[6]);
    chi2 += std::pow(observed[5] + observed[6] - tail, 2) / tail;
    // 5 degrees of freedom, significance 0.01.
    CHECK(chi2 < 15.086);
}

TEST_CASE("barabasi_albert without growth orients K_m0") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng r(s);
        const auto g = sample_barabasi_albert(3, 3, 2, r);
        CHECK(g.arrow_count() >= 3);
        CHECK(g.arrow_count() <= 6);
        CHECK(undirected(g).size() == 3);
    }
}

TEST_CASE("barabasi_albert edge count") {
    for (std::size_t m = 1; m <= 5; ++m) {
        Rng r(m);
        CHECK(undirected(sample_barabasi_albert(100, 5, m, r)).size() == 10 + 95 * m);
    }
}

TEST_CASE("barabasi_albert parameter checks") {
    Rng r(0);
    CHECK_THROWS_AS(sample_barabasi_albert(10, 1, 1, r), DomainError);
    CHECK_THROWS_AS(sample_barabasi_albert(10, 3, 4, r), DomainError);
    CHECK_THROWS_AS(sample_barabasi_albert(10, 3, 0, r), DomainError);
    CHECK_THROWS_AS(sample_barabasi_albert(2, 3, 1, r), DomainError);
}

TEST_CASE("barabasi_albert with m = 1 from an edge grows a tree") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng r(s);
        CHECK(connected_acyclic(sample_barabasi_albert(60, 2, 1, r)));
    }
}

TEST_CASE("barabasi_albert attachment probabilities on 4 vertices") {
    // m0 = 2, m = 1: vertex 2 joins 0 or 1 with probability 1/2. Vertex 3
    // then sees degrees 2,1,1 (or 1,2,1) summing to 4. Each of the 6 trees
    // below has probability 1/2 * deg/4.
    using Tree = std::set<std::pair<Vertex, Vertex>>;
    std::map<Tree, double> oracle;
    for (Vertex first : {0u, 1u}) {
        std::vector<double> deg{1, 1, 1};
        deg[first] += 1;
        for (Vertex target : {0u, 1u, 2u}) {
            Tree t{{0, 1}, {first, 2}, {target, 3}};
            oracle[t] += 0.5 * deg[target] / 4.0;
        }
    }
    REQUIRE(oracle.size() == 6);
    std::map<Tree, int> counts;
    const int draws = 40000;
    const EnsembleSeed root{99};
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(draws); ++i) {
        Rng r = root.stream("ba4", {i});
        ++counts[undirected(sample_barabasi_albert(4, 2, 1, r))];
    }
    REQUIRE(counts.size() == 6);
    double chi2 = 0.0;
    for (const auto& [t, p] : oracle) chi2 += std::pow(counts[t] - draws * p, 2) / (draws * p);
    CHECK(chi2 < 15.086);  // 5 degrees of freedom, significance 0.01

    // m0 = 3, m = 2: all degrees 2, so each pair of targets has probability 1/3.
    std::map<Tree, int> pairs;
    for (std::uint64_t i = 0; i < 9000; ++i) {
        Rng r = root.stream("ba4m2", {i});
        ++pairs[undirected(sample_barabasi_albert(4, 3, 2, r))];
    }
    REQUIRE(pairs.size() == 3);
    for (const auto& [t, c] : pairs) CHECK(std::abs(c - 3000) < 4 * 45);
}

TEST_CASE("edge orientation frequencies are 1/4, 1/4, 1/2") {
    std::vector<Arrow> edges;
    for (Vertex v = 1; v < 20001; ++v) edges.push_back({0, v});
    Rng r(5);
    const auto g = orient_edges(20001, edges, r);
    int forward = 0, backward = 0, both = 0;
    for (Vertex v = 1; v < 20001; ++v) {
        const bool f = g.has_arrow(0, v), b = g.has_arrow(v, 0);
        forward += f && !b;
        backward += b && !f;
        both += f && b;
    }
    CHECK(forward + backward + both == 20000);
    CHECK(std::abs(forward - 5000) < 4 * 62);
    CHECK(std::abs(backward - 5000) < 4 * 62);
    CHECK(std::abs(both - 10000) < 4 * 71);
}

TEST_CASE("scale-free trees") {
    Rng r(3);
    const auto two = sample_scale_free_tree(2, r);
    CHECK(undirected(two).size() == 1);
    CHECK(two.arrow_count() >= 1);
    CHECK(two.arrow_count() <= 2);
    for (std::size_t n : {3u, 10u, 200u}) {
        const auto t = sample_scale_free_tree(n, r);
        CHECK(connected_acyclic(t));
        CHECK(bipartition(t).has_value());
    }
    CHECK_THROWS_AS(sample_scale_free_tree(1, r), DomainError);
}

TEST_CASE("scale-free trees have heavier degree tails than uniform attachment") {
    const EnsembleSeed root{17};
    int heavier = 0;
    const int pairs = 100;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(pairs); ++i) {
        Rng a = root.stream("sf", {i});
        Rng b = root.stream("uniform", {i});
        const auto sf = max_degree(1000, undirected(sample_scale_free_tree(1000, a)));
        heavier += sf > uniform_tree_max_degree(1000, b);
    }
    CHECK(heavier >= 95);
}

TEST_CASE("sign sampler") {
    Rng r(8);
    const auto plus = sample_signs(100, 0.0, r);
    CHECK(std::all_of(plus.begin(), plus.end(), [](auto s) { return s == 1; }));
    const auto minus = sample_signs(100, 1.0, r);
    CHECK(std::all_of(minus.begin(), minus.end(), [](auto s) { return s == -1; }));
    const auto half = sample_signs(10000, 0.5, r);
    const double frac = std::count(half.begin(), half.end(), -1) / 10000.0;
    CHECK(std::abs(frac - 0.5) < 3 * 0.005);
    CHECK_THROWS_AS(sample_signs(3, 1.2, r), DomainError);
}

TEST_CASE("threshold and initial samplers are uniform on [0,1)") {
    Rng r(11);
    CHECK(sample_thresholds(0, r).empty());
    const auto t = sample_thresholds(100000, r);
    double mean = 0.0;
    for (double x : t) {
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
        mean += x;
    }
    mean /= t.size();
    double var = 0.0;
    for (double x : t) var += (x - mean) * (x - mean);
    var /= t.size() - 1;
    CHECK(std::abs(mean - 0.5) < 3 * std::sqrt(1.0 / 12 / 1e5));
    CHECK(std::abs(var - 1.0 / 12) < 0.05 / 12);

    const auto x = sample_initial(1000, r);
    CHECK(x.size() == 1000);
    CHECK(std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v < 1.0; }));
}

TEST_CASE("per-coordinate samplers are exchangeable across positions") {
    // Every position has the same marginal law, so relabelling the arrows
    // before or after sampling gives the same distribution.
    const int draws = 10000, width = 8;
    std::vector<int> minus(width, 0);
    std::vector<double> tsum(width, 0.0);
    Rng r(21);
    for (int i = 0; i < draws; ++i) {
        const auto s = sample_signs(width, 0.3, r);
        const auto t = sample_thresholds(width, r);
        for (int k = 0; k < width; ++k) {
            minus[k] += s[k] == -1;
            tsum[k] += t[k];
        }
    }
    const double sd_sign = std::sqrt(draws * 0.3 * 0.7);
    const double sd_mean = std::sqrt(1.0 / 12 / draws);
    for (int k = 0; k < width; ++k) {
        CHECK(std::abs(minus[k] - 0.3 * draws) < 4 * sd_sign);
        CHECK(std::abs(tsum[k] / draws - 0.5) < 4 * sd_mean);
    }
}

TEST_CASE("samplers are deterministic in the seed") {
    const EnsembleSeed root{314};
    Rng a = root.stream("graph", {1, 2}), b = root.stream("graph", {1, 2});
    const auto ga = sample_barabasi_albert(80, 4, 2, a), gb = sample_barabasi_albert(80, 4, 2, b);
    CHECK(std::equal(ga.arrows().begin(), ga.arrows().end(), gb.arrows().begin(), gb.arrows().end()));
    CHECK(sample_thresholds(50, a) == sample_thresholds(50, b));
}

TEST_CASE("graph models dispatch to their samplers") {
    Rng a(4), b(4);
    GraphModel er{GraphModel::Kind::erdos_renyi, 0.3};
    CHECK(er.name() == "erdos_renyi");
    CHECK(er.parameter() == 0.3);
    const auto g1 = sample_graph(er, 20, a), g2 = sample_erdos_renyi(20, 0.3, false, b);
    CHECK(std::equal(g1.arrows().begin(), g1.arrows().end(), g2.arrows().begin(), g2.arrows().end()));
    GraphModel ba{GraphModel::Kind::barabasi_albert};
    ba.m0 = 5;
    ba.m = 3;
    CHECK(ba.parameter() == 3.0);
    CHECK(undirected(sample_graph(ba, 30, a)).size() == 10 + 25 * 3);
}
