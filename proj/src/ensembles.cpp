#include "regnet/ensembles.hpp"

#include "regnet/error.hpp"

#include <string>

namespace regnet {

namespace {

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1]");
}

}  // namespace

Digraph sample_erdos_renyi(std::size_t n, double p, bool allow_self_loops, Rng& rng) {
    if (n < 1) throw DomainError("erdos_renyi: n must be >= 1");
    require_probability(p, "erdos_renyi: p");
    std::vector<Arrow> arrows;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            if (u == v && !allow_self_loops) continue;
            if (rng.bernoulli(p)) arrows.push_back({u, v});
        }
    }
    return Digraph(n, std::move(arrows));
}

Digraph orient_edges(std::size_t n, const std::vector<Arrow>& undirected_edges, Rng& rng) {
    std::vector<Arrow> arrows;
    arrows.reserve(undirected_edges.size() * 2);
    for (const auto& e : undirected_edges) {
        const double r = rng.uniform();
        if (r < 0.25) {
            arrows.push_back({e.from, e.to});
        } else if (r < 0.5) {
            arrows.push_back({e.to, e.from});
        } else {
            arrows.push_back({e.from, e.to});
            arrows.push_back({e.to, e.from});
        }
    }
    return Digraph(n, std::move(arrows));
}

Digraph sample_barabasi_albert(std::size_t n, std::size_t m0, std::size_t m, Rng& rng) {
    if (m0 < 2 || m0 > n) throw DomainError("barabasi_albert: need 2 <= m0 <= n");
    if (m < 1 || m > m0) throw DomainError("barabasi_albert: need 1 <= m <= m0");

    std::vector<Arrow> edges;
    std::vector<std::uint64_t> degree(n, 0);
    for (Vertex u = 0; u < m0; ++u) {
        for (Vertex v = u + 1; v < m0; ++v) {
            edges.push_back({u, v});
            ++degree[u];
            ++degree[v];
        }
    }

    std::vector<std::uint64_t> weight;
    std::vector<Vertex> chosen;
    for (Vertex fresh = static_cast<Vertex>(m0); fresh < n; ++fresh) {
        weight.assign(degree.begin(), degree.begin() + fresh);
        std::uint64_t total = 0;
        for (auto w : weight) total += w;
        chosen.clear();
        for (std::size_t k = 0; k < m; ++k) {
            std::uint64_t r = rng.below(total);
            Vertex pick = 0;
            while (r >= weight[pick]) {
                r -= weight[pick];
                ++pick;
            }
            chosen.push_back(pick);
            total -= weight[pick];
            weight[pick] = 0;
        }
        for (Vertex target : chosen) {
            edges.push_back({target, fresh});
            ++degree[target];
            ++degree[fresh];
        }
    }
    return orient_edges(n, edges, rng);
}

Digraph sample_scale_free_tree(std::size_t n, Rng& rng) {
    if (n < 2) throw DomainError("scale_free_tree: n must be >= 2");
    return sample_barabasi_albert(n, 2, 1, rng);
}

SignAssignment sample_signs(std::size_t arrow_count, double eta, Rng& rng) {
    require_probability(eta, "sample_signs: eta");
    SignAssignment s(arrow_count);
    for (auto& x : s) x = rng.bernoulli(eta) ? -1 : 1;
    return s;
}

ThresholdAssignment sample_thresholds(std::size_t arrow_count, Rng& rng) {
    ThresholdAssignment t(arrow_count);
    for (auto& x : t) x = rng.uniform();
    return t;
}

ActivityVector sample_initial(std::size_t vertex_count, Rng& rng) {
    ActivityVector x(vertex_count);
    for (auto& v : x) v = rng.uniform();
    return x;
}

std::string GraphModel::name() const {
    switch (kind) {
    case Kind::erdos_renyi: return "erdos_renyi";
    case Kind::barabasi_albert: return "barabasi_albert";
    case Kind::tree: return "tree";
    }
    return {};
}

double GraphModel::parameter() const {
    switch (kind) {
    case Kind::erdos_renyi: return p;
    case Kind::barabasi_albert: return static_cast<double>(m);
    case Kind::tree: return 0.0;
    }
    return 0.0;
}

Digraph sample_graph(const GraphModel& model, std::size_t n, Rng& rng) {
    switch (model.kind) {
    case GraphModel::Kind::erdos_renyi: return sample_erdos_renyi(n, model.p, model.self_loops, rng);
    case GraphModel::Kind::barabasi_albert: return sample_barabasi_albert(n, model.m0, model.m, rng);
    case GraphModel::Kind::tree: return sample_scale_free_tree(n, rng);
    }
    throw DomainError("unknown graph model");
}

}  // namespace regnet
