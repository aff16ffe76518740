#include "regnet/digraph.hpp"

#include "regnet/error.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace regnet {

namespace {

void build_csr(std::size_t n, std::span<const Arrow> arrows, bool by_head,
               std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& index) {
    offsets.assign(n + 1, 0);
    for (const auto& a : arrows) ++offsets[(by_head ? a.to : a.from) + 1];
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    index.resize(arrows.size());
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t i = 0; i < arrows.size(); ++i) {
        const Vertex key = by_head ? arrows[i].to : arrows[i].from;
        index[fill[key]++] = i;
    }
}

// Undirected adjacency, each neighbour listed once per arrow.
std::vector<std::vector<Vertex>> undirected_adjacency(const Digraph& g) {
    std::vector<std::vector<Vertex>> adj(g.vertex_count());
    for (const auto& a : g.arrows()) {
        adj[a.from].push_back(a.to);
        if (a.from != a.to) adj[a.to].push_back(a.from);
    }
    return adj;
}

}  // namespace

Digraph::Digraph(std::size_t n, std::vector<Arrow> arrows) : n_(n), arrows_(std::move(arrows)) {
    if (n_ > std::numeric_limits<Vertex>::max()) throw DomainError("digraph: too many vertices");
    for (const auto& a : arrows_) {
        if (a.from >= n_ || a.to >= n_) {
            throw DomainError("digraph: arrow (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                              ") has an endpoint outside 0.." + std::to_string(n_ == 0 ? 0 : n_ - 1));
        }
    }
    std::sort(arrows_.begin(), arrows_.end());
    auto dup = std::adjacent_find(arrows_.begin(), arrows_.end());
    if (dup != arrows_.end()) {
        throw DomainError("digraph: duplicate arrow (" + std::to_string(dup->from) + "," +
                          std::to_string(dup->to) + ")");
    }
    build_csr(n_, arrows_, true, in_offsets_, in_index_);
    build_csr(n_, arrows_, false, out_offsets_, out_index_);
}

std::span<const std::uint32_t> Digraph::in_arrows(Vertex v) const {
    return std::span<const std::uint32_t>(in_index_).subspan(in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]);
}

std::span<const std::uint32_t> Digraph::out_arrows(Vertex v) const {
    return std::span<const std::uint32_t>(out_index_).subspan(out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]);
}

std::optional<std::size_t> Digraph::arrow_index(Arrow a) const {
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), a);
    if (it == arrows_.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - arrows_.begin());
}

std::size_t in_degree(const Digraph& g, Vertex v) {
    if (!g.has_vertex(v)) throw DomainError("in_degree: unknown vertex " + std::to_string(v));
    return g.in_arrows(v).size();
}

std::optional<std::size_t> directed_distance(const Digraph& g, Vertex u, Vertex v) {
    if (!g.has_vertex(u) || !g.has_vertex(v)) throw DomainError("directed_distance: unknown vertex");
    if (u == v) return 0;
    constexpr auto unseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(g.vertex_count(), unseen);
    std::queue<Vertex> frontier;
    dist[u] = 0;
    frontier.push(u);
    while (!frontier.empty()) {
        const Vertex w = frontier.front();
        frontier.pop();
        for (auto i : g.out_arrows(w)) {
            const Vertex next = g.arrow(i).to;
            if (dist[next] != unseen) continue;
            dist[next] = dist[w] + 1;
            if (next == v) return dist[next];
            frontier.push(next);
        }
    }
    return std::nullopt;
}

std::vector<std::vector<Vertex>> weak_components(const Digraph& g) {
    const auto adj = undirected_adjacency(g);
    std::vector<std::uint8_t> seen(g.vertex_count(), 0);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (Vertex w : adj[comp[head]]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<std::vector<Vertex>> cycle_components(const Digraph& g) {
    // Iterative Tarjan.
    const std::size_t n = g.vertex_count();
    constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<Vertex> stack;
    std::vector<std::pair<Vertex, std::size_t>> call;
    std::vector<std::vector<Vertex>> out;
    std::uint32_t counter = 0;

    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos == 0) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            auto outs = g.out_arrows(v);
            if (pos < outs.size()) {
                const Vertex w = g.arrow(outs[pos]).to;
                ++pos;
                if (index[w] == unvisited) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<Vertex> comp;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
            const Vertex finished = v;
            call.pop_back();
            if (!call.empty()) {
                Vertex parent = call.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Vertex>> components(const Digraph& g, Connectivity c) {
    return c == Connectivity::weak ? weak_components(g) : cycle_components(g);
}

std::vector<std::uint8_t> pivot_parity(const Digraph& g) {
    const auto adj = undirected_adjacency(g);
    constexpr std::uint8_t unset = 2;
    std::vector<std::uint8_t> parity(g.vertex_count(), unset);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (parity[s] != unset) continue;
        parity[s] = 0;
        std::queue<Vertex> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            const Vertex v = frontier.front();
            frontier.pop();
            for (Vertex w : adj[v]) {
                if (parity[w] == unset) {
                    parity[w] = parity[v] ^ 1;
                    frontier.push(w);
                }
            }
        }
    }
    return parity;
}

std::optional<std::vector<std::uint8_t>> bipartition(const Digraph& g) {
    auto parity = pivot_parity(g);
    for (const auto& a : g.arrows()) {
        if (parity[a.from] == parity[a.to]) return std::nullopt;
    }
    return parity;
}

std::vector<Vertex> odd_cycle(const Digraph& g) {
    for (const auto& a : g.arrows()) {
        if (a.from == a.to) return {a.from};
    }
    // BFS tree from each component pivot; a same-parity edge closes an odd cycle
    // through the lowest common ancestor of its endpoints.
    const auto adj = undirected_adjacency(g);
    constexpr auto none = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> parent(g.vertex_count(), none);
    std::vector<std::size_t> depth(g.vertex_count(), 0);
    std::vector<std::uint8_t> seen(g.vertex_count(), 0);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::queue<Vertex> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            const Vertex v = frontier.front();
            frontier.pop();
            for (Vertex w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    frontier.push(w);
                } else if (depth[w] == depth[v] && w != v) {
                    std::vector<Vertex> left{v}, right{w};
                    Vertex x = v, y = w;
                    while (x != y) {
                        x = parent[x];
                        y = parent[y];
                        left.push_back(x);
                        right.push_back(y);
                    }
                    right.pop_back();
                    std::reverse(right.begin(), right.end());
                    left.insert(left.end(), right.begin(), right.end());
                    // left = v .. lca .. w; closing edge w-v makes it odd.
                    return left;
                }
            }
        }
    }
    return {};
}

bool Subnetwork::contains(Vertex v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Subnetwork::contains(Arrow a) const {
    return std::binary_search(arrows.begin(), arrows.end(), a);
}

std::size_t Subnetwork::local_index(Vertex v) const {
    return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
}

Digraph Subnetwork::local_graph() const {
    std::vector<Arrow> local;
    local.reserve(arrows.size());
    for (const auto& a : arrows) {
        local.push_back({static_cast<Vertex>(local_index(a.from)), static_cast<Vertex>(local_index(a.to))});
    }
    return Digraph(vertices.size(), std::move(local));
}

Subnetwork induced_subnetwork(const Digraph& g, std::vector<Arrow> arrows) {
    Subnetwork sub;
    std::sort(arrows.begin(), arrows.end());
    arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
    for (const auto& a : arrows) {
        if (!g.has_arrow(a.from, a.to)) {
            throw DomainError("induced_subnetwork: arrow (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                              ") is not in the graph");
        }
        sub.vertices.push_back(a.from);
        sub.vertices.push_back(a.to);
    }
    std::sort(sub.vertices.begin(), sub.vertices.end());
    sub.vertices.erase(std::unique(sub.vertices.begin(), sub.vertices.end()), sub.vertices.end());
    sub.arrows = std::move(arrows);
    return sub;
}

}  // namespace regnet
