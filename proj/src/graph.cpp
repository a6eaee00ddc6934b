// Copyright 2026 The chainfix Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "chainfix/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

#include "chainfix/errors.hpp"
#include "chainfix/rng.hpp"

namespace chainfix {

Graph::Graph(std::size_t num_vertices)
    : adjacency_(num_vertices), matrix_(num_vertices * num_vertices, 0) {}

Graph::Graph(std::size_t num_vertices, std::span<const Edge> edges) : Graph(num_vertices) {
    for (const auto& [u, v] : edges) {
        if (!add_edge(u, v)) {
            throw ParameterError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        }
    }
}

void Graph::check_vertex(Vertex v) const {
    if (!contains(v)) {
        throw ParameterError("vertex " + std::to_string(v) + " out of range for graph on " +
                             std::to_string(num_vertices()) + " vertices");
    }
}

bool Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ParameterError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    const std::size_t n = num_vertices();
    if (matrix_[u * n + v]) return false;
    matrix_[u * n + v] = matrix_[v * n + u] = 1;
    adjacency_[u].insert(std::lower_bound(adjacency_[u].begin(), adjacency_[u].end(), v), v);
    adjacency_[v].insert(std::lower_bound(adjacency_[v].begin(), adjacency_[v].end(), u), u);
    const Edge e{u, v};
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
    return true;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return matrix_[static_cast<std::size_t>(u) * num_vertices() + v] != 0;
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
    check_vertex(v);
    return adjacency_[v];
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
    return best;
}

std::string_view to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::MaxClique: return "max_clique";
        case ProblemKind::MaxCut: return "max_cut";
        case ProblemKind::MinVertexCover: return "min_vertex_cover";
        case ProblemKind::GraphPartitioning: return "graph_partitioning";
    }
    return "unknown";
}

ProblemKind parse_problem_kind(std::string_view name) {
    for (auto kind : {ProblemKind::MaxClique, ProblemKind::MaxCut, ProblemKind::MinVertexCover,
                      ProblemKind::GraphPartitioning}) {
        if (to_string(kind) == name) return kind;
    }
    throw ParameterError("unknown problem '" + std::string(name) + "'");
}

bool is_maximization(ProblemKind kind) {
    return kind == ProblemKind::MaxClique || kind == ProblemKind::MaxCut;
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must lie in [0, 1]");
    if (n < 1) throw ParameterError("erdos_renyi needs at least one vertex");
    Graph g(n);
    Rng rng(seed);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.uniform() < p) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    }
    return g;
}

Graph complement(const Graph& g) {
    const auto n = static_cast<Vertex>(g.num_vertices());
    Graph h(g.num_vertices());
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (!g.adjacent(u, v)) h.add_edge(u, v);
        }
    }
    return h;
}

bool is_clique(const Graph& g, std::span<const Vertex> s) {
    for (Vertex v : s) {
        if (!g.contains(v)) throw ParameterError("vertex " + std::to_string(v) + " out of range");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (s[i] == s[j] || !g.adjacent(s[i], s[j])) return false;
        }
    }
    return true;
}

bool is_vertex_cover(const Graph& g, std::span<const Vertex> s) {
    std::vector<std::uint8_t> in(g.num_vertices(), 0);
    for (Vertex v : s) {
        if (!g.contains(v)) throw ParameterError("vertex " + std::to_string(v) + " out of range");
        in[v] = 1;
    }
    return std::all_of(g.edges().begin(), g.edges().end(),
                       [&](const Edge& e) { return in[e.first] || in[e.second]; });
}

bool is_complete_partition(const Graph& g, const Bipartition& b) {
    std::vector<std::uint8_t> seen(g.num_vertices(), 0);
    for (const auto* side : {&b.minus, &b.plus}) {
        for (Vertex v : *side) {
            if (!g.contains(v) || seen[v]) return false;
            seen[v] = 1;
        }
    }
    return b.minus.size() + b.plus.size() == g.num_vertices();
}

std::int64_t cut_size(const Graph& g, const Bipartition& b) {
    if (!is_complete_partition(g, b)) {
        throw ParameterError("cut_size needs a complete, non-overlapping partition");
    }
    std::vector<std::uint8_t> plus(g.num_vertices(), 0);
    for (Vertex v : b.plus) plus[v] = 1;
    std::int64_t cut = 0;
    for (const auto& [u, v] : g.edges()) cut += plus[u] != plus[v];
    return cut;
}

namespace {

VertexSet mask_members(std::uint32_t mask) {
    VertexSet out;
    for (Vertex v = 0; mask != 0; ++v, mask >>= 1) {
        if (mask & 1U) out.push_back(v);
    }
    return out;
}

}  // namespace

Optimum brute_force(ProblemKind kind, const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n > kBruteForceLimit) {
        throw SizeError("brute_force is limited to " + std::to_string(kBruteForceLimit) +
                        " vertices, got " + std::to_string(n));
    }
    std::vector<std::uint32_t> nbr(n, 0);
    for (const auto& [u, v] : g.edges()) {
        nbr[u] |= 1U << v;
        nbr[v] |= 1U << u;
    }
    const std::uint32_t full = n == 32 ? ~0U : (1U << n) - 1U;
    const std::uint64_t count = std::uint64_t{1} << n;

    auto cut_of = [&](std::uint32_t mask) {
        std::int64_t cut = 0;
        for (std::uint32_t m = mask; m != 0; m &= m - 1) {
            cut += std::popcount(nbr[std::countr_zero(m)] & ~mask);
        }
        return cut;
    };

    Optimum best;
    bool found = false;
    for (std::uint64_t raw = 0; raw < count; ++raw) {
        const auto mask = static_cast<std::uint32_t>(raw);
        const std::int64_t size = std::popcount(mask);
        switch (kind) {
            case ProblemKind::MaxClique: {
                if (found && size <= best.value) break;
                bool ok = true;
                for (std::uint32_t m = mask; m != 0 && ok; m &= m - 1) {
                    const int v = std::countr_zero(m);
                    ok = (mask & ~nbr[v] & ~(1U << v)) == 0;
                }
                if (ok) {
                    best = {size, mask_members(mask)};
                    found = true;
                }
                break;
            }
            case ProblemKind::MinVertexCover: {
                if (found && size >= best.value) break;
                const std::uint32_t out = full & ~mask;
                bool ok = true;
                for (std::uint32_t m = out; m != 0 && ok; m &= m - 1) {
                    ok = (nbr[std::countr_zero(m)] & out) == 0;
                }
                if (ok) {
                    best = {size, mask_members(mask)};
                    found = true;
                }
                break;
            }
            case ProblemKind::MaxCut: {
                const auto cut = cut_of(mask);
                if (!found || cut > best.value) {
                    best = {cut, mask_members(mask)};
                    found = true;
                }
                break;
            }
            case ProblemKind::GraphPartitioning: {
                const auto other = static_cast<std::int64_t>(n) - size;
                if (size - other > 1 || other - size > 1) break;
                const auto cut = cut_of(mask);
                if (!found || cut < best.value) {
                    best = {cut, mask_members(mask)};
                    found = true;
                }
                break;
            }
        }
    }
    return best;
}

Graph read_edge_list(std::istream& in) {
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0) throw FormatError("edge list header must be 'n m'");
    Graph g(static_cast<std::size_t>(n));
    for (long long i = 0; i < m; ++i) {
        long long u, v;
        if (!(in >> u >> v)) throw FormatError("edge list ended after " + std::to_string(i) + " edges");
        if (u < 0 || v < 0 || u >= n || v >= n) throw FormatError("edge endpoint out of range");
        if (u == v) throw FormatError("self-loop in edge list");
        if (!g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
            throw FormatError("duplicate edge in edge list");
        }
    }
    return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace chainfix
