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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chainfix {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Undirected simple graph on vertices 0..n-1.
///
/// Edges are stored once with u < v, sorted lexicographically. Adjacency
/// lists are sorted and an n*n matrix backs `adjacent`.
class Graph {
 public:
    explicit Graph(std::size_t num_vertices = 0);
    Graph(std::size_t num_vertices, std::span<const Edge> edges);

    /// Adds edge {u, v}. Returns false if it was already present.
    /// Throws ParameterError on self-loops or out-of-range endpoints.
    bool add_edge(Vertex u, Vertex v);

    std::size_t num_vertices() const { return adjacency_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    bool adjacent(Vertex u, Vertex v) const;
    const std::vector<Vertex>& neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    std::size_t max_degree() const;
    bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < num_vertices(); }

    /// Edges with u < v in lexicographic order.
    const std::vector<Edge>& edges() const { return edges_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.num_vertices() == b.num_vertices() && a.edges_ == b.edges_;
    }

 private:
    void check_vertex(Vertex v) const;

    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::uint8_t> matrix_;
    std::vector<Edge> edges_;
};

/// Two-sided split of the vertex set. Partial while an unembedding is in progress.
struct Bipartition {
    VertexSet minus;
    VertexSet plus;

    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

enum class ProblemKind { MaxClique, MaxCut, MinVertexCover, GraphPartitioning };

std::string_view to_string(ProblemKind kind);
/// Accepts max_clique, max_cut, min_vertex_cover, graph_partitioning.
ProblemKind parse_problem_kind(std::string_view name);
bool is_maximization(ProblemKind kind);

/// G(n, p): every pair u < v, visited in lexicographic order, is kept with
/// probability p using one uniform draw from Rng(seed).
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

Graph complement(const Graph& g);

bool is_clique(const Graph& g, std::span<const Vertex> s);
bool is_vertex_cover(const Graph& g, std::span<const Vertex> s);

/// True when the two sides are disjoint, in range and together cover every vertex.
bool is_complete_partition(const Graph& g, const Bipartition& b);

/// Number of edges with endpoints on different sides.
/// Throws ParameterError unless `b` is a complete partition of g.
std::int64_t cut_size(const Graph& g, const Bipartition& b);

/// Exact optimum found by enumeration.
///
/// `witness` is the clique or cover for the set problems and the `plus` side
/// for the two cut problems.
struct Optimum {
    std::int64_t value = 0;
    VertexSet witness;
};

inline constexpr std::size_t kBruteForceLimit = 24;

/// Exhaustive optimum. Graph partitioning only considers splits whose sides
/// differ in size by at most one. Throws SizeError when n > kBruteForceLimit.
Optimum brute_force(ProblemKind kind, const Graph& g);

/// Plain-text edge list: first line "n m", then m lines "u v".
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace chainfix
