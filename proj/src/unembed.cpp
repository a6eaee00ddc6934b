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

#include "chainfix/unembed.hpp"

#include <algorithm>

#include "chainfix/errors.hpp"
#include "chainfix/rng.hpp"

namespace chainfix {

int ChainReadout::majority_sign() const {
    const auto high = static_cast<std::ptrdiff_t>(std::count(values.begin(), values.end(), high_value(domain)));
    const auto low = static_cast<std::ptrdiff_t>(values.size()) - high;
    return high > low ? 1 : (low > high ? -1 : 0);
}

ChainReadout make_readout(Variable variable, std::vector<int> values, Domain domain) {
    if (values.empty()) throw ParameterError("chain of variable " + std::to_string(variable) + " is empty");
    ChainReadout r;
    r.variable = variable;
    r.domain = domain;
    std::size_t ones = 0;
    for (int x : values) {
        if (x == high_value(domain)) {
            ++ones;
        } else if (x != low_value(domain)) {
            throw ParameterError("value " + std::to_string(x) + " is outside the " + std::string(to_string(domain)) +
                                 " domain");
        }
    }
    r.length = values.size();
    r.broken = ones != 0 && ones != values.size();
    r.frac_ones = static_cast<double>(ones) / static_cast<double>(values.size());
    r.values = std::move(values);
    return r;
}

std::vector<ChainReadout> decompose(const PhysicalSample& sample, const Embedding& e, Domain domain) {
    std::vector<ChainReadout> out;
    out.reserve(e.size());
    for (const auto& [var, chain] : e.chains()) {
        std::vector<int> values;
        values.reserve(chain.size());
        for (Qubit q : chain) {
            const int s = sample.spin(q);
            values.push_back(domain == Domain::Qubo ? (s + 1) / 2 : s);
        }
        out.push_back(make_readout(var, std::move(values), domain));
    }
    return out;
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::MajorityVote: return "majority_vote";
        case Method::RandomWeighted: return "random_weighted";
        case Method::MinimizeEnergy: return "minimize_energy";
        case Method::Tailored: return "tailored";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : kAllMethods) {
        if (to_string(m) == name) return m;
    }
    throw ParameterError("unknown unembedding method '" + std::string(name) + "'");
}

LogicalSample majority_vote(const std::vector<ChainReadout>& readouts) {
    LogicalSample out{{}, Method::MajorityVote};
    for (const auto& r : readouts) {
        out.values[r.variable] = r.majority_sign() >= 0 ? high_value(r.domain) : low_value(r.domain);
    }
    return out;
}

LogicalSample random_weighted(const std::vector<ChainReadout>& readouts, std::uint64_t seed) {
    LogicalSample out{{}, Method::RandomWeighted};
    Rng rng(seed);
    for (const auto& r : readouts) {
        if (!r.broken) {
            out.values[r.variable] = r.value();
        } else {
            out.values[r.variable] = rng.bernoulli(r.frac_ones) ? high_value(r.domain) : low_value(r.domain);
        }
    }
    return out;
}

LogicalSample minimize_energy(const std::vector<ChainReadout>& readouts, const BQM& model) {
    const DenseModel dense(model);
    const std::size_t n = dense.size();
    if (readouts.size() != n) throw AssignmentError("model and readouts cover different variables");
    const Domain domain = model.domain();

    std::vector<int> value(n, 0);
    std::vector<bool> fixed(n, false);
    std::vector<std::size_t> pending;
    for (const auto& r : readouts) {
        if (r.domain != domain) throw DomainError("readout domain differs from the model domain");
        const auto i = dense.index_of(r.variable);
        if (i < 0) throw AssignmentError("variable " + std::to_string(r.variable) + " is not in the model");
        if (r.broken) {
            pending.push_back(static_cast<std::size_t>(i));
        } else {
            value[i] = r.value();
            fixed[i] = true;
        }
    }
    std::sort(pending.begin(), pending.end());

    const int lo = low_value(domain);
    const int hi = high_value(domain);
    // Energy change of the determined set when i joins it with value s.
    auto join_delta = [&](std::size_t i, int s) {
        double field = dense.linear(i);
        for (const auto& [j, coupling] : dense.neighbors(i)) {
            if (fixed[j]) field += coupling * value[j];
        }
        return field * s;
    };

    while (!pending.empty()) {
        std::size_t best_pos = 0;
        double best_priority = 0.0;
        double best_lo = 0.0;
        double best_hi = 0.0;
        for (std::size_t p = 0; p < pending.size(); ++p) {
            const double d_lo = join_delta(pending[p], lo);
            const double d_hi = join_delta(pending[p], hi);
            const double priority = -std::min(d_lo, d_hi);
            if (p == 0 || priority > best_priority) {
                best_pos = p;
                best_priority = priority;
                best_lo = d_lo;
                best_hi = d_hi;
            }
        }
        const std::size_t i = pending[best_pos];
        value[i] = best_lo <= best_hi ? lo : hi;
        fixed[i] = true;
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }

    LogicalSample out{{}, Method::MinimizeEnergy};
    for (std::size_t i = 0; i < n; ++i) out.values[dense.labels()[i]] = value[i];
    return out;
}

namespace {

// readouts indexed by vertex; every vertex of g must have exactly one.
std::vector<const ChainReadout*> by_vertex(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx) {
    if (ctx.graph == nullptr) throw ParameterError("unembedding context has no graph");
    const std::size_t n = ctx.graph->num_vertices();
    std::vector<const ChainReadout*> out(n, nullptr);
    for (const auto& r : readouts) {
        if (r.variable < 0 || static_cast<std::size_t>(r.variable) >= n) {
            throw AssignmentError("readout variable " + std::to_string(r.variable) + " is not a graph vertex");
        }
        out[r.variable] = &r;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (out[v] == nullptr) throw AssignmentError("no readout for vertex " + std::to_string(v));
    }
    return out;
}

bool is_high(const ChainReadout& r) { return r.value() == high_value(r.domain); }

// Shared placement step of the cut and partitioning algorithms. Returns the
// side (-1 or +1) chosen by the neighbour-degree and chain-majority rules,
// or 0 when both tie.
int degree_rule(const Graph& g, const std::vector<int>& side, const ChainReadout& r) {
    int minus = 0;
    int plus = 0;
    for (Vertex w : g.neighbors(r.variable)) {
        if (side[w] < 0) ++minus;
        if (side[w] > 0) ++plus;
    }
    if (minus != plus) return minus < plus ? -1 : 1;
    return r.majority_sign();
}

Bipartition to_bipartition(const std::vector<int>& side) {
    Bipartition b;
    for (std::size_t v = 0; v < side.size(); ++v) (side[v] < 0 ? b.minus : b.plus).push_back(static_cast<Vertex>(v));
    return b;
}

}  // namespace

VertexSet unembed_max_clique(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx) {
    const Graph& g = *ctx.graph;
    const auto chains = by_vertex(readouts, ctx);
    VertexSet clique;
    std::vector<Vertex> broken;
    for (Vertex v = 0; v < static_cast<Vertex>(chains.size()); ++v) {
        if (chains[v]->broken) {
            broken.push_back(v);
        } else if (is_high(*chains[v])) {
            clique.push_back(v);
        }
    }
    if (!is_clique(g, clique)) return {};

    while (!broken.empty()) {
        std::vector<Vertex> candidates;
        for (Vertex x : broken) {
            if (std::all_of(clique.begin(), clique.end(), [&](Vertex c) { return g.adjacent(x, c); })) {
                candidates.push_back(x);
            }
        }
        if (candidates.empty()) break;
        Vertex pick = -1;
        std::size_t pick_degree = 0;
        for (Vertex x : candidates) {
            const auto degree = static_cast<std::size_t>(
                std::count_if(candidates.begin(), candidates.end(), [&](Vertex y) { return g.adjacent(x, y); }));
            // candidates are in increasing id order, so strict comparisons keep the lowest id
            if (pick < 0 || degree > pick_degree ||
                (degree == pick_degree && chains[x]->frac_ones > chains[pick]->frac_ones)) {
                pick = x;
                pick_degree = degree;
            }
        }
        clique.push_back(pick);
        broken.erase(std::find(broken.begin(), broken.end(), pick));
    }
    std::sort(clique.begin(), clique.end());
    return clique;
}

Bipartition unembed_max_cut(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx) {
    const Graph& g = *ctx.graph;
    const auto chains = by_vertex(readouts, ctx);
    std::vector<int> side(chains.size(), 0);
    std::vector<Vertex> order;
    for (Vertex v = 0; v < static_cast<Vertex>(chains.size()); ++v) {
        if (chains[v]->broken) {
            order.push_back(v);
        } else {
            side[v] = is_high(*chains[v]) ? 1 : -1;
        }
    }
    Rng rng(ctx.seed);
    rng.shuffle(order);
    for (Vertex x : order) {
        int s = degree_rule(g, side, *chains[x]);
        if (s == 0) s = (rng.next() >> 63) ? 1 : -1;
        side[x] = s;
    }
    return to_bipartition(side);
}

PartitionResult unembed_graph_partitioning(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx) {
    const Graph& g = *ctx.graph;
    const auto chains = by_vertex(readouts, ctx);
    const std::size_t cap = chains.size() / 2;
    std::vector<int> side(chains.size(), 0);
    std::size_t minus = 0;
    std::size_t plus = 0;
    auto place = [&](Vertex v, int s) {
        side[v] = s;
        ++(s < 0 ? minus : plus);
    };
    auto smaller = [&] { return plus < minus ? 1 : -1; };

    std::vector<Vertex> order;
    for (Vertex v = 0; v < static_cast<Vertex>(chains.size()); ++v) {
        if (chains[v]->broken) {
            order.push_back(v);
        } else {
            place(v, is_high(*chains[v]) ? 1 : -1);
        }
    }
    Rng rng(ctx.seed);
    rng.shuffle(order);
    std::size_t next = 0;
    for (; next < order.size() && minus < cap && plus < cap; ++next) {
        const Vertex x = order[next];
        const int s = degree_rule(g, side, *chains[x]);
        place(x, s != 0 ? s : smaller());
    }
    for (; next < order.size(); ++next) place(order[next], smaller());

    PartitionResult out;
    out.partition = to_bipartition(side);
    out.balanced = (minus > plus ? minus - plus : plus - minus) <= 1;
    return out;
}

VertexSet unembed_vertex_cover(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx) {
    const Graph& g = *ctx.graph;
    const auto chains = by_vertex(readouts, ctx);
    const auto n = static_cast<Vertex>(chains.size());
    enum State : std::uint8_t { Cover, Zero, Open };
    std::vector<State> state(n, Open);
    for (Vertex v = 0; v < n; ++v) {
        if (!chains[v]->broken) state[v] = is_high(*chains[v]) ? Cover : Zero;
    }
    for (const auto& [u, v] : g.edges()) {
        if (state[u] == Zero && state[v] == Zero) {
            VertexSet all(n);
            for (Vertex i = 0; i < n; ++i) all[i] = i;
            return all;
        }
    }
    auto has_zero_neighbor = [&](Vertex v) {
        const auto& nbrs = g.neighbors(v);
        return std::any_of(nbrs.begin(), nbrs.end(), [&](Vertex w) { return state[w] == Zero; });
    };
    std::vector<Vertex> forced;
    for (Vertex v = 0; v < n; ++v) {
        if (state[v] == Open && has_zero_neighbor(v)) forced.push_back(v);
    }
    for (Vertex v : forced) state[v] = Cover;

    std::vector<Vertex> open;
    for (Vertex v = 0; v < n; ++v) {
        if (state[v] == Open) open.push_back(v);
    }
    while (!open.empty()) {
        std::size_t best = 0;
        double best_priority = 0.0;
        for (std::size_t i = 0; i < open.size(); ++i) {
            const Vertex v = open[i];
            const auto& nbrs = g.neighbors(v);
            const auto degree = std::count_if(nbrs.begin(), nbrs.end(), [&](Vertex w) { return state[w] == Open; });
            const double priority = static_cast<double>(degree) + chains[v]->frac_ones;
            if (i == 0 || priority > best_priority) {
                best = i;
                best_priority = priority;
            }
        }
        const Vertex v = open[best];
        state[v] = has_zero_neighbor(v) ? Cover : Zero;
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(best));
    }

    VertexSet cover;
    for (Vertex v = 0; v < n; ++v) {
        if (state[v] == Cover) cover.push_back(v);
    }
    return cover;
}

LogicalSample unembed(Method method, const std::vector<ChainReadout>& readouts, const UnembedContext& ctx,
                      const BQM& model) {
    switch (method) {
        case Method::MajorityVote: return majority_vote(readouts);
        case Method::RandomWeighted: return random_weighted(readouts, ctx.seed);
        case Method::MinimizeEnergy: return minimize_energy(readouts, model);
        case Method::Tailored: break;
    }
    LogicalSample out{{}, Method::Tailored};
    auto mark_members = [&](const VertexSet& members) {
        for (const auto& r : readouts) out.values[r.variable] = 0;
        for (Vertex v : members) out.values[v] = 1;
    };
    auto mark_sides = [&](const Bipartition& b) {
        for (Vertex v : b.minus) out.values[v] = -1;
        for (Vertex v : b.plus) out.values[v] = 1;
    };
    switch (ctx.problem) {
        case ProblemKind::MaxClique: mark_members(unembed_max_clique(readouts, ctx)); break;
        case ProblemKind::MinVertexCover: mark_members(unembed_vertex_cover(readouts, ctx)); break;
        case ProblemKind::MaxCut: mark_sides(unembed_max_cut(readouts, ctx)); break;
        case ProblemKind::GraphPartitioning: mark_sides(unembed_graph_partitioning(readouts, ctx).partition); break;
    }
    return out;
}

Score score_assignment(ProblemKind kind, const Graph& g, const Assignment& values) {
    const auto n = static_cast<Vertex>(g.num_vertices());
    std::vector<Vertex> ones;
    Bipartition sides;
    for (Vertex v = 0; v < n; ++v) {
        auto it = values.find(v);
        if (it == values.end()) throw AssignmentError("no value for vertex " + std::to_string(v));
        if (it->second == 1) {
            ones.push_back(v);
            sides.plus.push_back(v);
        } else {
            sides.minus.push_back(v);
        }
    }
    switch (kind) {
        case ProblemKind::MaxClique: {
            const bool ok = is_clique(g, ones);
            return {ok ? static_cast<double>(ones.size()) : 0.0, ok};
        }
        case ProblemKind::MinVertexCover: {
            const bool ok = is_vertex_cover(g, ones);
            return {ok ? static_cast<double>(ones.size()) : static_cast<double>(n), ok};
        }
        case ProblemKind::MaxCut: return {static_cast<double>(cut_size(g, sides)), true};
        case ProblemKind::GraphPartitioning: {
            const auto diff = static_cast<std::ptrdiff_t>(sides.minus.size()) -
                              static_cast<std::ptrdiff_t>(sides.plus.size());
            return {static_cast<double>(cut_size(g, sides)), diff >= -1 && diff <= 1};
        }
    }
    return {};
}

}  // namespace chainfix
