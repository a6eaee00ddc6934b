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

#include "chainfix/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <json.hpp>

#include "chainfix/errors.hpp"

namespace chainfix {

HardwareGraph::HardwareGraph(ChimeraShape shape, std::size_t num_qubits, std::vector<Coupler> couplers)
    : shape_(shape), adjacency_(num_qubits), couplers_(std::move(couplers)) {
    for (auto& [a, b] : couplers_) {
        if (!contains(a) || !contains(b)) throw ParameterError("coupler references an unknown qubit");
        if (a == b) throw ParameterError("self-coupler on qubit " + std::to_string(a));
        if (a > b) std::swap(a, b);
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    std::sort(couplers_.begin(), couplers_.end());
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool HardwareGraph::has_coupler(Qubit a, Qubit b) const {
    if (!contains(a) || !contains(b)) return false;
    const auto& nbrs = adjacency_[a];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

Qubit HardwareGraph::linear_index(const ChimeraCoordinate& c) const {
    return ((c.row * shape_.cols + c.col) * 2 + c.side) * shape_.shore + c.index;
}

ChimeraCoordinate HardwareGraph::coordinate(Qubit q) const {
    const int t = shape_.shore;
    ChimeraCoordinate c;
    c.index = q % t;
    q /= t;
    c.side = q % 2;
    q /= 2;
    c.col = q % shape_.cols;
    c.row = q / shape_.cols;
    return c;
}

HardwareGraph chimera(int rows, int cols, int shore) {
    if (rows < 1 || cols < 1 || shore < 1) throw ParameterError("chimera dimensions must be positive");
    const ChimeraShape shape{rows, cols, shore};
    auto id = [&](int r, int c, int side, int k) { return ((r * cols + c) * 2 + side) * shore + k; };
    std::vector<Coupler> couplers;
    couplers.reserve(static_cast<std::size_t>(rows) * cols * shore * (shore + 2));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            for (int i = 0; i < shore; ++i) {
                for (int j = 0; j < shore; ++j) couplers.emplace_back(id(r, c, 0, i), id(r, c, 1, j));
            }
            for (int k = 0; k < shore; ++k) {
                if (r + 1 < rows) couplers.emplace_back(id(r, c, 0, k), id(r + 1, c, 0, k));
                if (c + 1 < cols) couplers.emplace_back(id(r, c, 1, k), id(r, c + 1, 1, k));
            }
        }
    }
    return HardwareGraph(shape, static_cast<std::size_t>(rows) * cols * 2 * shore, std::move(couplers));
}

const std::vector<Qubit>& Embedding::chain(Variable v) const {
    auto it = chains_.find(v);
    if (it == chains_.end()) throw EmbeddingError("no chain for variable " + std::to_string(v));
    return it->second;
}

std::size_t Embedding::max_chain_length() const {
    std::size_t best = 0;
    for (const auto& [_, c] : chains_) best = std::max(best, c.size());
    return best;
}

std::size_t Embedding::num_qubits() const {
    std::size_t total = 0;
    for (const auto& [_, c] : chains_) total += c.size();
    return total;
}

Embedding clique_embedding(std::size_t k, const HardwareGraph& hw) {
    const int m = std::min(hw.shape().rows, hw.shape().cols);
    const int t = hw.shape().shore;
    const auto native = static_cast<std::size_t>(t) * m;
    if (k > native + 1) {
        throw CapacityError("K" + std::to_string(k) + " does not fit; chimera(" + std::to_string(m) + ", " +
                            std::to_string(m) + ", " + std::to_string(t) + ") holds at most K" +
                            std::to_string(native + 1));
    }
    auto vert = [&](int r, int c, int i) { return hw.linear_index({r, c, 0, i}); };
    auto horiz = [&](int r, int c, int i) { return hw.linear_index({r, c, 1, i}); };

    std::map<Variable, std::vector<Qubit>> chains;
    if (k <= native) {
        for (std::size_t v = 0; v < k; ++v) {
            const int b = static_cast<int>(v) / t;
            const int i = static_cast<int>(v) % t;
            auto& chain = chains[static_cast<Variable>(v)];
            for (int r = 0; r <= b; ++r) chain.push_back(vert(r, b, i));
            for (int c = b; c < m; ++c) chain.push_back(horiz(b, c, i));
        }
        return Embedding(std::move(chains));
    }

    Variable v = 0;
    // Blocks 0..m-2: down column b to row b+1, then along row b+1.
    for (int b = 0; b + 1 < m; ++b) {
        for (int i = 0; i < t; ++i, ++v) {
            auto& chain = chains[v];
            for (int r = 0; r <= b + 1; ++r) chain.push_back(vert(r, b, i));
            for (int c = b; c < m; ++c) chain.push_back(horiz(b + 1, c, i));
        }
    }
    // Last block on row 0. Index t-1 skips the vertical stub; the others' stubs
    // cross its horizontal line in cell (0, m-1).
    for (int i = 0; i < t; ++i, ++v) {
        auto& chain = chains[v];
        for (int c = 0; c < m; ++c) chain.push_back(horiz(0, c, i));
        if (i + 1 < t) chain.push_back(vert(0, m - 1, i));
    }
    auto& extra = chains[v];
    for (int r = 0; r < m; ++r) extra.push_back(vert(r, m - 1, t - 1));
    return Embedding(std::move(chains));
}

std::string_view to_string(EmbeddingViolation::Kind kind) {
    using K = EmbeddingViolation::Kind;
    switch (kind) {
        case K::MissingVariable: return "missing variable";
        case K::EmptyChain: return "empty chain";
        case K::UnknownQubit: return "unknown qubit";
        case K::OverlappingChains: return "overlapping chains";
        case K::DisconnectedChain: return "disconnected chain";
        case K::MissingLogicalEdge: return "missing logical edge";
    }
    return "unknown";
}

namespace {

using Kind = EmbeddingViolation::Kind;

struct ChainIndex {
    // owner[q] is the position of q's chain in map order, or -1.
    std::vector<std::int64_t> owner;
    std::vector<Variable> variables;
};

ChainIndex check_chains(const Embedding& e, const HardwareGraph& hw, std::vector<EmbeddingViolation>& out) {
    ChainIndex idx{std::vector<std::int64_t>(hw.num_qubits(), -1), {}};
    std::int64_t pos = 0;
    for (const auto& [var, chain] : e.chains()) {
        idx.variables.push_back(var);
        if (chain.empty()) {
            out.push_back({Kind::EmptyChain, var, -1, -1, "chain of variable " + std::to_string(var) + " is empty"});
        }
        for (Qubit q : chain) {
            if (!hw.contains(q)) {
                out.push_back({Kind::UnknownQubit, var, -1, q,
                               "qubit " + std::to_string(q) + " of variable " + std::to_string(var) +
                                   " is not in the hardware graph"});
                continue;
            }
            if (idx.owner[q] >= 0) {
                const Variable other = idx.variables[idx.owner[q]];
                out.push_back({Kind::OverlappingChains, other, var, q,
                               "qubit " + std::to_string(q) + " is shared by variables " + std::to_string(other) +
                                   " and " + std::to_string(var)});
                continue;
            }
            idx.owner[q] = pos;
        }
        ++pos;
    }
    pos = 0;
    for (const auto& [var, chain] : e.chains()) {
        std::vector<Qubit> members;
        for (Qubit q : chain) {
            if (hw.contains(q) && idx.owner[q] == pos) members.push_back(q);
        }
        if (!members.empty()) {
            std::vector<Qubit> stack{members.front()};
            std::vector<Qubit> seen{members.front()};
            while (!stack.empty()) {
                const Qubit q = stack.back();
                stack.pop_back();
                for (Qubit w : hw.neighbors(q)) {
                    if (idx.owner[w] == pos && std::find(seen.begin(), seen.end(), w) == seen.end()) {
                        seen.push_back(w);
                        stack.push_back(w);
                    }
                }
            }
            if (seen.size() != members.size()) {
                out.push_back({Kind::DisconnectedChain, var, -1, -1,
                               "chain of variable " + std::to_string(var) + " is disconnected"});
            }
        }
        ++pos;
    }
    return idx;
}

bool chains_coupled(const Embedding& e, const ChainIndex& idx, const HardwareGraph& hw, Variable u, Variable v) {
    const auto target = std::distance(e.chains().begin(), e.chains().find(v));
    for (Qubit q : e.chain(u)) {
        if (!hw.contains(q)) continue;
        for (Qubit w : hw.neighbors(q)) {
            if (idx.owner[w] == target) return true;
        }
    }
    return false;
}

}  // namespace

std::vector<EmbeddingViolation> validate_embedding(const Embedding& e, const Graph& logical, const HardwareGraph& hw) {
    std::vector<EmbeddingViolation> out;
    const auto n = static_cast<Vertex>(logical.num_vertices());
    for (Vertex v = 0; v < n; ++v) {
        if (!e.contains(v)) {
            out.push_back({Kind::MissingVariable, v, -1, -1, "variable " + std::to_string(v) + " has no chain"});
        }
    }
    const ChainIndex idx = check_chains(e, hw, out);
    for (const auto& [u, v] : logical.edges()) {
        if (!e.contains(u) || !e.contains(v)) continue;
        if (!chains_coupled(e, idx, hw, u, v)) {
            out.push_back({Kind::MissingLogicalEdge, u, v, -1,
                           "no coupler joins the chains of " + std::to_string(u) + " and " + std::to_string(v)});
        }
    }
    return out;
}

double uniform_torque_compensation(const BQM& model, const Graph& logical, double prefactor) {
    const BQM ising = convert(model, Domain::Ising);
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (const auto& [_, j] : ising.quadratic_terms()) {
        if (j == 0.0) continue;
        sum_sq += j * j;
        ++count;
    }
    if (count == 0 || logical.num_vertices() == 0) return prefactor;
    const double rms = std::sqrt(sum_sq / static_cast<double>(count));
    const double avg_degree = 2.0 * static_cast<double>(logical.num_edges()) / static_cast<double>(logical.num_vertices());
    return prefactor * rms * std::sqrt(avg_degree);
}

PhysicalModel embed_bqm(const BQM& model, const Embedding& e, const HardwareGraph& hw, double chain_strength) {
    if (model.domain() != Domain::Ising) throw DomainError("embed_bqm expects an Ising model; convert it first");
    if (!(chain_strength > 0.0)) throw ParameterError("chain strength must be positive");
    for (const auto& [v, _] : model.linear_terms()) {
        if (!e.contains(v)) throw EmbeddingError("variable " + std::to_string(v) + " has no chain");
    }
    std::vector<EmbeddingViolation> problems;
    const ChainIndex idx = check_chains(e, hw, problems);
    if (!problems.empty()) throw EmbeddingError(problems.front().message);

    PhysicalModel pm;
    pm.chain_strength = chain_strength;
    pm.embedding = e;
    BQM& out = pm.ising;
    out.set_offset(model.offset());

    for (const auto& [var, chain] : e.chains()) {
        const double h = model.linear(var) / static_cast<double>(chain.size());
        for (Qubit q : chain) out.add_linear(q, h);
    }
    for (const auto& [key, j] : model.quadratic_terms()) {
        const auto target = std::distance(e.chains().begin(), e.chains().find(key.second));
        std::vector<Coupler> between;
        for (Qubit q : e.chain(key.first)) {
            for (Qubit w : hw.neighbors(q)) {
                if (idx.owner[w] == target) between.emplace_back(q, w);
            }
        }
        if (between.empty()) {
            throw EmbeddingError("no coupler joins the chains of " + std::to_string(key.first) + " and " +
                                 std::to_string(key.second));
        }
        const double share = j / static_cast<double>(between.size());
        for (const auto& [a, b] : between) out.add_quadratic(a, b, share);
    }
    for (const auto& [var, chain] : e.chains()) {
        for (Qubit q : chain) {
            for (Qubit w : hw.neighbors(q)) {
                if (w > q && idx.owner[w] == idx.owner[q]) {
                    out.add_quadratic(q, w, -chain_strength);
                    ++pm.num_chain_couplers;
                }
            }
        }
    }
    pm.dense = DenseModel(out);
    return pm;
}

std::string to_json(const Embedding& e) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [v, chain] : e.chains()) doc[std::to_string(v)] = chain;
    return doc.dump();
}

Embedding embedding_from_json(std::string_view text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        if (!doc.is_object()) throw FormatError("embedding document must be a JSON object");
        std::map<Variable, std::vector<Qubit>> chains;
        for (const auto& [key, value] : doc.items()) {
            chains[static_cast<Variable>(std::stol(key))] = value.get<std::vector<Qubit>>();
        }
        return Embedding(std::move(chains));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed embedding document: ") + e.what());
    } catch (const std::logic_error& e) {
        throw FormatError(std::string("malformed embedding document: ") + e.what());
    }
}

}  // namespace chainfix
