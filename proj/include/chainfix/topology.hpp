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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chainfix/bqm.hpp"
#include "chainfix/graph.hpp"

namespace chainfix {

using Qubit = std::int32_t;
using Coupler = std::pair<Qubit, Qubit>;

/// rows x cols grid of cells, each a complete bipartite K_{shore,shore}.
struct ChimeraShape {
    int rows = 0;
    int cols = 0;
    int shore = 0;

    friend bool operator==(const ChimeraShape&, const ChimeraShape&) = default;
};

/// Position of a qubit inside a Chimera graph. side 0 is the vertical shore
/// (coupled to the cell below), side 1 the horizontal shore (coupled to the
/// cell on the right).
struct ChimeraCoordinate {
    int row = 0;
    int col = 0;
    int side = 0;
    int index = 0;
};

/// Physical qubit connectivity. Qubits are 0..num_qubits()-1.
class HardwareGraph {
 public:
    HardwareGraph(ChimeraShape shape, std::size_t num_qubits, std::vector<Coupler> couplers);

    const ChimeraShape& shape() const { return shape_; }
    std::size_t num_qubits() const { return adjacency_.size(); }
    bool contains(Qubit q) const { return q >= 0 && static_cast<std::size_t>(q) < num_qubits(); }
    const std::vector<Coupler>& couplers() const { return couplers_; }
    const std::vector<Qubit>& neighbors(Qubit q) const { return adjacency_.at(q); }
    bool has_coupler(Qubit a, Qubit b) const;

    /// ((row * cols + col) * 2 + side) * shore + index.
    Qubit linear_index(const ChimeraCoordinate& c) const;
    ChimeraCoordinate coordinate(Qubit q) const;

 private:
    ChimeraShape shape_;
    std::vector<std::vector<Qubit>> adjacency_;
    std::vector<Coupler> couplers_;
};

/// Throws ParameterError on non-positive dimensions.
HardwareGraph chimera(int rows, int cols, int shore);

/// Logical variable -> chain of physical qubits, in path order.
class Embedding {
 public:
    Embedding() = default;
    explicit Embedding(std::map<Variable, std::vector<Qubit>> chains) : chains_(std::move(chains)) {}

    const std::map<Variable, std::vector<Qubit>>& chains() const { return chains_; }
    /// Throws EmbeddingError when v has no chain.
    const std::vector<Qubit>& chain(Variable v) const;
    bool contains(Variable v) const { return chains_.contains(v); }
    std::size_t size() const { return chains_.size(); }
    std::size_t max_chain_length() const;
    std::size_t num_qubits() const;

    friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
    std::map<Variable, std::vector<Qubit>> chains_;
};

/// Clique minor for variables 0..k-1 on a Chimera graph with m = min(rows,
/// cols) and shore t.
///
/// For k <= t*m this is the native triangle embedding: chain (b, i) runs down
/// column b through rows 0..b on vertical index i, then right along row b
/// through columns b..m-1 on horizontal index i. Every chain has m + 1
/// qubits.
///
/// k = t*m + 1 uses a shifted triangle: blocks 0..m-2 turn one row lower (m + 2
/// qubits), the last block lives on row 0's horizontal lines, and the extra
/// chain takes one vertical line of the last column. No K_{tm+1} with all
/// chains of length m + 1 exists for m <= 3, t >= 2.
///
/// Throws CapacityError when k > t*m + 1.
Embedding clique_embedding(std::size_t k, const HardwareGraph& hw);

struct EmbeddingViolation {
    enum class Kind { MissingVariable, EmptyChain, UnknownQubit, OverlappingChains, DisconnectedChain, MissingLogicalEdge };
    Kind kind;
    Variable u = -1;
    Variable v = -1;
    Qubit qubit = -1;
    std::string message;
};

std::string_view to_string(EmbeddingViolation::Kind kind);

/// Empty result means `e` is a valid minor embedding of `logical` into `hw`.
std::vector<EmbeddingViolation> validate_embedding(const Embedding& e, const Graph& logical, const HardwareGraph& hw);

inline constexpr double kDefaultTorquePrefactor = 1.414;

/// prefactor * RMS(J) * sqrt(average degree of `logical`), with J the
/// quadratic coefficients of the Ising form of `model`. Models without
/// quadratic terms get `prefactor`.
double uniform_torque_compensation(const BQM& model, const Graph& logical,
                                   double prefactor = kDefaultTorquePrefactor);

/// Ising model over physical qubits produced by embed_bqm.
struct PhysicalModel {
    BQM ising{Domain::Ising};
    double chain_strength = 0.0;
    Embedding embedding;
    DenseModel dense;
    /// Hardware couplers whose endpoints share a chain; each carries -chain_strength.
    std::size_t num_chain_couplers = 0;
};

/// Spreads an Ising model over the embedding: fields split equally across
/// chain qubits, each logical coupler split equally across every coupler
/// between the two chains, every intra-chain coupler set to -chain_strength.
///
/// Throws DomainError for QUBO input, ParameterError for a non-positive chain
/// strength and EmbeddingError when the embedding cannot carry the model.
PhysicalModel embed_bqm(const BQM& model, const Embedding& e, const HardwareGraph& hw, double chain_strength);

/// JSON object "variable" -> [qubits].
std::string to_json(const Embedding& e);
Embedding embedding_from_json(std::string_view text);

}  // namespace chainfix
