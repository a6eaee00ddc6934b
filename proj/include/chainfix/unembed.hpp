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
#include <string_view>
#include <vector>

#include "chainfix/bqm.hpp"
#include "chainfix/graph.hpp"
#include "chainfix/sampler.hpp"
#include "chainfix/topology.hpp"

namespace chainfix {

/// Values read from one chain, in chain order and in the logical domain.
struct ChainReadout {
    Variable variable = 0;
    std::vector<int> values;
    bool broken = false;
    /// Fraction of values equal to 1 (+1 for Ising).
    double frac_ones = 0.0;
    std::size_t length = 0;
    Domain domain = Domain::Ising;

    /// Common value of an unbroken chain.
    int value() const { return values.front(); }
    /// +1 when more values are high, -1 when more are low, 0 on a tie.
    int majority_sign() const;
};

/// Builds a readout from raw values; throws ParameterError on an empty chain
/// or values outside the domain.
ChainReadout make_readout(Variable variable, std::vector<int> values, Domain domain);

/// One readout per chain, in variable order. Ising spins are mapped to
/// {0, 1} for QUBO readouts. Throws AssignmentError when a chain qubit is
/// missing from the sample.
std::vector<ChainReadout> decompose(const PhysicalSample& sample, const Embedding& e, Domain domain);

enum class Method { MajorityVote, RandomWeighted, MinimizeEnergy, Tailored };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);
inline constexpr Method kAllMethods[] = {Method::MajorityVote, Method::RandomWeighted, Method::MinimizeEnergy,
                                         Method::Tailored};

struct LogicalSample {
    Assignment values;
    Method method = Method::MajorityVote;
};

struct UnembedContext {
    const Graph* graph = nullptr;
    ProblemKind problem = ProblemKind::MaxCut;
    std::uint64_t seed = 0;
};

/// Modal value per chain; ties resolve to 1 (+1 for Ising).
LogicalSample majority_vote(const std::vector<ChainReadout>& readouts);

/// Broken chains take 1 with probability frac_ones.
LogicalSample random_weighted(const std::vector<ChainReadout>& readouts, std::uint64_t seed);

/// Greedy chain resolution against `model`. Unbroken chains form the
/// determined set. Each broken chain i gets v_i(low) and v_i(high), the
/// energy of the terms inside the determined set once i joins it with that
/// value, and priority v0 - min(v_i(low), v_i(high)). The chain of highest
/// priority (lowest id on ties) is fixed to low iff v_i(low) <= v_i(high),
/// joins the determined set, and all priorities are recomputed.
///
/// Throws AssignmentError when model and readouts cover different
/// variables and DomainError when their domains differ.
LogicalSample minimize_energy(const std::vector<ChainReadout>& readouts, const BQM& model);

/// Clique grown from the unbroken 1-chains; empty when those are not a
/// clique. Candidates are broken vertices adjacent to every clique member.
/// The pick maximizes degree inside the candidate set, then frac_ones, then
/// prefers the lowest id. Stops when no candidate is left.
VertexSet unembed_max_clique(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx);

/// Unbroken spins fix the initial sides. Broken vertices, in seeded random
/// order, join the side holding fewer of their placed neighbours; ties go to
/// the chain's majority, then to a seeded coin.
Bipartition unembed_max_cut(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx);

struct PartitionResult {
    Bipartition partition;
    /// ||minus| - |plus|| <= 1.
    bool balanced = false;
};

/// As unembed_max_cut while both sides stay below floor(|V| / 2), with
/// remaining ties sent to the smaller side. Afterwards every unplaced vertex
/// goes to the currently smaller side (the minus side on equal sizes).
PartitionResult unembed_graph_partitioning(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx);

/// Cover grown from the unbroken 1-chains. Returns every vertex when two
/// unbroken 0-chains share an edge. Broken neighbours of 0-vertices join the
/// cover; the rest are taken by decreasing deg_V(v) + frac_ones (lowest id on
/// ties, deg_V recomputed each step) and join the cover iff they have a
/// 0-neighbour.
VertexSet unembed_vertex_cover(const std::vector<ChainReadout>& readouts, const UnembedContext& ctx);

/// Runs one method. Tailored results are returned as assignments: members of
/// the clique or cover are 1, partition sides are -1 (minus) and +1 (plus).
LogicalSample unembed(Method method, const std::vector<ChainReadout>& readouts, const UnembedContext& ctx,
                      const BQM& model);

/// Problem objective of a logical assignment and whether it is a valid
/// solution. Infeasible cliques score 0, infeasible covers |V|; partitions
/// report their cut with feasible meaning balanced.
struct Score {
    double objective = 0.0;
    bool feasible = false;
};

Score score_assignment(ProblemKind kind, const Graph& g, const Assignment& values);

}  // namespace chainfix
