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
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "chainfix/graph.hpp"

namespace chainfix {

enum class Domain { Qubo, Ising };

std::string_view to_string(Domain d);
Domain parse_domain(std::string_view name);

/// Value a variable takes when "on" (1 or +1) and "off" (0 or -1).
constexpr int high_value(Domain) { return 1; }
constexpr int low_value(Domain d) { return d == Domain::Qubo ? 0 : -1; }

using Variable = std::int32_t;
using Assignment = std::map<Variable, int>;

/// H(x) = sum_i a_i x_i + sum_{i<j} a_ij x_i x_j + offset over x in {0,1}
/// (QUBO) or {-1,+1} (Ising).
///
/// Quadratic keys are stored once as (min, max). Every variable touched by a
/// quadratic term also has a linear entry, possibly zero.
class BinaryQuadraticModel {
 public:
    using QuadraticKey = std::pair<Variable, Variable>;

    explicit BinaryQuadraticModel(Domain domain = Domain::Ising) : domain_(domain) {}

    Domain domain() const { return domain_; }

    void add_variable(Variable v) { linear_.try_emplace(v, 0.0); }
    void add_linear(Variable v, double bias) { linear_[v] += bias; }
    /// Accumulates onto an existing (u, v) entry. Throws ParameterError if u == v.
    void add_quadratic(Variable u, Variable v, double bias);
    void add_offset(double value) { offset_ += value; }
    void set_offset(double value) { offset_ = value; }

    double linear(Variable v) const;
    double quadratic(Variable u, Variable v) const;
    double offset() const { return offset_; }

    const std::map<Variable, double>& linear_terms() const { return linear_; }
    const std::map<QuadraticKey, double>& quadratic_terms() const { return quadratic_; }

    std::size_t num_variables() const { return linear_.size(); }
    std::size_t num_interactions() const { return quadratic_.size(); }
    bool has_variable(Variable v) const { return linear_.contains(v); }
    std::vector<Variable> variables() const;

    /// Free-form numeric annotations; builders record their penalty weights here.
    std::map<std::string, double>& metadata() { return metadata_; }
    const std::map<std::string, double>& metadata() const { return metadata_; }

    friend bool operator==(const BinaryQuadraticModel&, const BinaryQuadraticModel&) = default;

 private:
    Domain domain_;
    std::map<Variable, double> linear_;
    std::map<QuadraticKey, double> quadratic_;
    double offset_ = 0.0;
    std::map<std::string, double> metadata_;
};

using BQM = BinaryQuadraticModel;

/// Throws AssignmentError on missing variables or out-of-domain values.
double energy(const BQM& model, const Assignment& values);

/// Rewrites the model over the other variable domain via x = (s + 1) / 2.
/// Energies agree on corresponding assignments; the same domain is a copy.
BQM convert(const BQM& model, Domain target);

/// Interaction graph of a model whose variables are exactly 0..n-1.
Graph interaction_graph(const BQM& model);

/// QUBO: -1 per vertex and +2 on every non-adjacent pair.
BQM build_max_clique_qubo(const Graph& g);
/// QUBO: sum x_v + 2 sum_{uv in E} (1 - x_u)(1 - x_v), expanded.
BQM build_min_vertex_cover_qubo(const Graph& g);
/// Ising: +1 coupler per edge, zero fields.
BQM build_max_cut_ising(const Graph& g);
/// Ising: A (sum x_v)^2 + sum_{uv in E} (1 - x_u x_v) / 2 with
/// A = min(n, max degree) / 8, or n / 8 on edgeless graphs. A is stored in
/// metadata()["balance_weight"].
BQM build_graph_partitioning_ising(const Graph& g);
BQM build_problem_model(ProblemKind kind, const Graph& g);
Domain problem_domain(ProblemKind kind);

/// Divides every coefficient and the offset by the largest coefficient
/// magnitude. All-zero models are returned unchanged.
BQM scale_to_unit_range(const BQM& model);

/// JSON with fields domain, linear (id -> coeff), quadratic ([u, v, coeff]), offset.
std::string to_json(const BQM& model);
BQM bqm_from_json(std::string_view text);

/// Index-based copy of a model for inner loops.
///
/// Variables are renumbered 0..n-1 in increasing label order. Values passed
/// to the evaluators are in the model's domain.
class DenseModel {
 public:
    DenseModel() = default;
    explicit DenseModel(const BQM& model);

    Domain domain() const { return domain_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<Variable>& labels() const { return labels_; }
    /// Index of a label, or -1 when absent.
    std::ptrdiff_t index_of(Variable label) const;

    double linear(std::size_t i) const { return linear_[i]; }
    const std::vector<std::pair<std::uint32_t, double>>& neighbors(std::size_t i) const {
        return neighbors_[i];
    }
    double offset() const { return offset_; }

    double energy(std::span<const std::int8_t> values) const;
    /// h_i + sum_j J_ij x_j.
    double local_field(std::span<const std::int8_t> values, std::size_t i) const;
    /// Energy change when variable i moves to its other value.
    double flip_delta(std::span<const std::int8_t> values, std::size_t i) const;

 private:
    Domain domain_ = Domain::Ising;
    std::vector<Variable> labels_;
    std::vector<double> linear_;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> neighbors_;
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> quadratic_;
    double offset_ = 0.0;
};

}  // namespace chainfix
