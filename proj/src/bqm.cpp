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

#include "chainfix/bqm.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <json.hpp>

#include "chainfix/errors.hpp"

namespace chainfix {

using nlohmann::json;

std::string_view to_string(Domain d) { return d == Domain::Qubo ? "QUBO" : "ISING"; }

Domain parse_domain(std::string_view name) {
    if (name == "QUBO" || name == "qubo" || name == "BINARY") return Domain::Qubo;
    if (name == "ISING" || name == "ising" || name == "SPIN") return Domain::Ising;
    throw ParameterError("unknown domain '" + std::string(name) + "'");
}

void BinaryQuadraticModel::add_quadratic(Variable u, Variable v, double bias) {
    if (u == v) throw ParameterError("quadratic term pairs variable " + std::to_string(u) + " with itself");
    if (u > v) std::swap(u, v);
    add_variable(u);
    add_variable(v);
    quadratic_[{u, v}] += bias;
}

double BinaryQuadraticModel::linear(Variable v) const {
    auto it = linear_.find(v);
    return it == linear_.end() ? 0.0 : it->second;
}

double BinaryQuadraticModel::quadratic(Variable u, Variable v) const {
    if (u > v) std::swap(u, v);
    auto it = quadratic_.find({u, v});
    return it == quadratic_.end() ? 0.0 : it->second;
}

std::vector<Variable> BinaryQuadraticModel::variables() const {
    std::vector<Variable> out;
    out.reserve(linear_.size());
    for (const auto& [v, _] : linear_) out.push_back(v);
    return out;
}

double energy(const BQM& model, const Assignment& values) {
    auto value_of = [&](Variable v) {
        auto it = values.find(v);
        if (it == values.end()) throw AssignmentError("assignment is missing variable " + std::to_string(v));
        const int x = it->second;
        const bool ok = model.domain() == Domain::Qubo ? (x == 0 || x == 1) : (x == -1 || x == 1);
        if (!ok) {
            throw AssignmentError("value " + std::to_string(x) + " for variable " + std::to_string(v) +
                                  " is outside the " + std::string(to_string(model.domain())) + " domain");
        }
        return static_cast<double>(x);
    };
    double e = model.offset();
    for (const auto& [v, bias] : model.linear_terms()) e += bias * value_of(v);
    for (const auto& [key, bias] : model.quadratic_terms()) e += bias * value_of(key.first) * value_of(key.second);
    return e;
}

BQM convert(const BQM& model, Domain target) {
    if (model.domain() == target) return model;
    BQM out(target);
    out.metadata() = model.metadata();
    out.add_offset(model.offset());
    for (const auto& [v, _] : model.linear_terms()) out.add_variable(v);
    if (target == Domain::Ising) {
        // x = (s + 1) / 2
        for (const auto& [v, a] : model.linear_terms()) {
            out.add_linear(v, a / 2.0);
            out.add_offset(a / 2.0);
        }
        for (const auto& [key, a] : model.quadratic_terms()) {
            out.add_quadratic(key.first, key.second, a / 4.0);
            out.add_linear(key.first, a / 4.0);
            out.add_linear(key.second, a / 4.0);
            out.add_offset(a / 4.0);
        }
    } else {
        // s = 2x - 1
        for (const auto& [v, h] : model.linear_terms()) {
            out.add_linear(v, 2.0 * h);
            out.add_offset(-h);
        }
        for (const auto& [key, j] : model.quadratic_terms()) {
            out.add_quadratic(key.first, key.second, 4.0 * j);
            out.add_linear(key.first, -2.0 * j);
            out.add_linear(key.second, -2.0 * j);
            out.add_offset(j);
        }
    }
    return out;
}

Graph interaction_graph(const BQM& model) {
    const auto n = model.num_variables();
    for (const auto& [v, _] : model.linear_terms()) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) {
            throw ParameterError("interaction_graph needs variables labelled 0..n-1");
        }
    }
    Graph g(n);
    for (const auto& [key, bias] : model.quadratic_terms()) {
        if (bias != 0.0) g.add_edge(key.first, key.second);
    }
    return g;
}

BQM build_max_clique_qubo(const Graph& g) {
    BQM m(Domain::Qubo);
    const auto n = static_cast<Vertex>(g.num_vertices());
    for (Vertex v = 0; v < n; ++v) m.add_linear(v, -1.0);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (!g.adjacent(u, v)) m.add_quadratic(u, v, 2.0);
        }
    }
    m.metadata()["penalty_weight"] = 2.0;
    return m;
}

BQM build_min_vertex_cover_qubo(const Graph& g) {
    BQM m(Domain::Qubo);
    const auto n = static_cast<Vertex>(g.num_vertices());
    for (Vertex v = 0; v < n; ++v) m.add_linear(v, 1.0);
    // 2 (1 - x_u)(1 - x_v) = 2 - 2 x_u - 2 x_v + 2 x_u x_v
    for (const auto& [u, v] : g.edges()) {
        m.add_offset(2.0);
        m.add_linear(u, -2.0);
        m.add_linear(v, -2.0);
        m.add_quadratic(u, v, 2.0);
    }
    m.metadata()["penalty_weight"] = 2.0;
    return m;
}

BQM build_max_cut_ising(const Graph& g) {
    BQM m(Domain::Ising);
    const auto n = static_cast<Vertex>(g.num_vertices());
    for (Vertex v = 0; v < n; ++v) m.add_variable(v);
    for (const auto& [u, v] : g.edges()) m.add_quadratic(u, v, 1.0);
    return m;
}

BQM build_graph_partitioning_ising(const Graph& g) {
    BQM m(Domain::Ising);
    const std::size_t n = g.num_vertices();
    const double a = g.num_edges() == 0 ? static_cast<double>(n) / 8.0
                                        : static_cast<double>(std::min(n, g.max_degree())) / 8.0;
    const auto nv = static_cast<Vertex>(n);
    for (Vertex v = 0; v < nv; ++v) m.add_variable(v);
    // A (sum x)^2 = A n + 2 A sum_{u<v} x_u x_v
    m.add_offset(a * static_cast<double>(n));
    for (Vertex u = 0; u < nv; ++u) {
        for (Vertex v = u + 1; v < nv; ++v) m.add_quadratic(u, v, 2.0 * a);
    }
    for (const auto& [u, v] : g.edges()) {
        m.add_offset(0.5);
        m.add_quadratic(u, v, -0.5);
    }
    m.metadata()["balance_weight"] = a;
    return m;
}

BQM build_problem_model(ProblemKind kind, const Graph& g) {
    switch (kind) {
        case ProblemKind::MaxClique: return build_max_clique_qubo(g);
        case ProblemKind::MaxCut: return build_max_cut_ising(g);
        case ProblemKind::MinVertexCover: return build_min_vertex_cover_qubo(g);
        case ProblemKind::GraphPartitioning: return build_graph_partitioning_ising(g);
    }
    throw ParameterError("unknown problem kind");
}

Domain problem_domain(ProblemKind kind) {
    return kind == ProblemKind::MaxClique || kind == ProblemKind::MinVertexCover ? Domain::Qubo : Domain::Ising;
}

BQM scale_to_unit_range(const BQM& model) {
    double largest = 0.0;
    for (const auto& [_, b] : model.linear_terms()) largest = std::max(largest, std::abs(b));
    for (const auto& [_, b] : model.quadratic_terms()) largest = std::max(largest, std::abs(b));
    if (largest == 0.0) return model;
    BQM out(model.domain());
    out.metadata() = model.metadata();
    for (const auto& [v, b] : model.linear_terms()) out.add_linear(v, b / largest);
    for (const auto& [key, b] : model.quadratic_terms()) out.add_quadratic(key.first, key.second, b / largest);
    out.set_offset(model.offset() / largest);
    return out;
}

std::string to_json(const BQM& model) {
    json doc;
    doc["domain"] = std::string(to_string(model.domain()));
    json linear = json::object();
    for (const auto& [v, b] : model.linear_terms()) linear[std::to_string(v)] = b;
    doc["linear"] = std::move(linear);
    json quadratic = json::array();
    for (const auto& [key, b] : model.quadratic_terms()) quadratic.push_back({key.first, key.second, b});
    doc["quadratic"] = std::move(quadratic);
    doc["offset"] = model.offset();
    if (!model.metadata().empty()) doc["metadata"] = model.metadata();
    return doc.dump();
}

BQM bqm_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
        BQM m(parse_domain(doc.at("domain").get<std::string>()));
        for (const auto& [key, value] : doc.at("linear").items()) {
            m.add_linear(static_cast<Variable>(std::stol(key)), value.get<double>());
        }
        for (const auto& term : doc.at("quadratic")) {
            if (!term.is_array() || term.size() != 3) throw FormatError("quadratic entries must be [u, v, coeff]");
            m.add_quadratic(term[0].get<Variable>(), term[1].get<Variable>(), term[2].get<double>());
        }
        m.set_offset(doc.at("offset").get<double>());
        if (doc.contains("metadata")) m.metadata() = doc["metadata"].get<std::map<std::string, double>>();
        return m;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model document: ") + e.what());
    } catch (const std::logic_error& e) {
        throw FormatError(std::string("malformed model document: ") + e.what());
    }
}

DenseModel::DenseModel(const BQM& model)
    : domain_(model.domain()), labels_(model.variables()), offset_(model.offset()) {
    linear_.reserve(labels_.size());
    for (const auto& [_, b] : model.linear_terms()) linear_.push_back(b);
    neighbors_.resize(labels_.size());
    for (const auto& [key, b] : model.quadratic_terms()) {
        const auto i = static_cast<std::uint32_t>(index_of(key.first));
        const auto j = static_cast<std::uint32_t>(index_of(key.second));
        neighbors_[i].emplace_back(j, b);
        neighbors_[j].emplace_back(i, b);
        quadratic_.emplace_back(i, j, b);
    }
}

std::ptrdiff_t DenseModel::index_of(Variable label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return it - labels_.begin();
}

double DenseModel::energy(std::span<const std::int8_t> values) const {
    double e = offset_;
    for (std::size_t i = 0; i < linear_.size(); ++i) e += linear_[i] * values[i];
    for (const auto& [i, j, b] : quadratic_) e += b * values[i] * values[j];
    return e;
}

double DenseModel::local_field(std::span<const std::int8_t> values, std::size_t i) const {
    double field = linear_[i];
    for (const auto& [j, b] : neighbors_[i]) field += b * values[j];
    return field;
}

double DenseModel::flip_delta(std::span<const std::int8_t> values, std::size_t i) const {
    const double field = local_field(values, i);
    if (domain_ == Domain::Ising) return -2.0 * values[i] * field;
    return (1 - 2 * values[i]) * field;
}

}  // namespace chainfix
