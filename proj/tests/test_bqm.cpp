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

#include <catch_amalgamated.hpp>

#include <limits>
#include <set>

#include "chainfix/bqm.hpp"
#include "chainfix/errors.hpp"
#include "support.hpp"

using namespace chainfix;
using namespace chainfix::testing;
using Catch::Matchers::WithinAbs;

namespace {

BQM qubo_pair() {
    BQM m(Domain::Qubo);
    m.add_linear(0, -1.0);
    m.add_linear(1, -1.0);
    m.add_quadratic(0, 1, 2.0);
    return m;
}

// Minimum energy and the set of minimizing assignments (as masks).
std::pair<double, std::set<std::uint64_t>> argmin(const BQM& m, std::size_t n) {
    const int lo = low_value(m.domain());
    double best = std::numeric_limits<double>::infinity();
    std::set<std::uint64_t> at;
    std::uint64_t mask = 0;
    for_each_assignment(n, lo, 1, [&](const Assignment& a) {
        const double e = energy(m, a);
        if (e < best - 1e-12) {
            best = e;
            at = {mask};
        } else if (std::abs(e - best) <= 1e-12) {
            at.insert(mask);
        }
        ++mask;
    });
    return {best, at};
}

}  // namespace

TEST_CASE("energy evaluation") {
    const BQM m = qubo_pair();
    CHECK(energy(m, {{0, 1}, {1, 1}}) == 0.0);
    CHECK(energy(m, {{0, 1}, {1, 0}}) == -1.0);
    CHECK_THROWS_AS(energy(m, {{0, 1}}), AssignmentError);
    CHECK_THROWS_AS(energy(m, {{0, 1}, {1, -1}}), AssignmentError);

    const BQM k3 = build_max_cut_ising(complete_graph(3));
    CHECK(energy(k3, {{0, 1}, {1, 1}, {2, 1}}) == 3.0);
}

TEST_CASE("quadratic terms are unordered and accumulate") {
    BQM m(Domain::Ising);
    m.add_quadratic(2, 1, 1.5);
    m.add_quadratic(1, 2, 0.5);
    CHECK(m.quadratic(1, 2) == 2.0);
    CHECK(m.quadratic(2, 1) == 2.0);
    CHECK(m.num_interactions() == 1);
    CHECK(m.has_variable(1));
    CHECK(m.linear(2) == 0.0);
    CHECK_THROWS_AS(m.add_quadratic(3, 3, 1.0), ParameterError);
}

TEST_CASE("convert") {
    const BQM m = qubo_pair();
    CHECK(convert(m, Domain::Qubo) == m);

    BQM one(Domain::Qubo);
    one.add_linear(0, 1.0);
    const BQM s = convert(one, Domain::Ising);
    CHECK(s.linear(0) == 0.5);
    CHECK(s.offset() == 0.5);
    CHECK(energy(one, {{0, 1}}) == 1.0);
    CHECK(energy(s, {{0, 1}}) == 1.0);

    for (Domain d : {Domain::Qubo, Domain::Ising}) {
        const RawModel raw = random_raw_model(8, d, 17 + static_cast<int>(d));
        const BQM model = raw.to_bqm();
        const BQM other = convert(model, d == Domain::Qubo ? Domain::Ising : Domain::Qubo);
        const BQM back = convert(other, d);
        for_each_assignment(8, 0, 1, [&](const Assignment& bits) {
            const Assignment spins = to_spins(bits);
            const Assignment& mine = d == Domain::Qubo ? bits : spins;
            const Assignment& theirs = d == Domain::Qubo ? spins : bits;
            CHECK_THAT(energy(other, theirs), WithinAbs(raw.energy(mine), 1e-9));
            CHECK_THAT(energy(back, mine), WithinAbs(raw.energy(mine), 1e-9));
        });
    }
}

TEST_CASE("max clique QUBO") {
    const BQM k3 = build_max_clique_qubo(complete_graph(3));
    CHECK(k3.num_interactions() == 0);
    CHECK(energy(k3, {{0, 1}, {1, 1}, {2, 1}}) == -3.0);

    const BQM p3 = build_max_clique_qubo(path_graph(3));
    CHECK(p3.quadratic_terms().size() == 1);
    CHECK(p3.quadratic(0, 2) == 2.0);
    const auto [best, at] = argmin(p3, 3);
    CHECK(best == -2.0);
    CHECK(at == std::set<std::uint64_t>{0b011, 0b110});

    const Graph g = erdos_renyi(12, 0.5, 4);
    const auto [e, masks] = argmin(build_max_clique_qubo(g), 12);
    CHECK(e == -static_cast<double>(brute_force(ProblemKind::MaxClique, g).value));
    for (auto mask : masks) {
        VertexSet s;
        for (Vertex v = 0; v < 12; ++v)
            if ((mask >> v) & 1) s.push_back(v);
        CHECK(is_clique(g, s));
    }
}

TEST_CASE("min vertex cover QUBO") {
    Graph edge(2);
    edge.add_edge(0, 1);
    const auto [best, at] = argmin(build_min_vertex_cover_qubo(edge), 2);
    CHECK(best == 1.0);
    CHECK(at == std::set<std::uint64_t>{0b01, 0b10});

    const auto [e0, at0] = argmin(build_min_vertex_cover_qubo(Graph(3)), 3);
    CHECK(e0 == 0.0);
    CHECK(at0 == std::set<std::uint64_t>{0});

    const Graph g = erdos_renyi(12, 0.5, 4);
    const auto [e, masks] = argmin(build_min_vertex_cover_qubo(g), 12);
    CHECK(e == static_cast<double>(brute_force(ProblemKind::MinVertexCover, g).value));
    for (auto mask : masks) {
        VertexSet s;
        for (Vertex v = 0; v < 12; ++v)
            if ((mask >> v) & 1) s.push_back(v);
        CHECK(is_vertex_cover(g, s));
    }
}

TEST_CASE("max cut Ising") {
    Graph edge(2);
    edge.add_edge(0, 1);
    CHECK(energy(build_max_cut_ising(edge), {{0, 1}, {1, -1}}) == -1.0);
    const BQM k4 = build_max_cut_ising(complete_graph(4));
    const double h = energy(k4, {{0, 1}, {1, 1}, {2, -1}, {3, -1}});
    CHECK(h == -2.0);
    CHECK((6.0 - h) / 2.0 == 4.0);
    const auto [best, at] = argmin(build_max_cut_ising(cycle_graph(5)), 5);
    CHECK(best == -3.0);
    CHECK((5.0 - best) / 2.0 == static_cast<double>(brute_force(ProblemKind::MaxCut, cycle_graph(5)).value));
}

TEST_CASE("graph partitioning Ising") {
    const BQM two = build_graph_partitioning_ising(Graph(2));
    CHECK(two.metadata().at("balance_weight") == 0.25);
    CHECK(energy(two, {{0, 1}, {1, -1}}) == 0.0);

    const BQM k4 = build_graph_partitioning_ising(complete_graph(4));
    CHECK(k4.metadata().at("balance_weight") == 0.375);
    CHECK(energy(k4, {{0, 1}, {1, 1}, {2, -1}, {3, -1}}) == 4.0);

    const Graph g = erdos_renyi(12, 0.5, 4);
    const BQM m = build_graph_partitioning_ising(g);
    double best = std::numeric_limits<double>::infinity();
    for_each_assignment(12, -1, 1, [&](const Assignment& a) {
        int sum = 0;
        for (const auto& [_, s] : a) sum += s;
        if (sum == 0) best = std::min(best, energy(m, a));
    });
    CHECK(best == static_cast<double>(brute_force(ProblemKind::GraphPartitioning, g).value));
}

TEST_CASE("scale_to_unit_range") {
    BQM m(Domain::Ising);
    m.add_linear(1, 4.0);
    m.add_quadratic(1, 2, -8.0);
    const BQM s = scale_to_unit_range(m);
    CHECK(s.linear(1) == 0.5);
    CHECK(s.quadratic(1, 2) == -1.0);
    CHECK(scale_to_unit_range(s) == s);
    CHECK(scale_to_unit_range(BQM(Domain::Qubo)) == BQM(Domain::Qubo));

    const BQM r = random_raw_model(10, Domain::Ising, 5).to_bqm();
    CHECK(argmin(r, 10).second == argmin(scale_to_unit_range(r), 10).second);
}

TEST_CASE("interaction graph") {
    const Graph g = erdos_renyi(8, 0.5, 1);
    CHECK(interaction_graph(build_max_cut_ising(g)) == g);
    CHECK(interaction_graph(build_max_clique_qubo(g)) == complement(g));
    BQM sparse(Domain::Ising);
    sparse.add_linear(5, 1.0);
    CHECK_THROWS_AS(interaction_graph(sparse), ParameterError);
}

TEST_CASE("JSON round trip") {
    BQM m = build_graph_partitioning_ising(erdos_renyi(7, 0.4, 2));
    m.add_linear(3, 0.1);
    const BQM back = bqm_from_json(to_json(m));
    CHECK(back == m);
    CHECK_THROWS_AS(bqm_from_json("{\"domain\": \"BINARY\"}"), FormatError);
    CHECK_THROWS_AS(bqm_from_json("not json"), FormatError);
}

TEST_CASE("dense model agrees with the sparse model") {
    for (Domain d : {Domain::Qubo, Domain::Ising}) {
        const BQM m = random_raw_model(6, d, 31).to_bqm();
        const DenseModel dense(m);
        REQUIRE(dense.size() == 6);
        const int lo = low_value(d);
        for_each_assignment(6, lo, 1, [&](const Assignment& a) {
            std::vector<std::int8_t> x(6);
            for (int i = 0; i < 6; ++i) x[i] = static_cast<std::int8_t>(a.at(i));
            CHECK_THAT(dense.energy(x), WithinAbs(energy(m, a), 1e-12));
            for (std::size_t i = 0; i < 6; ++i) {
                auto y = x;
                y[i] = static_cast<std::int8_t>(y[i] == 1 ? lo : 1);
                CHECK_THAT(dense.flip_delta(x, i), WithinAbs(dense.energy(y) - dense.energy(x), 1e-12));
            }
        });
    }
}
