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

#include <set>

#include "chainfix/errors.hpp"
#include "chainfix/topology.hpp"
#include "support.hpp"

using namespace chainfix;
using namespace chainfix::testing;
using Catch::Matchers::WithinAbs;
using Kind = EmbeddingViolation::Kind;

namespace {

bool has_violation(const std::vector<EmbeddingViolation>& vs, Kind k) {
    for (const auto& v : vs)
        if (v.kind == k) return true;
    return false;
}

// Hardware couplers with both ends in the same chain, counted by scanning the coupler list.
std::size_t chain_coupler_count(const Embedding& e, const HardwareGraph& hw) {
    std::map<Qubit, Variable> owner;
    for (const auto& [v, chain] : e.chains())
        for (Qubit q : chain) owner[q] = v;
    std::size_t count = 0;
    for (const auto& [a, b] : hw.couplers()) {
        auto ia = owner.find(a);
        auto ib = owner.find(b);
        if (ia != owner.end() && ib != owner.end() && ia->second == ib->second) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("chimera sizes") {
    const auto one = chimera(1, 1, 4);
    CHECK(one.num_qubits() == 8);
    CHECK(one.couplers().size() == 16);
    CHECK(chimera(16, 16, 4).num_qubits() == 2048);
    const auto two = chimera(2, 2, 4);
    CHECK(two.num_qubits() == 32);
    CHECK(two.couplers().size() == 64 + 16);
    CHECK_THROWS_AS(chimera(0, 1, 1), ParameterError);
    CHECK_THROWS_AS(chimera(1, 1, -2), ParameterError);
}

TEST_CASE("chimera coupler classes") {
    for (auto [m, n, t] : {std::tuple{1, 1, 1}, {2, 3, 2}, {3, 2, 4}, {4, 4, 4}, {5, 1, 3}}) {
        const auto hw = chimera(m, n, t);
        std::size_t intra = 0;
        std::size_t vertical = 0;
        std::size_t horizontal = 0;
        for (const auto& [a, b] : hw.couplers()) {
            const auto ca = hw.coordinate(a);
            const auto cb = hw.coordinate(b);
            REQUIRE(a != b);
            if (ca.row == cb.row && ca.col == cb.col) {
                CHECK(ca.side != cb.side);
                ++intra;
            } else if (ca.col == cb.col) {
                CHECK((ca.side == 0 && cb.side == 0 && ca.index == cb.index && cb.row == ca.row + 1));
                ++vertical;
            } else {
                CHECK((ca.side == 1 && cb.side == 1 && ca.index == cb.index && cb.col == ca.col + 1));
                ++horizontal;
            }
        }
        CHECK(intra == static_cast<std::size_t>(m * n * t * t));
        CHECK(vertical + horizontal == static_cast<std::size_t>(t * (n * (m - 1) + m * (n - 1))));
        for (Qubit q = 0; q < static_cast<Qubit>(hw.num_qubits()); ++q) CHECK(hw.linear_index(hw.coordinate(q)) == q);
    }
}

TEST_CASE("native clique embedding of K16 on a 4x4 grid") {
    const auto hw = chimera(4, 4, 4);
    const Embedding e = clique_embedding(16, hw);
    CHECK(e.size() == 16);
    for (const auto& [_, chain] : e.chains()) CHECK(chain.size() == 5);
    CHECK(validate_embedding(e, complete_graph(16), hw).empty());
}

TEST_CASE("clique embedding of K2 in one cell") {
    const auto hw = chimera(1, 1, 4);
    const Embedding e = clique_embedding(2, hw);
    CHECK(e.size() == 2);
    CHECK(e.max_chain_length() <= 2);
    CHECK(validate_embedding(e, complete_graph(2), hw).empty());
}

TEST_CASE("clique embeddings are valid up to capacity") {
    for (int t : {1, 2, 3, 4}) {
        for (int m : {1, 2, 3, 4, 8}) {
            const auto hw = chimera(m, m, t);
            for (std::size_t k = 1; k <= static_cast<std::size_t>(t * m + 1); ++k) {
                const Embedding e = clique_embedding(k, hw);
                INFO("m=" << m << " t=" << t << " k=" << k);
                CHECK(validate_embedding(e, complete_graph(k), hw).empty());
                const std::size_t bound = k <= static_cast<std::size_t>(t * m) ? m + 1 : m + 2;
                CHECK(e.max_chain_length() <= bound);
            }
            CHECK_THROWS_AS(clique_embedding(t * m + 2, hw), CapacityError);
        }
    }
}

TEST_CASE("rectangular grids use the smaller side") {
    const auto hw = chimera(3, 5, 4);
    const Embedding e = clique_embedding(13, hw);
    CHECK(validate_embedding(e, complete_graph(13), hw).empty());
    CHECK_THROWS_AS(clique_embedding(14, hw), CapacityError);
}

TEST_CASE("validate_embedding reports violations") {
    const auto hw = chimera(1, 1, 4);
    // vertical qubits 0..3, horizontal 4..7
    const Embedding split({{0, {0, 1}}, {1, {4}}});
    CHECK(has_violation(validate_embedding(split, complete_graph(2), hw), Kind::DisconnectedChain));

    const Embedding triangle({{0, {0}}, {1, {4}}, {2, {1}}});
    const auto vs = validate_embedding(triangle, complete_graph(3), hw);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].kind == Kind::MissingLogicalEdge);
    CHECK(vs[0].u == 0);
    CHECK(vs[0].v == 2);

    CHECK(has_violation(validate_embedding(Embedding(Chains{{0, {0, 4}}, {1, {4}}}), complete_graph(2), hw),
                        Kind::OverlappingChains));
    CHECK(has_violation(validate_embedding(Embedding(Chains{{0, {0}}, {1, {99}}}), complete_graph(2), hw),
                        Kind::UnknownQubit));
    CHECK(has_violation(validate_embedding(Embedding(Chains{{0, {0}}, {1, {}}}), complete_graph(2), hw), Kind::EmptyChain));
    CHECK(has_violation(validate_embedding(Embedding(Chains{{0, {0}}}), complete_graph(2), hw), Kind::MissingVariable));
}

TEST_CASE("uniform torque compensation") {
    // K4 is 3-regular; couplers of magnitude 1 with mixed signs
    BQM k4(Domain::Ising);
    int sign = 1;
    for (const auto& [u, v] : complete_graph(4).edges()) {
        k4.add_quadratic(u, v, sign);
        sign = -sign;
    }
    CHECK_THAT(uniform_torque_compensation(k4, complete_graph(4), 1.0), WithinAbs(std::sqrt(3.0), 1e-12));

    BQM pair(Domain::Ising);
    pair.add_quadratic(0, 1, 2.0);
    Graph edge(2);
    edge.add_edge(0, 1);
    CHECK_THAT(uniform_torque_compensation(pair, edge, 1.0), WithinAbs(2.0, 1e-12));

    const BQM r = random_raw_model(9, Domain::Ising, 4).to_bqm();
    BQM scaled(Domain::Ising);
    for (const auto& [v, h] : r.linear_terms()) scaled.add_linear(v, 3.0 * h);
    for (const auto& [key, j] : r.quadratic_terms()) scaled.add_quadratic(key.first, key.second, 3.0 * j);
    const Graph g = interaction_graph(r);
    CHECK_THAT(uniform_torque_compensation(scaled, g), WithinAbs(3.0 * uniform_torque_compensation(r, g), 1e-9));

    BQM lonely(Domain::Ising);
    lonely.add_linear(0, 1.0);
    CHECK(uniform_torque_compensation(lonely, Graph(1)) == kDefaultTorquePrefactor);

    // QUBO couplers are converted: J = 4 becomes 1
    BQM q(Domain::Qubo);
    q.add_quadratic(0, 1, 4.0);
    CHECK_THAT(uniform_torque_compensation(q, edge, 1.0), WithinAbs(1.0, 1e-12));
}

TEST_CASE("embed_bqm with single-qubit chains reproduces the model") {
    const auto hw = chimera(1, 1, 4);
    Graph bip(8);
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = 4; v < 8; ++v) bip.add_edge(u, v);
    BQM m = build_max_cut_ising(bip);
    m.add_linear(2, -0.75);
    m.add_offset(1.25);
    std::map<Variable, std::vector<Qubit>> chains;
    for (Variable v = 0; v < 8; ++v) chains[v] = {v};
    const PhysicalModel pm = embed_bqm(m, Embedding(chains), hw, 5.0);
    CHECK(pm.ising == m);
    CHECK(pm.num_chain_couplers == 0);
}

TEST_CASE("embed_bqm splits fields and couplers equally") {
    const auto hw = chimera(1, 1, 4);
    BQM m(Domain::Ising);
    m.add_linear(0, 1.0);
    const PhysicalModel one = embed_bqm(m, Embedding(Chains{{0, {0, 4}}}), hw, 3.0);
    CHECK(one.ising.linear(0) == 0.5);
    CHECK(one.ising.linear(4) == 0.5);
    CHECK(one.ising.quadratic(0, 4) == -3.0);
    CHECK(one.num_chain_couplers == 1);

    BQM two(Domain::Ising);
    two.add_quadratic(0, 1, 1.0);
    const PhysicalModel pm = embed_bqm(two, Embedding(Chains{{0, {0, 4}}, {1, {1, 5}}}), hw, 2.0);
    CHECK(pm.ising.quadratic(0, 5) == 0.5);
    CHECK(pm.ising.quadratic(1, 4) == 0.5);
    CHECK(pm.ising.quadratic(0, 4) == -2.0);
    CHECK(pm.ising.quadratic(1, 5) == -2.0);
    CHECK(pm.ising.num_interactions() == 4);
}

TEST_CASE("embed_bqm errors") {
    const auto hw = chimera(1, 1, 4);
    BQM q(Domain::Qubo);
    q.add_quadratic(0, 1, 1.0);
    const Embedding ok({{0, {0}}, {1, {4}}});
    CHECK_THROWS_AS(embed_bqm(q, ok, hw, 1.0), DomainError);
    const BQM s = convert(q, Domain::Ising);
    CHECK_THROWS_AS(embed_bqm(s, ok, hw, 0.0), ParameterError);
    CHECK_THROWS_AS(embed_bqm(s, Embedding(Chains{{0, {0}}, {1, {1}}}), hw, 1.0), EmbeddingError);
    CHECK_THROWS_AS(embed_bqm(s, Embedding(Chains{{0, {0}}}), hw, 1.0), EmbeddingError);
    CHECK_THROWS_AS(embed_bqm(s, Embedding(Chains{{0, {0, 1}}, {1, {4}}}), hw, 1.0), EmbeddingError);
}

TEST_CASE("chain-consistent physical energies track logical energies") {
    const auto hw = chimera(4, 4, 4);
    const Embedding e = clique_embedding(16, hw);
    const BQM logical = random_raw_model(16, Domain::Ising, 8, 1.0).to_bqm();
    const double cs = 2.5;
    const PhysicalModel pm = embed_bqm(logical, e, hw, cs);
    const std::size_t chain_couplers = chain_coupler_count(e, hw);
    CHECK(pm.num_chain_couplers == chain_couplers);
    for (const auto& [key, j] : pm.ising.quadratic_terms()) CHECK(hw.has_coupler(key.first, key.second));

    Rng rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        Assignment spins;
        Assignment physical;
        for (Variable v = 0; v < 16; ++v) {
            spins[v] = rng.bernoulli(0.5) ? 1 : -1;
            for (Qubit q : e.chain(v)) physical[q] = spins[v];
        }
        CHECK_THAT(energy(pm.ising, physical),
                   WithinAbs(energy(logical, spins) - cs * static_cast<double>(chain_couplers), 1e-9));
    }
}

TEST_CASE("embedding JSON round trip") {
    const Embedding e = clique_embedding(9, chimera(2, 2, 4));
    CHECK(embedding_from_json(to_json(e)) == e);
    CHECK_THROWS_AS(embedding_from_json("[1, 2]"), FormatError);
    CHECK_THROWS_AS(embedding_from_json("{\"x\": [1]}"), FormatError);
}
