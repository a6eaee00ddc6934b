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

#include <cmath>

#include "chainfix/errors.hpp"
#include "chainfix/sampler.hpp"
#include "chainfix/unembed.hpp"
#include "support.hpp"

using namespace chainfix;
using namespace chainfix::testing;
using Catch::Matchers::WithinAbs;

namespace {

PhysicalModel single_chain_model(const BQM& logical, const Embedding& e, const HardwareGraph& hw, double cs = 1.0) {
    return embed_bqm(logical, e, hw, cs);
}

}  // namespace

TEST_CASE("anneal params validation") {
    AnnealParams p;
    CHECK_NOTHROW(p.validate());
    p.num_reads = 0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.beta_min = 5.0;
    p.beta_max = 1.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.sweeps = 0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("beta ladder is geometric") {
    AnnealParams p;
    p.sweeps = 5;
    p.beta_min = 0.1;
    p.beta_max = 10.0;
    CHECK_THAT(beta_at(p, 0), WithinAbs(0.1, 1e-15));
    CHECK_THAT(beta_at(p, 2), WithinAbs(1.0, 1e-12));
    CHECK_THAT(beta_at(p, 4), WithinAbs(10.0, 1e-12));
    p.sweeps = 1;
    CHECK(beta_at(p, 0) == 10.0);
}

TEST_CASE("a single biased qubit settles into its ground state") {
    const auto hw = chimera(1, 1, 1);
    BQM m(Domain::Ising);
    m.add_linear(0, -1.0);
    const PhysicalModel pm = single_chain_model(m, Embedding(Chains{{0, {0}}}), hw);
    AnnealParams p;
    p.num_reads = 1000;
    p.sweeps = 50;
    p.seed = 3;
    const SampleSet set = simulated_anneal(pm, p);
    REQUIRE(set.size() == 1000);
    std::size_t up = 0;
    for (const auto& s : set.samples) up += s.spin(0) == 1;
    // Boltzmann weight of the excited state at beta = 10 is about 2e-9
    CHECK(static_cast<double>(up) / 1000.0 > 0.99);
}

TEST_CASE("a two-qubit ferromagnet aligns") {
    const auto hw = chimera(1, 1, 1);
    BQM m(Domain::Ising);
    m.add_quadratic(0, 1, -1.0);
    const PhysicalModel pm = single_chain_model(m, Embedding(Chains{{0, {0}}, {1, {1}}}), hw);
    AnnealParams p;
    p.num_reads = 1000;
    p.sweeps = 50;
    p.seed = 4;
    const SampleSet set = simulated_anneal(pm, p);
    std::size_t aligned = 0;
    for (const auto& s : set.samples) aligned += s.spin(0) == s.spin(1);
    CHECK(static_cast<double>(aligned) / 1000.0 > 0.95);
}

TEST_CASE("annealing is deterministic and thread independent") {
    const auto hw = chimera(2, 2, 4);
    const Embedding e = clique_embedding(8, hw);
    const BQM logical = random_raw_model(8, Domain::Ising, 12, 0.7).to_bqm();
    const PhysicalModel pm = embed_bqm(logical, e, hw, 1.5);
    AnnealParams p;
    p.num_reads = 40;
    p.sweeps = 30;
    p.seed = 77;
    p.threads = 1;
    const SampleSet a = simulated_anneal(pm, p);
    p.threads = 4;
    const SampleSet b = simulated_anneal(pm, p);
    CHECK(to_json(a) == to_json(b));
    p.seed = 78;
    CHECK(to_json(a) != to_json(simulated_anneal(pm, p)));

    for (const auto& s : a.samples) {
        CHECK(std::isfinite(s.energy));
        CHECK_THAT(s.energy, WithinAbs(pm.dense.energy(s.spins), 1e-9));
        CHECK(s.spins.size() == pm.ising.num_variables());
    }
}

TEST_CASE("annealing beats uniform random assignments") {
    const auto hw = chimera(4, 4, 4);
    const Embedding e = clique_embedding(16, hw);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const BQM logical = random_raw_model(16, Domain::Ising, seed, 0.5).to_bqm();
        const PhysicalModel pm = embed_bqm(logical, e, hw, 2.0);
        AnnealParams p;
        p.num_reads = 50;
        p.sweeps = 200;
        p.seed = seed;
        double annealed = 0.0;
        for (const auto& s : simulated_anneal(pm, p).samples) annealed += s.energy;
        Rng rng(seed + 100);
        double random = 0.0;
        std::vector<std::int8_t> x(pm.dense.size());
        for (int r = 0; r < 50; ++r) {
            for (auto& v : x) v = rng.bernoulli(0.5) ? 1 : -1;
            random += pm.dense.energy(x);
        }
        CHECK(annealed < random);
    }
}

TEST_CASE("chain break injection") {
    const auto hw = chimera(4, 4, 4);
    const Embedding e = clique_embedding(16, hw);
    const BQM logical = random_raw_model(16, Domain::Ising, 6, 0.5).to_bqm();
    const PhysicalModel pm = embed_bqm(logical, e, hw, 1.0);
    Assignment spins;
    Rng rng(8);
    for (Variable v = 0; v < 16; ++v) spins[v] = rng.bernoulli(0.5) ? 1 : -1;

    const PhysicalSample intact = inject_chain_breaks(spins, e, 0.0, 1, pm);
    CHECK_THAT(intact.energy, WithinAbs(pm.dense.energy(intact.spins), 1e-12));
    for (const auto& r : decompose(intact, e, Domain::Ising)) {
        CHECK_FALSE(r.broken);
        CHECK(r.value() == spins.at(r.variable));
    }

    const PhysicalSample flipped = inject_chain_breaks(spins, e, 1.0, 1, pm);
    for (const auto& r : decompose(flipped, e, Domain::Ising)) {
        CHECK_FALSE(r.broken);
        CHECK(r.value() == -spins.at(r.variable));
    }

    // broken iff neither all nor none of the 5 qubits flip
    const double p = 0.2;
    const double expected = 1.0 - std::pow(p, 5) - std::pow(1.0 - p, 5);
    const double trials = 1000.0 * 16.0;
    std::size_t broken = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        for (const auto& r : decompose(inject_chain_breaks(spins, e, p, i, pm), e, Domain::Ising)) broken += r.broken;
    }
    const double sd = std::sqrt(expected * (1.0 - expected) / trials);
    CHECK(std::abs(static_cast<double>(broken) / trials - expected) <= 3.0 * sd);

    Assignment bits = spins;
    bits[3] = 0;
    CHECK_THROWS_AS(inject_chain_breaks(bits, e, 0.1, 1, pm), DomainError);
    spins.erase(5);
    CHECK_THROWS_AS(inject_chain_breaks(spins, e, 0.1, 1, pm), AssignmentError);
    CHECK_THROWS_AS(inject_chain_breaks(bits, e, 1.5, 1, pm), ParameterError);
}

TEST_CASE("sample set export") {
    const auto hw = chimera(1, 1, 2);
    BQM m(Domain::Ising);
    m.add_quadratic(0, 1, 0.5);
    m.add_linear(0, 0.25);
    const PhysicalModel pm = embed_bqm(m, Embedding(Chains{{0, {0, 2}}, {1, {1}}}), hw, 1.0);
    AnnealParams p;
    p.num_reads = 5;
    p.sweeps = 10;
    p.seed = 9;
    const SampleSet set = simulated_anneal(pm, p);
    const SampleSet back = sampleset_from_json(to_json(set));
    CHECK(to_json(back) == to_json(set));
    CHECK(back.model_hash == model_hash(pm.ising));
    CHECK(*back.qubits == std::vector<Qubit>{0, 1, 2});

    const std::string csv = to_csv(set);
    CHECK(csv.rfind("read,energy,spins\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

    CHECK_THROWS_AS(set.samples[0].spin(3), AssignmentError);
    CHECK_THROWS_AS(sampleset_from_json("{}"), FormatError);
}
