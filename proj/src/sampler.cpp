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

#include "chainfix/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "chainfix/errors.hpp"
#include "chainfix/rng.hpp"
#include "chainfix/util.hpp"

namespace chainfix {

void AnnealParams::validate() const {
    if (num_reads < 1) throw ParameterError("num_reads must be at least 1");
    if (sweeps < 1) throw ParameterError("sweeps must be at least 1");
    if (!(beta_min > 0.0) || !(beta_min < beta_max) || !std::isfinite(beta_max)) {
        throw ParameterError("beta schedule needs 0 < beta_min < beta_max");
    }
}

int PhysicalSample::spin(Qubit q) const {
    auto it = std::lower_bound(qubits->begin(), qubits->end(), q);
    if (it == qubits->end() || *it != q) throw AssignmentError("sample has no qubit " + std::to_string(q));
    return spins[static_cast<std::size_t>(it - qubits->begin())];
}

std::uint64_t model_hash(const BQM& model) { return fnv1a(to_json(model)); }

double beta_at(const AnnealParams& params, std::size_t k) {
    if (params.sweeps == 1) return params.beta_max;
    const double t = static_cast<double>(k) / static_cast<double>(params.sweeps - 1);
    return params.beta_min * std::pow(params.beta_max / params.beta_min, t);
}

namespace {

void anneal_one(const DenseModel& dense, const AnnealParams& params, const std::vector<double>& betas,
                std::uint64_t seed, std::vector<std::int8_t>& spins) {
    const std::size_t n = dense.size();
    Rng rng(seed);
    spins.resize(n);
    for (auto& s : spins) s = (rng.next() >> 63) ? 1 : -1;

    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) field[i] = dense.local_field(spins, i);

    for (std::size_t k = 0; k < params.sweeps; ++k) {
        const double beta = betas[k];
        for (std::size_t i = 0; i < n; ++i) {
            const double delta = -2.0 * spins[i] * field[i];
            if (delta > 0.0 && rng.uniform() >= std::exp(-beta * delta)) continue;
            spins[i] = static_cast<std::int8_t>(-spins[i]);
            const double step = 2.0 * spins[i];
            for (const auto& [j, coupling] : dense.neighbors(i)) field[j] += coupling * step;
        }
    }
}

}  // namespace

SampleSet simulated_anneal(const PhysicalModel& pm, const AnnealParams& params) {
    params.validate();
    const DenseModel& dense = pm.dense;
    if (dense.domain() != Domain::Ising) throw DomainError("physical models are Ising");

    SampleSet set;
    set.qubits = std::make_shared<const std::vector<Qubit>>(dense.labels());
    set.params = params;
    set.model_hash = model_hash(pm.ising);
    set.samples.resize(params.num_reads);

    std::vector<double> betas(params.sweeps);
    for (std::size_t k = 0; k < params.sweeps; ++k) betas[k] = beta_at(params, k);

    parallel_for(params.num_reads, params.threads, [&](std::size_t r) {
        PhysicalSample& s = set.samples[r];
        s.qubits = set.qubits;
        anneal_one(dense, params, betas, derive_seed(params.seed, r), s.spins);
        s.energy = dense.energy(s.spins);
    });
    return set;
}

PhysicalSample inject_chain_breaks(const Assignment& logical, const Embedding& e, double p_break,
                                   std::uint64_t seed, const PhysicalModel& pm) {
    if (!(p_break >= 0.0 && p_break <= 1.0)) throw ParameterError("p_break must lie in [0, 1]");
    const DenseModel& dense = pm.dense;
    PhysicalSample s;
    s.qubits = std::make_shared<const std::vector<Qubit>>(dense.labels());
    s.spins.assign(dense.size(), 1);
    Rng rng(seed);
    for (const auto& [var, chain] : e.chains()) {
        auto it = logical.find(var);
        if (it == logical.end()) throw AssignmentError("no value for variable " + std::to_string(var));
        if (it->second != 1 && it->second != -1) {
            throw DomainError("variable " + std::to_string(var) + " has non-spin value " + std::to_string(it->second));
        }
        for (Qubit q : chain) {
            const auto idx = dense.index_of(q);
            if (idx < 0) throw EmbeddingError("qubit " + std::to_string(q) + " is not in the physical model");
            const bool flip = rng.bernoulli(p_break);
            s.spins[idx] = static_cast<std::int8_t>(flip ? -it->second : it->second);
        }
    }
    s.energy = dense.energy(s.spins);
    return s;
}

namespace {

std::string spin_string(const std::vector<std::int8_t>& spins) {
    std::string out(spins.size(), '+');
    for (std::size_t i = 0; i < spins.size(); ++i) {
        if (spins[i] < 0) out[i] = '-';
    }
    return out;
}

std::string hex64(std::uint64_t x) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, x >>= 4) out[i] = digits[x & 0xf];
    return out;
}

}  // namespace

std::string to_json(const SampleSet& set) {
    nlohmann::ordered_json doc;
    doc["model_hash"] = hex64(set.model_hash);
    doc["params"] = {{"num_reads", set.params.num_reads},
                     {"sweeps", set.params.sweeps},
                     {"beta_min", set.params.beta_min},
                     {"beta_max", set.params.beta_max},
                     {"seed", set.params.seed}};
    doc["qubits"] = set.qubits ? *set.qubits : std::vector<Qubit>{};
    auto samples = nlohmann::ordered_json::array();
    for (const auto& s : set.samples) samples.push_back({{"energy", s.energy}, {"spins", spin_string(s.spins)}});
    doc["samples"] = std::move(samples);
    return doc.dump();
}

SampleSet sampleset_from_json(std::string_view text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        SampleSet set;
        set.model_hash = std::stoull(doc.at("model_hash").get<std::string>(), nullptr, 16);
        const auto& p = doc.at("params");
        set.params.num_reads = p.at("num_reads").get<std::size_t>();
        set.params.sweeps = p.at("sweeps").get<std::size_t>();
        set.params.beta_min = p.at("beta_min").get<double>();
        set.params.beta_max = p.at("beta_max").get<double>();
        set.params.seed = p.at("seed").get<std::uint64_t>();
        set.qubits = std::make_shared<const std::vector<Qubit>>(doc.at("qubits").get<std::vector<Qubit>>());
        if (!std::is_sorted(set.qubits->begin(), set.qubits->end())) throw FormatError("qubit list must be sorted");
        for (const auto& entry : doc.at("samples")) {
            PhysicalSample s;
            s.qubits = set.qubits;
            s.energy = entry.at("energy").get<double>();
            const auto spins = entry.at("spins").get<std::string>();
            if (spins.size() != set.qubits->size()) throw FormatError("spin string length does not match qubit count");
            s.spins.reserve(spins.size());
            for (char c : spins) {
                if (c != '+' && c != '-') throw FormatError(std::string("bad spin character '") + c + "'");
                s.spins.push_back(c == '+' ? 1 : -1);
            }
            set.samples.push_back(std::move(s));
        }
        return set;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed sample set: ") + e.what());
    } catch (const std::logic_error& e) {
        throw FormatError(std::string("malformed sample set: ") + e.what());
    }
}

std::string to_csv(const SampleSet& set) {
    std::ostringstream out;
    out << "read,energy,spins\n";
    for (std::size_t r = 0; r < set.samples.size(); ++r) {
        out << r << ',' << format_double(set.samples[r].energy) << ',' << spin_string(set.samples[r].spins) << '\n';
    }
    return out.str();
}

}  // namespace chainfix
