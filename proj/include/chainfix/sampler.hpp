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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chainfix/bqm.hpp"
#include "chainfix/topology.hpp"

namespace chainfix {

struct AnnealParams {
    std::size_t num_reads = 1000;
    std::size_t sweeps = 1000;
    double beta_min = 0.1;
    double beta_max = 10.0;
    std::uint64_t seed = 0;
    /// Worker threads; 0 uses the hardware concurrency. Results do not depend on it.
    unsigned threads = 0;

    /// Throws ParameterError unless num_reads, sweeps >= 1 and 0 < beta_min < beta_max.
    void validate() const;
};

/// One read over the qubits of a physical model. `qubits` is sorted and
/// shared by every sample of a set; spins[i] is the value of qubits[i].
struct PhysicalSample {
    std::shared_ptr<const std::vector<Qubit>> qubits;
    std::vector<std::int8_t> spins;
    double energy = 0.0;

    /// Throws AssignmentError when q is not part of the sample.
    int spin(Qubit q) const;
};

struct SampleSet {
    std::shared_ptr<const std::vector<Qubit>> qubits;
    std::vector<PhysicalSample> samples;
    AnnealParams params;
    std::uint64_t model_hash = 0;

    std::size_t size() const { return samples.size(); }
};

/// FNV-1a of the model's JSON form.
std::uint64_t model_hash(const BQM& model);

/// Geometric inverse temperature for sweep k of `sweeps`.
double beta_at(const AnnealParams& params, std::size_t k);

/// Single-spin Metropolis annealing. Read r starts from random spins drawn
/// from derive_seed(params.seed, r) and visits qubits in index order once per
/// sweep. The result depends only on (model, params).
SampleSet simulated_anneal(const PhysicalModel& pm, const AnnealParams& params);

/// Copies each logical spin onto its chain, then flips every qubit
/// independently with probability p_break. Throws DomainError when a value
/// is not +-1 and AssignmentError when a chain variable has no value.
PhysicalSample inject_chain_breaks(const Assignment& logical, const Embedding& e, double p_break,
                                   std::uint64_t seed, const PhysicalModel& pm);

/// {"model_hash", "params", "qubits", "samples": [{"energy", "spins": "+-.."}]}
std::string to_json(const SampleSet& set);
SampleSet sampleset_from_json(std::string_view text);
/// Header "read,energy,spins", one row per read.
std::string to_csv(const SampleSet& set);

}  // namespace chainfix
