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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chainfix/bqm.hpp"
#include "chainfix/graph.hpp"
#include "chainfix/sampler.hpp"
#include "chainfix/topology.hpp"
#include "chainfix/unembed.hpp"

namespace chainfix {

inline constexpr const char* kVersion = "0.1.0";

enum class Aggregate { Best, Mean };

std::string_view to_string(Aggregate a);
Aggregate parse_aggregate(std::string_view name);

struct ChainStrengthMode {
    /// Uniform torque compensation when set, otherwise `value`.
    bool torque = false;
    double value = 2.0;
    double prefactor = kDefaultTorquePrefactor;
};

/// Chain strength used for each problem's broken-chain sweep: max cut 2,
/// max clique 0.3, vertex cover 2, graph partitioning 10.
double default_fixed_chain_strength(ProblemKind kind);

struct ExperimentConfig {
    ProblemKind problem = ProblemKind::MaxCut;
    std::size_t n = 30;
    std::vector<double> densities{0.1, 0.3, 0.5, 0.7, 0.9};
    std::size_t graphs = 20;
    AnnealParams anneal;
    ChainStrengthMode chain_strength;
    /// Chain strengths swept by run_fig4.
    std::vector<double> chain_strength_grid{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    ChimeraShape topology{8, 8, 4};
    std::uint64_t seed = 0;
    Aggregate aggregate = Aggregate::Best;

    /// Throws ParameterError or CapacityError describing the first problem.
    void validate() const;
};

/// n = 65 on chimera(16, 16, 4) with 1000 reads.
ExperimentConfig full_scale(ExperimentConfig config);

/// One CSV row. graph_seed holds the seed of a single graph or "mean" for
/// rows aggregated over the graphs of a density.
struct MetricRow {
    ProblemKind problem = ProblemKind::MaxCut;
    double density = 0.0;
    double chain_strength = 0.0;
    Method method = Method::MajorityVote;
    std::string graph_seed;
    double objective = 0.0;
    bool feasible = false;
    double broken_frac_mean = 0.0;
    double broken_frac_std = 0.0;
    /// Tailored rows only; NaN marks an undefined quotient.
    std::optional<double> ratio_vs_majority;
    std::optional<double> ratio_vs_random;
    std::optional<double> ratio_vs_minenergy;
    std::vector<std::string> flags;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<MetricRow> rows;
    std::vector<std::uint64_t> graph_seeds;
    double wall_seconds = 0.0;
};

struct BrokenStats {
    double mean = 0.0;
    double std = 0.0;
};

/// Per read, broken chains / chains; mean and population standard deviation.
BrokenStats broken_chain_proportion(std::span<const PhysicalSample> samples, const Embedding& e);
BrokenStats broken_chain_proportion(const SampleSet& samples, const Embedding& e);

/// ours / baseline for maximization, baseline / ours for minimization;
/// nullopt when the denominator is zero.
std::optional<double> improvement_ratio(ProblemKind kind, double ours, double baseline);

/// Divides every value by |min|; nullopt when the minimum is zero.
std::optional<std::vector<double>> normalize_objectives(std::span<const double> values);

struct MethodOutcome {
    double objective = 0.0;
    bool feasible = false;
};

struct GraphEvaluation {
    std::array<MethodOutcome, 4> methods{};
    BrokenStats broken;

    const MethodOutcome& operator[](Method m) const { return methods[static_cast<std::size_t>(m)]; }
};

/// Unembeds every sample with every method and aggregates the scores. Best
/// takes the best feasible read, falling back to the best infeasible one;
/// Mean averages all reads. Read r uses derive_seed(seed, r) for its
/// randomized steps.
GraphEvaluation evaluate_samples(ProblemKind kind, const Graph& g, const BQM& model, const Embedding& e,
                                 std::span<const PhysicalSample> samples, std::uint64_t seed, Aggregate aggregate,
                                 unsigned threads = 0);

/// Seed of graph `index` at density position `density_index`.
std::uint64_t graph_seed(std::uint64_t seed, std::size_t density_index, std::size_t index);

/// One row per density: broken-chain proportion pooled over every read of
/// every graph, and the mean majority vote objective.
ExperimentResult run_fig2(const ExperimentConfig& config);

/// All four methods per graph; tailored rows carry improvement ratios.
ExperimentResult run_fig3(const ExperimentConfig& config);

/// Tailored objective averaged over graphs for each grid chain strength,
/// normalized within each density. Partitioning models are scaled to unit
/// range first.
ExperimentResult run_fig4(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "problem,density,chain_strength,method,graph_seed,objective,feasible,broken_frac_mean,broken_frac_std,"
    "ratio_vs_majority,ratio_vs_random,ratio_vs_minenergy";

std::string to_csv(std::span<const MetricRow> rows);

/// Config echo, seeds, version, wall time and row flags.
std::string manifest_json(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace chainfix
