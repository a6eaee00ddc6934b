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

#include "chainfix/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "chainfix/errors.hpp"
#include "chainfix/rng.hpp"
#include "chainfix/util.hpp"

namespace chainfix {

std::string_view to_string(Aggregate a) { return a == Aggregate::Best ? "best" : "mean"; }

Aggregate parse_aggregate(std::string_view name) {
    if (name == "best") return Aggregate::Best;
    if (name == "mean") return Aggregate::Mean;
    throw ParameterError("aggregate must be 'best' or 'mean', got '" + std::string(name) + "'");
}

double default_fixed_chain_strength(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::MaxCut: return 2.0;
        case ProblemKind::MaxClique: return 0.3;
        case ProblemKind::MinVertexCover: return 2.0;
        case ProblemKind::GraphPartitioning: return 10.0;
    }
    return 1.0;
}

void ExperimentConfig::validate() const {
    if (n < 2) throw ParameterError("n must be at least 2");
    if (densities.empty()) throw ParameterError("at least one density is required");
    for (double p : densities) {
        if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("density " + format_double(p) + " is outside [0, 1]");
    }
    if (graphs < 1) throw ParameterError("graphs per density must be at least 1");
    anneal.validate();
    if (chain_strength.torque) {
        if (!(chain_strength.prefactor > 0.0)) throw ParameterError("torque prefactor must be positive");
    } else if (!(chain_strength.value > 0.0) || !std::isfinite(chain_strength.value)) {
        throw ParameterError("chain strength must be positive");
    }
    for (double c : chain_strength_grid) {
        if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("grid chain strengths must be positive");
    }
    if (topology.rows < 1 || topology.cols < 1 || topology.shore < 1) {
        throw ParameterError("topology dimensions must be positive");
    }
    const auto capacity =
        static_cast<std::size_t>(topology.shore) * static_cast<std::size_t>(std::min(topology.rows, topology.cols)) + 1;
    if (n > capacity) {
        throw CapacityError("n = " + std::to_string(n) + " exceeds the clique capacity " + std::to_string(capacity) +
                            " of the topology");
    }
}

ExperimentConfig full_scale(ExperimentConfig config) {
    config.n = 65;
    config.topology = {16, 16, 4};
    config.anneal.num_reads = 1000;
    return config;
}

BrokenStats broken_chain_proportion(std::span<const PhysicalSample> samples, const Embedding& e) {
    if (samples.empty() || e.size() == 0) return {};
    std::vector<double> fractions;
    fractions.reserve(samples.size());
    for (const auto& s : samples) {
        std::size_t broken = 0;
        for (const auto& r : decompose(s, e, Domain::Ising)) broken += r.broken;
        fractions.push_back(static_cast<double>(broken) / static_cast<double>(e.size()));
    }
    double mean = 0.0;
    for (double f : fractions) mean += f;
    mean /= static_cast<double>(fractions.size());
    double var = 0.0;
    for (double f : fractions) var += (f - mean) * (f - mean);
    return {mean, std::sqrt(var / static_cast<double>(fractions.size()))};
}

BrokenStats broken_chain_proportion(const SampleSet& samples, const Embedding& e) {
    return broken_chain_proportion(std::span<const PhysicalSample>(samples.samples), e);
}

std::optional<double> improvement_ratio(ProblemKind kind, double ours, double baseline) {
    const double num = is_maximization(kind) ? ours : baseline;
    const double den = is_maximization(kind) ? baseline : ours;
    if (den == 0.0) return std::nullopt;
    return num / den;
}

std::optional<std::vector<double>> normalize_objectives(std::span<const double> values) {
    if (values.empty()) return std::vector<double>{};
    const double scale = std::abs(*std::min_element(values.begin(), values.end()));
    if (scale == 0.0) return std::nullopt;
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(v / scale);
    return out;
}

GraphEvaluation evaluate_samples(ProblemKind kind, const Graph& g, const BQM& model, const Embedding& e,
                                 std::span<const PhysicalSample> samples, std::uint64_t seed, Aggregate aggregate,
                                 unsigned threads) {
    const std::size_t reads = samples.size();
    std::vector<std::array<Score, 4>> scores(reads);
    std::vector<double> broken(reads, 0.0);
    parallel_for(reads, threads, [&](std::size_t r) {
        const auto readouts = decompose(samples[r], e, model.domain());
        std::size_t count = 0;
        for (const auto& ro : readouts) count += ro.broken;
        broken[r] = readouts.empty() ? 0.0 : static_cast<double>(count) / static_cast<double>(readouts.size());
        const UnembedContext ctx{&g, kind, derive_seed(seed, r)};
        for (Method m : kAllMethods) {
            scores[r][static_cast<std::size_t>(m)] = score_assignment(kind, g, unembed(m, readouts, ctx, model).values);
        }
    });

    GraphEvaluation out;
    if (reads == 0) return out;
    double mean = 0.0;
    for (double b : broken) mean += b;
    mean /= static_cast<double>(reads);
    double var = 0.0;
    for (double b : broken) var += (b - mean) * (b - mean);
    out.broken = {mean, std::sqrt(var / static_cast<double>(reads))};

    const bool maximize = is_maximization(kind);
    auto better = [&](double a, double b) { return maximize ? a > b : a < b; };
    for (Method m : kAllMethods) {
        const auto k = static_cast<std::size_t>(m);
        MethodOutcome& o = out.methods[k];
        if (aggregate == Aggregate::Mean) {
            double sum = 0.0;
            bool all = true;
            for (const auto& s : scores) {
                sum += s[k].objective;
                all = all && s[k].feasible;
            }
            o = {sum / static_cast<double>(reads), all};
            continue;
        }
        bool have = false;
        for (const auto& s : scores) {
            const Score& sc = s[k];
            if (!have || (sc.feasible && !o.feasible) ||
                (sc.feasible == o.feasible && better(sc.objective, o.objective))) {
                o = {sc.objective, sc.feasible};
                have = true;
            }
        }
    }
    return out;
}

std::uint64_t graph_seed(std::uint64_t seed, std::size_t density_index, std::size_t index) {
    return derive_seed(derive_seed(seed, density_index), index);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Instance {
    std::uint64_t seed = 0;
    Graph graph{0};
    BQM model;
    BQM ising;
};

Instance make_instance(const ExperimentConfig& config, std::size_t di, std::size_t gi, bool scale) {
    Instance inst;
    inst.seed = graph_seed(config.seed, di, gi);
    inst.graph = erdos_renyi(config.n, config.densities[di], inst.seed);
    inst.model = build_problem_model(config.problem, inst.graph);
    if (scale) inst.model = scale_to_unit_range(inst.model);
    inst.ising = convert(inst.model, Domain::Ising);
    return inst;
}

bool degenerate(const BQM& ising) {
    return std::none_of(ising.quadratic_terms().begin(), ising.quadratic_terms().end(),
                        [](const auto& kv) { return kv.second != 0.0; });
}

double chain_strength_for(const ChainStrengthMode& mode, const BQM& ising) {
    if (!mode.torque) return mode.value;
    return uniform_torque_compensation(ising, interaction_graph(ising), mode.prefactor);
}

SampleSet anneal_instance(const ExperimentConfig& config, const Instance& inst, const PhysicalModel& pm) {
    AnnealParams params = config.anneal;
    params.seed = derive_seed(inst.seed, 1);
    return simulated_anneal(pm, params);
}

std::uint64_t unembed_seed(const Instance& inst) { return derive_seed(inst.seed, 2); }

struct Setup {
    HardwareGraph hw;
    Embedding embedding;
};

Setup make_setup(const ExperimentConfig& config) {
    HardwareGraph hw = chimera(config.topology.rows, config.topology.cols, config.topology.shore);
    Embedding e = clique_embedding(config.n, hw);
    return {std::move(hw), std::move(e)};
}

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// Pooled mean and population std over groups of equal size.
BrokenStats pool(const std::vector<BrokenStats>& parts) {
    if (parts.empty()) return {};
    double mean = 0.0;
    for (const auto& p : parts) mean += p.mean;
    mean /= static_cast<double>(parts.size());
    double second = 0.0;
    for (const auto& p : parts) second += p.std * p.std + (p.mean - mean) * (p.mean - mean);
    return {mean, std::sqrt(second / static_cast<double>(parts.size()))};
}

// Ratios of the tailored outcome against each baseline, with flags for
// undefined quotients and infeasible baselines.
void attach_ratios(MetricRow& row, ProblemKind kind, const GraphEvaluation& ev) {
    const MethodOutcome& ours = ev[Method::Tailored];
    const std::pair<Method, std::optional<double>*> targets[] = {
        {Method::MajorityVote, &row.ratio_vs_majority},
        {Method::RandomWeighted, &row.ratio_vs_random},
        {Method::MinimizeEnergy, &row.ratio_vs_minenergy},
    };
    for (const auto& [m, slot] : targets) {
        const MethodOutcome& base = ev[m];
        auto ratio = improvement_ratio(kind, ours.objective, base.objective);
        if (!ratio) {
            row.flags.push_back("ratio vs " + std::string(to_string(m)) + " undefined: zero denominator");
            *slot = std::numeric_limits<double>::quiet_NaN();
        } else {
            *slot = *ratio;
        }
        if (!base.feasible) row.flags.push_back(std::string(to_string(m)) + " infeasible: scored by convention");
    }
}

void mean_ratios(MetricRow& row, const std::vector<MetricRow>& tailored_rows) {
    auto avg = [&](std::optional<double> MetricRow::*field, const char* name) {
        std::vector<double> xs;
        for (const auto& r : tailored_rows) {
            const auto& v = r.*field;
            if (v && !std::isnan(*v)) xs.push_back(*v);
        }
        if (xs.size() < tailored_rows.size()) {
            row.flags.push_back(std::to_string(tailored_rows.size() - xs.size()) + " graph(s) excluded from " + name +
                                " mean");
        }
        row.*field = mean_of(xs);
    };
    avg(&MetricRow::ratio_vs_majority, "ratio_vs_majority");
    avg(&MetricRow::ratio_vs_random, "ratio_vs_random");
    avg(&MetricRow::ratio_vs_minenergy, "ratio_vs_minenergy");
}

}  // namespace

ExperimentResult run_fig2(const ExperimentConfig& config) {
    config.validate();
    const auto start = Clock::now();
    const Setup setup = make_setup(config);
    ExperimentResult result;
    result.experiment = "fig2";
    for (std::size_t di = 0; di < config.densities.size(); ++di) {
        std::vector<BrokenStats> parts;
        std::vector<double> objectives;
        std::vector<double> strengths;
        std::vector<std::string> flags;
        bool all_feasible = true;
        for (std::size_t gi = 0; gi < config.graphs; ++gi) {
            const Instance inst = make_instance(config, di, gi, false);
            result.graph_seeds.push_back(inst.seed);
            const double cs = chain_strength_for(config.chain_strength, inst.ising);
            const PhysicalModel pm = embed_bqm(inst.ising, setup.embedding, setup.hw, cs);
            const SampleSet set = anneal_instance(config, inst, pm);
            const GraphEvaluation ev = evaluate_samples(config.problem, inst.graph, inst.model, setup.embedding,
                                                        set.samples, unembed_seed(inst), config.aggregate,
                                                        config.anneal.threads);
            if (degenerate(inst.ising)) {
                flags.push_back("degenerate: model of graph " + std::to_string(inst.seed) + " has no couplers");
            }
            parts.push_back(ev.broken);
            objectives.push_back(ev[Method::MajorityVote].objective);
            strengths.push_back(cs);
            all_feasible = all_feasible && ev[Method::MajorityVote].feasible;
        }
        MetricRow summary;
        summary.problem = config.problem;
        summary.density = config.densities[di];
        summary.chain_strength = mean_of(strengths);
        summary.method = Method::MajorityVote;
        summary.graph_seed = "mean";
        summary.objective = mean_of(objectives);
        summary.feasible = all_feasible;
        const BrokenStats pooled = pool(parts);
        summary.broken_frac_mean = pooled.mean;
        summary.broken_frac_std = pooled.std;
        summary.flags = std::move(flags);
        result.rows.push_back(std::move(summary));
    }
    result.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

ExperimentResult run_fig3(const ExperimentConfig& config) {
    config.validate();
    const auto start = Clock::now();
    const Setup setup = make_setup(config);
    ExperimentResult result;
    result.experiment = "fig3";
    for (std::size_t di = 0; di < config.densities.size(); ++di) {
        std::array<std::vector<double>, 4> objectives;
        std::array<bool, 4> feasible{true, true, true, true};
        std::vector<BrokenStats> parts;
        std::vector<double> strengths;
        std::vector<MetricRow> tailored_rows;
        for (std::size_t gi = 0; gi < config.graphs; ++gi) {
            const Instance inst = make_instance(config, di, gi, false);
            result.graph_seeds.push_back(inst.seed);
            const double cs = chain_strength_for(config.chain_strength, inst.ising);
            const PhysicalModel pm = embed_bqm(inst.ising, setup.embedding, setup.hw, cs);
            const SampleSet set = anneal_instance(config, inst, pm);
            const GraphEvaluation ev = evaluate_samples(config.problem, inst.graph, inst.model, setup.embedding,
                                                        set.samples, unembed_seed(inst), config.aggregate,
                                                        config.anneal.threads);
            parts.push_back(ev.broken);
            strengths.push_back(cs);
            for (Method m : kAllMethods) {
                MetricRow row;
                row.problem = config.problem;
                row.density = config.densities[di];
                row.chain_strength = cs;
                row.method = m;
                row.graph_seed = std::to_string(inst.seed);
                row.objective = ev[m].objective;
                row.feasible = ev[m].feasible;
                row.broken_frac_mean = ev.broken.mean;
                row.broken_frac_std = ev.broken.std;
                if (degenerate(inst.ising)) row.flags.push_back("degenerate: model has no couplers");
                if (m == Method::Tailored) {
                    attach_ratios(row, config.problem, ev);
                    tailored_rows.push_back(row);
                }
                const auto k = static_cast<std::size_t>(m);
                objectives[k].push_back(row.objective);
                feasible[k] = feasible[k] && row.feasible;
                result.rows.push_back(std::move(row));
            }
        }
        const BrokenStats pooled = pool(parts);
        for (Method m : kAllMethods) {
            const auto k = static_cast<std::size_t>(m);
            MetricRow summary;
            summary.problem = config.problem;
            summary.density = config.densities[di];
            summary.chain_strength = mean_of(strengths);
            summary.method = m;
            summary.graph_seed = "mean";
            summary.objective = mean_of(objectives[k]);
            summary.feasible = feasible[k];
            summary.broken_frac_mean = pooled.mean;
            summary.broken_frac_std = pooled.std;
            if (m == Method::Tailored) mean_ratios(summary, tailored_rows);
            result.rows.push_back(std::move(summary));
        }
    }
    result.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

ExperimentResult run_fig4(const ExperimentConfig& config) {
    config.validate();
    if (config.chain_strength_grid.empty()) throw ParameterError("the chain strength grid is empty");
    const auto start = Clock::now();
    const Setup setup = make_setup(config);
    const bool scale = config.problem == ProblemKind::GraphPartitioning;
    ExperimentResult result;
    result.experiment = "fig4";
    for (std::size_t di = 0; di < config.densities.size(); ++di) {
        std::vector<Instance> instances;
        for (std::size_t gi = 0; gi < config.graphs; ++gi) {
            instances.push_back(make_instance(config, di, gi, scale));
            result.graph_seeds.push_back(instances.back().seed);
        }
        std::vector<MetricRow> rows;
        std::vector<double> values;
        for (double cs : config.chain_strength_grid) {
            std::vector<BrokenStats> parts;
            std::vector<double> objectives;
            std::vector<MetricRow> tailored_rows;
            bool all_feasible = true;
            for (const Instance& inst : instances) {
                const PhysicalModel pm = embed_bqm(inst.ising, setup.embedding, setup.hw, cs);
                const SampleSet set = anneal_instance(config, inst, pm);
                const GraphEvaluation ev = evaluate_samples(config.problem, inst.graph, inst.model, setup.embedding,
                                                            set.samples, unembed_seed(inst), config.aggregate,
                                                            config.anneal.threads);
                MetricRow per_graph;
                attach_ratios(per_graph, config.problem, ev);
                tailored_rows.push_back(std::move(per_graph));
                parts.push_back(ev.broken);
                objectives.push_back(ev[Method::Tailored].objective);
                all_feasible = all_feasible && ev[Method::Tailored].feasible;
            }
            MetricRow row;
            row.problem = config.problem;
            row.density = config.densities[di];
            row.chain_strength = cs;
            row.method = Method::Tailored;
            row.graph_seed = "mean";
            row.objective = mean_of(objectives);
            row.feasible = all_feasible;
            const BrokenStats pooled = pool(parts);
            row.broken_frac_mean = pooled.mean;
            row.broken_frac_std = pooled.std;
            mean_ratios(row, tailored_rows);
            values.push_back(row.objective);
            rows.push_back(std::move(row));
        }
        if (auto normalized = normalize_objectives(values)) {
            for (std::size_t i = 0; i < rows.size(); ++i) rows[i].objective = (*normalized)[i];
        } else {
            for (auto& row : rows) row.flags.push_back("not normalized: minimum objective is zero");
        }
        for (auto& row : rows) result.rows.push_back(std::move(row));
    }
    result.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

std::string to_csv(std::span<const MetricRow> rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    auto ratio = [](const std::optional<double>& r) { return r ? format_double(*r) : std::string(); };
    for (const auto& r : rows) {
        out << to_string(r.problem) << ',' << format_double(r.density) << ',' << format_double(r.chain_strength) << ','
            << to_string(r.method) << ',' << r.graph_seed << ',' << format_double(r.objective) << ','
            << (r.feasible ? "true" : "false") << ',' << format_double(r.broken_frac_mean) << ','
            << format_double(r.broken_frac_std) << ',' << ratio(r.ratio_vs_majority) << ','
            << ratio(r.ratio_vs_random) << ',' << ratio(r.ratio_vs_minenergy) << '\n';
    }
    return out.str();
}

std::string manifest_json(const ExperimentConfig& config, const ExperimentResult& result) {
    nlohmann::ordered_json doc;
    doc["experiment"] = result.experiment;
    doc["version"] = kVersion;
    nlohmann::ordered_json cfg;
    cfg["problem"] = to_string(config.problem);
    cfg["n"] = config.n;
    cfg["densities"] = config.densities;
    cfg["graphs"] = config.graphs;
    cfg["reads"] = config.anneal.num_reads;
    cfg["sweeps"] = config.anneal.sweeps;
    cfg["beta_min"] = config.anneal.beta_min;
    cfg["beta_max"] = config.anneal.beta_max;
    if (config.chain_strength.torque) {
        cfg["chain_strength"] = "utc";
        cfg["prefactor"] = config.chain_strength.prefactor;
    } else {
        cfg["chain_strength"] = config.chain_strength.value;
    }
    if (result.experiment == "fig4") cfg["chain_strength_grid"] = config.chain_strength_grid;
    cfg["topology"] = {config.topology.rows, config.topology.cols, config.topology.shore};
    cfg["seed"] = config.seed;
    cfg["aggregate"] = to_string(config.aggregate);
    doc["config"] = std::move(cfg);
    doc["graph_seeds"] = result.graph_seeds;
    doc["wall_time_seconds"] = result.wall_seconds;
    auto flags = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& r = result.rows[i];
        for (const auto& f : r.flags) {
            flags.push_back({{"row", i},
                             {"density", r.density},
                             {"chain_strength", r.chain_strength},
                             {"method", to_string(r.method)},
                             {"graph_seed", r.graph_seed},
                             {"flag", f}});
        }
    }
    doc["flags"] = std::move(flags);
    return doc.dump(2);
}

}  // namespace chainfix
