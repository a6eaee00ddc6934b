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

// Command line front end: instance generation, embedding, sampling,
// unembedding and the figure experiments.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainfix/bench.hpp"
#include "chainfix/bqm.hpp"
#include "chainfix/errors.hpp"
#include "chainfix/graph.hpp"
#include "chainfix/rng.hpp"
#include "chainfix/sampler.hpp"
#include "chainfix/topology.hpp"
#include "chainfix/unembed.hpp"
#include "chainfix/util.hpp"

namespace fs = std::filesystem;
using namespace chainfix;

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Options {
    std::string problem = "max_cut";
    std::size_t n = 30;
    std::vector<double> densities{0.5};
    std::size_t graphs = 1;
    std::size_t reads = 1000;
    std::size_t sweeps = 1000;
    std::string chain_strength;
    double prefactor = kDefaultTorquePrefactor;
    std::uint64_t seed = 0;
    std::string topology = "8,8,4";
    std::string aggregate = "best";
    std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    bool full = false;
    unsigned threads = 0;
    std::string out = ".";
    std::string graph_file;
    std::string embedding_file;
    std::string samples_file;
    std::string method = "tailored";
};

ChimeraShape parse_topology(const std::string& text) {
    ChimeraShape s;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(text);
    if (!(in >> s.rows >> c1 >> s.cols >> c2 >> s.shore) || c1 != ',' || c2 != ',' || !in.eof()) {
        throw ParameterError("topology must look like m,n,t; got '" + text + "'");
    }
    if (s.rows < 1 || s.cols < 1 || s.shore < 1) throw ParameterError("topology dimensions must be positive");
    return s;
}

ChainStrengthMode parse_chain_strength(const std::string& text, double prefactor, double fallback, bool torque) {
    ChainStrengthMode mode;
    mode.prefactor = prefactor;
    if (text.empty()) {
        mode.torque = torque;
        mode.value = fallback;
        return mode;
    }
    if (text == "utc") {
        mode.torque = true;
        return mode;
    }
    std::size_t used = 0;
    try {
        mode.value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(mode.value > 0.0)) {
        throw ParameterError("chain strength must be a positive number or 'utc'; got '" + text + "'");
    }
    return mode;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

ExperimentConfig experiment_config(const Options& o, const std::string& name) {
    ExperimentConfig c;
    c.problem = parse_problem_kind(o.problem);
    if (o.full) c = full_scale(c);
    c.problem = parse_problem_kind(o.problem);
    if (!o.full) {
        c.n = o.n;
        c.topology = parse_topology(o.topology);
        c.anneal.num_reads = o.reads;
    }
    c.densities = o.densities;
    c.graphs = o.graphs;
    c.anneal.sweeps = o.sweeps;
    c.anneal.seed = o.seed;
    c.anneal.threads = o.threads;
    c.seed = o.seed;
    c.aggregate = parse_aggregate(o.aggregate);
    c.chain_strength_grid = o.grid;
    const bool torque_default = name == "fig3";
    c.chain_strength =
        parse_chain_strength(o.chain_strength, o.prefactor, default_fixed_chain_strength(c.problem), torque_default);
    c.validate();
    return c;
}

int cmd_gen(const Options& o) {
    if (!(o.n >= 1) || o.graphs < 1) throw ParameterError("need n >= 1 and graphs >= 1");
    for (double p : o.densities) {
        if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("density outside [0, 1]");
    }
    for (std::size_t di = 0; di < o.densities.size(); ++di) {
        for (std::size_t gi = 0; gi < o.graphs; ++gi) {
            const auto seed = graph_seed(o.seed, di, gi);
            const Graph g = erdos_renyi(o.n, o.densities[di], seed);
            std::ostringstream text;
            write_edge_list(text, g);
            const fs::path path = fs::path(o.out) / ("graph_p" + format_double(o.densities[di]) + "_" +
                                                     std::to_string(seed) + ".txt");
            write_file(path, text.str());
            std::cout << path.string() << '\n';
        }
    }
    return 0;
}

int cmd_embed(const Options& o) {
    const ChimeraShape s = parse_topology(o.topology);
    const HardwareGraph hw = chimera(s.rows, s.cols, s.shore);
    const Embedding e = clique_embedding(o.n, hw);
    const fs::path path = fs::path(o.out) / "embedding.json";
    write_file(path, to_json(e));
    std::cout << "K" << o.n << " on chimera(" << o.topology << "): " << e.num_qubits()
              << " qubits, max chain length " << e.max_chain_length() << '\n';
    return 0;
}

int cmd_sample(const Options& o) {
    const ProblemKind kind = parse_problem_kind(o.problem);
    const ChimeraShape s = parse_topology(o.topology);
    const ChainStrengthMode mode = parse_chain_strength(o.chain_strength, o.prefactor, 0.0, true);
    AnnealParams params;
    params.num_reads = o.reads;
    params.sweeps = o.sweeps;
    params.seed = o.seed;
    params.threads = o.threads;
    params.validate();
    const Graph g = o.graph_file.empty() ? erdos_renyi(o.n, o.densities.front(), o.seed) : load_graph(o.graph_file);

    const HardwareGraph hw = chimera(s.rows, s.cols, s.shore);
    const Embedding e = clique_embedding(g.num_vertices(), hw);
    const BQM ising = convert(build_problem_model(kind, g), Domain::Ising);
    const double cs =
        mode.torque ? uniform_torque_compensation(ising, interaction_graph(ising), mode.prefactor) : mode.value;
    const PhysicalModel pm = embed_bqm(ising, e, hw, cs);
    const SampleSet set = simulated_anneal(pm, params);

    const fs::path dir(o.out);
    std::ostringstream graph_text;
    write_edge_list(graph_text, g);
    write_file(dir / "graph.txt", graph_text.str());
    write_file(dir / "embedding.json", to_json(e));
    write_file(dir / "samples.json", to_json(set));
    write_file(dir / "samples.csv", to_csv(set));
    const BrokenStats b = broken_chain_proportion(set, e);
    std::cout << "chain strength " << format_double(cs) << ", " << set.size() << " reads, broken fraction "
              << format_double(b.mean) << " +- " << format_double(b.std) << '\n';
    return 0;
}

int cmd_unembed(const Options& o) {
    const ProblemKind kind = parse_problem_kind(o.problem);
    const Method method = parse_method(o.method);
    if (o.graph_file.empty() || o.embedding_file.empty() || o.samples_file.empty()) {
        throw ParameterError("unembed needs --graph, --embedding and --samples");
    }
    const Graph g = load_graph(o.graph_file);
    const Embedding e = embedding_from_json(read_file(o.embedding_file));
    const SampleSet set = sampleset_from_json(read_file(o.samples_file));
    const BQM model = build_problem_model(kind, g);

    std::ostringstream csv;
    csv << "read,method,objective,feasible,broken_count,broken_frac\n";
    for (std::size_t r = 0; r < set.size(); ++r) {
        const auto readouts = decompose(set.samples[r], e, model.domain());
        std::size_t broken = 0;
        for (const auto& ro : readouts) broken += ro.broken;
        const UnembedContext ctx{&g, kind, derive_seed(o.seed, r)};
        const Score score = score_assignment(kind, g, unembed(method, readouts, ctx, model).values);
        csv << r << ',' << to_string(method) << ',' << format_double(score.objective) << ','
            << (score.feasible ? "true" : "false") << ',' << broken << ','
            << format_double(readouts.empty() ? 0.0 : static_cast<double>(broken) / readouts.size()) << '\n';
    }
    write_file(fs::path(o.out) / "unembed.csv", csv.str());
    return 0;
}

int cmd_fig(const Options& o, const std::string& name) {
    const ExperimentConfig c = experiment_config(o, name);
    ExperimentResult result;
    if (name == "fig2") {
        result = run_fig2(c);
    } else if (name == "fig3") {
        result = run_fig3(c);
    } else {
        result = run_fig4(c);
    }
    const fs::path dir(o.out);
    write_file(dir / (name + ".csv"), to_csv(result.rows));
    write_file(dir / (name + "_manifest.json"), manifest_json(c, result));
    std::cout << name << ": " << result.rows.size() << " rows in " << format_double(result.wall_seconds) << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chainfix: chain-break resolution experiments on Chimera clique embeddings"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--problem", o.problem, "max_clique | max_cut | min_vertex_cover | graph_partitioning");
        sub->add_option("--n", o.n, "vertices per graph");
        sub->add_option("--density", o.densities, "edge probabilities, comma separated")->delimiter(',');
        sub->add_option("--graphs", o.graphs, "graphs per density");
        sub->add_option("--reads", o.reads, "anneal reads");
        sub->add_option("--sweeps", o.sweeps, "Metropolis sweeps per read");
        sub->add_option("--chain-strength", o.chain_strength, "positive value or 'utc'");
        sub->add_option("--prefactor", o.prefactor, "torque compensation prefactor");
        sub->add_option("--seed", o.seed, "base seed");
        sub->add_option("--topology", o.topology, "chimera shape m,n,t");
        sub->add_option("--aggregate", o.aggregate, "best | mean");
        sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
        sub->add_option("--out", o.out, "output directory");
    };

    auto* gen = app.add_subcommand("gen", "write Erdos-Renyi graphs as edge lists");
    auto* embed = app.add_subcommand("embed", "write a clique embedding");
    auto* sample = app.add_subcommand("sample", "anneal one embedded problem and write its samples");
    auto* unembed_cmd = app.add_subcommand("unembed", "resolve chains of a sample set with one method");
    auto* fig2 = app.add_subcommand("fig2", "broken-chain proportion by density");
    auto* fig3 = app.add_subcommand("fig3", "unembedding methods compared by density");
    auto* fig4 = app.add_subcommand("fig4", "tailored objective by chain strength");
    for (auto* sub : {gen, embed, sample, unembed_cmd, fig2, fig3, fig4}) common(sub);
    for (auto* sub : {sample, unembed_cmd}) sub->add_option("--graph", o.graph_file, "edge list file");
    unembed_cmd->add_option("--embedding", o.embedding_file, "embedding JSON")->required();
    unembed_cmd->add_option("--samples", o.samples_file, "sample set JSON")->required();
    unembed_cmd->add_option("--method", o.method, "majority_vote | random_weighted | minimize_energy | tailored");
    fig4->add_option("--grid", o.grid, "chain strengths, comma separated")->delimiter(',');
    for (auto* sub : {fig2, fig3, fig4}) sub->add_flag("--full-scale", o.full, "65 vertices on chimera(16,16,4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*gen) return cmd_gen(o);
        if (*embed) return cmd_embed(o);
        if (*sample) return cmd_sample(o);
        if (*unembed_cmd) return cmd_unembed(o);
        if (*fig2) return cmd_fig(o, "fig2");
        if (*fig3) return cmd_fig(o, "fig3");
        return cmd_fig(o, "fig4");
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const CapacityError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}
