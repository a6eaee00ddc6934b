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

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chainfix/bench.hpp"
#include "chainfix/errors.hpp"

namespace py = pybind11;
using namespace chainfix;

PYBIND11_MODULE(_chainfix, m) {
    m.doc() = "Chain-break resolution for embedded QUBO and Ising problems";
    m.attr("__version__") = kVersion;

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<AssignmentError>(m, "AssignmentError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<EmbeddingError>(m, "EmbeddingError", PyExc_RuntimeError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    py::enum_<ProblemKind>(m, "ProblemKind")
        .value("MAX_CLIQUE", ProblemKind::MaxClique)
        .value("MAX_CUT", ProblemKind::MaxCut)
        .value("MIN_VERTEX_COVER", ProblemKind::MinVertexCover)
        .value("GRAPH_PARTITIONING", ProblemKind::GraphPartitioning);
    py::enum_<Domain>(m, "Domain").value("QUBO", Domain::Qubo).value("ISING", Domain::Ising);
    py::enum_<Method>(m, "Method")
        .value("MAJORITY_VOTE", Method::MajorityVote)
        .value("RANDOM_WEIGHTED", Method::RandomWeighted)
        .value("MINIMIZE_ENERGY", Method::MinimizeEnergy)
        .value("TAILORED", Method::Tailored);
    py::enum_<Aggregate>(m, "Aggregate").value("BEST", Aggregate::Best).value("MEAN", Aggregate::Mean);

    py::class_<Graph>(m, "Graph")
        .def(py::init<std::size_t>(), py::arg("num_vertices") = 0)
        .def(py::init([](std::size_t n, const std::vector<Edge>& edges) { return Graph(n, edges); }))
        .def("add_edge", &Graph::add_edge)
        .def("adjacent", &Graph::adjacent)
        .def("neighbors", &Graph::neighbors)
        .def("degree", &Graph::degree)
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("edges", &Graph::edges)
        .def(py::self == py::self);
    py::class_<Bipartition>(m, "Bipartition")
        .def(py::init<>())
        .def_readwrite("minus", &Bipartition::minus)
        .def_readwrite("plus", &Bipartition::plus);
    py::class_<Optimum>(m, "Optimum").def_readonly("value", &Optimum::value).def_readonly("witness", &Optimum::witness);

    m.def("erdos_renyi", &erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("brute_force", &brute_force, py::arg("problem"), py::arg("graph"));
    m.def("is_clique", [](const Graph& g, const VertexSet& s) { return is_clique(g, s); });
    m.def("is_vertex_cover", [](const Graph& g, const VertexSet& s) { return is_vertex_cover(g, s); });
    m.def("cut_size", &cut_size);

    py::class_<BQM>(m, "BinaryQuadraticModel")
        .def(py::init<Domain>(), py::arg("domain") = Domain::Ising)
        .def_property_readonly("domain", &BQM::domain)
        .def("add_linear", &BQM::add_linear)
        .def("add_quadratic", &BQM::add_quadratic)
        .def("add_offset", &BQM::add_offset)
        .def("linear", &BQM::linear)
        .def("quadratic", &BQM::quadratic)
        .def_property_readonly("offset", &BQM::offset)
        .def_property_readonly("linear_terms", &BQM::linear_terms)
        .def_property_readonly("quadratic_terms", &BQM::quadratic_terms)
        .def_property_readonly("num_variables", &BQM::num_variables)
        .def("to_json", [](const BQM& b) { return to_json(b); })
        .def_static("from_json", [](const std::string& s) { return bqm_from_json(s); });
    m.def("energy", &energy, py::arg("model"), py::arg("values"));
    m.def("convert", &convert, py::arg("model"), py::arg("target"));
    m.def("scale_to_unit_range", &scale_to_unit_range);
    m.def("build_problem_model", &build_problem_model, py::arg("problem"), py::arg("graph"));

    py::class_<HardwareGraph>(m, "HardwareGraph")
        .def_property_readonly("num_qubits", &HardwareGraph::num_qubits)
        .def_property_readonly("couplers", &HardwareGraph::couplers)
        .def("has_coupler", &HardwareGraph::has_coupler);
    m.def("chimera", &chimera, py::arg("rows"), py::arg("cols"), py::arg("shore") = 4);

    py::class_<Embedding>(m, "Embedding")
        .def(py::init<std::map<Variable, std::vector<Qubit>>>())
        .def_property_readonly("chains", &Embedding::chains)
        .def("chain", &Embedding::chain)
        .def_property_readonly("max_chain_length", &Embedding::max_chain_length)
        .def("__len__", &Embedding::size)
        .def("to_json", [](const Embedding& e) { return to_json(e); })
        .def_static("from_json", [](const std::string& s) { return embedding_from_json(s); });
    m.def("clique_embedding", &clique_embedding, py::arg("k"), py::arg("hardware"));
    m.def(
        "validate_embedding",
        [](const Embedding& e, const Graph& g, const HardwareGraph& hw) {
            std::vector<std::string> out;
            for (const auto& v : validate_embedding(e, g, hw)) out.push_back(v.message);
            return out;
        },
        "Messages of every violation; empty when the embedding is valid.");
    m.def("uniform_torque_compensation", &uniform_torque_compensation, py::arg("model"), py::arg("logical"),
          py::arg("prefactor") = kDefaultTorquePrefactor);

    py::class_<PhysicalModel>(m, "PhysicalModel")
        .def_readonly("ising", &PhysicalModel::ising)
        .def_readonly("chain_strength", &PhysicalModel::chain_strength)
        .def_readonly("num_chain_couplers", &PhysicalModel::num_chain_couplers);
    m.def("embed_bqm", &embed_bqm, py::arg("model"), py::arg("embedding"), py::arg("hardware"),
          py::arg("chain_strength"));

    py::class_<AnnealParams>(m, "AnnealParams")
        .def(py::init<>())
        .def_readwrite("num_reads", &AnnealParams::num_reads)
        .def_readwrite("sweeps", &AnnealParams::sweeps)
        .def_readwrite("beta_min", &AnnealParams::beta_min)
        .def_readwrite("beta_max", &AnnealParams::beta_max)
        .def_readwrite("seed", &AnnealParams::seed)
        .def_readwrite("threads", &AnnealParams::threads);
    py::class_<PhysicalSample>(m, "PhysicalSample")
        .def_readonly("energy", &PhysicalSample::energy)
        .def_readonly("spins", &PhysicalSample::spins)
        .def("spin", &PhysicalSample::spin);
    py::class_<SampleSet>(m, "SampleSet")
        .def_readonly("samples", &SampleSet::samples)
        .def("__len__", &SampleSet::size)
        .def("to_json", [](const SampleSet& s) { return to_json(s); });
    m.def("simulated_anneal", &simulated_anneal, py::arg("model"), py::arg("params"));
    m.def("inject_chain_breaks", &inject_chain_breaks, py::arg("logical"), py::arg("embedding"), py::arg("p_break"),
          py::arg("seed"), py::arg("model"));

    py::class_<ChainReadout>(m, "ChainReadout")
        .def_readonly("variable", &ChainReadout::variable)
        .def_readonly("values", &ChainReadout::values)
        .def_readonly("broken", &ChainReadout::broken)
        .def_readonly("frac_ones", &ChainReadout::frac_ones);
    m.def("decompose", &decompose, py::arg("sample"), py::arg("embedding"), py::arg("domain"));
    m.def(
        "unembed",
        [](Method method, const std::vector<ChainReadout>& rs, const Graph& g, ProblemKind kind, std::uint64_t seed,
           const BQM& model) { return unembed(method, rs, UnembedContext{&g, kind, seed}, model).values; },
        py::arg("method"), py::arg("readouts"), py::arg("graph"), py::arg("problem"), py::arg("seed"),
        py::arg("model"));
    m.def(
        "score",
        [](ProblemKind kind, const Graph& g, const Assignment& values) {
            const Score s = score_assignment(kind, g, values);
            return py::make_tuple(s.objective, s.feasible);
        },
        "(objective, feasible) of a logical assignment.");

    m.def("improvement_ratio", &improvement_ratio);
    m.def("normalize_objectives", [](const std::vector<double>& v) { return normalize_objectives(v); });
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("problem", &ExperimentConfig::problem)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("densities", &ExperimentConfig::densities)
        .def_readwrite("graphs", &ExperimentConfig::graphs)
        .def_readwrite("anneal", &ExperimentConfig::anneal)
        .def_readwrite("chain_strength_grid", &ExperimentConfig::chain_strength_grid)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("aggregate", &ExperimentConfig::aggregate)
        .def_property(
            "topology", [](const ExperimentConfig& c) { return std::make_tuple(c.topology.rows, c.topology.cols, c.topology.shore); },
            [](ExperimentConfig& c, std::tuple<int, int, int> t) {
                c.topology = {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
            })
        .def_property(
            "chain_strength",
            [](const ExperimentConfig& c) -> py::object {
                if (c.chain_strength.torque) return py::str("utc");
                return py::float_(c.chain_strength.value);
            },
            [](ExperimentConfig& c, py::object v) {
                if (py::isinstance<py::str>(v) && v.cast<std::string>() == "utc") {
                    c.chain_strength.torque = true;
                } else {
                    c.chain_strength.torque = false;
                    c.chain_strength.value = v.cast<double>();
                }
            })
        .def("validate", &ExperimentConfig::validate);
    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("experiment", &ExperimentResult::experiment)
        .def_readonly("graph_seeds", &ExperimentResult::graph_seeds)
        .def_property_readonly("csv", [](const ExperimentResult& r) { return to_csv(r.rows); })
        .def("manifest", [](const ExperimentResult& r, const ExperimentConfig& c) { return manifest_json(c, r); });
    m.def("run_fig2", &run_fig2);
    m.def("run_fig3", &run_fig3);
    m.def("run_fig4", &run_fig4);
}
