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

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "chainfix/bqm.hpp"
#include "chainfix/graph.hpp"
#include "chainfix/rng.hpp"
#include "chainfix/topology.hpp"

namespace chainfix::testing {

using Chains = std::map<Variable, std::vector<Qubit>>;

inline Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (Vertex u = 0; u < static_cast<Vertex>(n); ++u)
        for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) g.add_edge(u, v);
    return g;
}

inline Graph path_graph(std::size_t n) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < static_cast<Vertex>(n); ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(std::size_t n) {
    Graph g = path_graph(n);
    g.add_edge(0, static_cast<Vertex>(n) - 1);
    return g;
}

/// Center 0, leaves 1..k.
inline Graph star_graph(std::size_t k) {
    Graph g(k + 1);
    for (Vertex v = 1; v <= static_cast<Vertex>(k); ++v) g.add_edge(0, v);
    return g;
}

/// Calls f once for every assignment of n variables over {lo, hi}, labels 0..n-1.
inline void for_each_assignment(std::size_t n, int lo, int hi, const std::function<void(const Assignment&)>& f) {
    Assignment a;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) a[static_cast<Variable>(i)] = (mask >> i) & 1 ? hi : lo;
        f(a);
    }
}

/// Plain coefficient lists, evaluated without the library.
struct RawModel {
    Domain domain = Domain::Ising;
    std::vector<double> linear;
    std::vector<std::tuple<int, int, double>> quadratic;
    double offset = 0.0;

    double energy(const Assignment& a) const {
        double e = offset;
        for (std::size_t i = 0; i < linear.size(); ++i) e += linear[i] * a.at(static_cast<Variable>(i));
        for (const auto& [u, v, j] : quadratic) e += j * a.at(u) * a.at(v);
        return e;
    }

    BQM to_bqm() const {
        BQM m(domain);
        for (std::size_t i = 0; i < linear.size(); ++i) m.add_linear(static_cast<Variable>(i), linear[i]);
        for (const auto& [u, v, j] : quadratic) m.add_quadratic(u, v, j);
        m.add_offset(offset);
        return m;
    }
};

/// Coefficients are small multiples of 1/4 so every sum is exact.
inline RawModel random_raw_model(std::size_t n, Domain domain, std::uint64_t seed, double density = 0.6) {
    Rng rng(seed);
    RawModel m;
    m.domain = domain;
    auto coeff = [&] { return (static_cast<double>(rng.below(33)) - 16.0) / 4.0; };
    for (std::size_t i = 0; i < n; ++i) m.linear.push_back(coeff());
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.bernoulli(density)) m.quadratic.emplace_back(static_cast<int>(u), static_cast<int>(v), coeff());
    m.offset = coeff();
    return m;
}

/// Bit b <-> spin 2b - 1.
inline Assignment to_spins(const Assignment& bits) {
    Assignment s;
    for (const auto& [v, b] : bits) s[v] = 2 * b - 1;
    return s;
}

}  // namespace chainfix::testing
