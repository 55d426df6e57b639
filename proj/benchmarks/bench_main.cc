// Copyright 2026 The plmforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "plmforge/coset_auth.h"
#include "plmforge/obfuscator.h"
#include "plmforge/plm.h"
#include "plmforge/statevec.h"

using namespace plmforge;

static void bm_hadamard_gate(benchmark::State &state) {
    int n = (int)state.range(0);
    Rng rng(1);
    StateVector s = StateVector::random(n, rng);
    int q = 0;
    for (auto _ : state) {
        s.h(q);
        q = (q + 1) % n;
    }
    state.SetItemsProcessed(state.iterations() << n);
}
BENCHMARK(bm_hadamard_gate)->Arg(10)->Arg(16)->Arg(20);

static void bm_cnot_gate(benchmark::State &state) {
    int n = (int)state.range(0);
    Rng rng(2);
    StateVector s = StateVector::random(n, rng);
    for (auto _ : state) {
        s.cnot(0, n - 1);
    }
    state.SetItemsProcessed(state.iterations() << n);
}
BENCHMARK(bm_cnot_gate)->Arg(10)->Arg(16)->Arg(20);

static void bm_measure_fn_distribution(benchmark::State &state) {
    int n = (int)state.range(0);
    Rng rng(3);
    StateVector s = StateVector::random(n, rng);
    std::vector<int> wires;
    for (int w = 0; w < n; w += 2) {
        wires.push_back(w);
    }
    MeasSpec spec{[](const BitVec &b) { return BitVec::from_uint(b.to_uint() & 3, 2); }, BitVec(wires.size()), {}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(measure_fn_distribution(s, spec, wires));
    }
}
BENCHMARK(bm_measure_fn_distribution)->Arg(10)->Arg(16);

static void bm_compile(benchmark::State &state) {
    Circuit c = parse_circuit("qubits 2\nH 0\nT 0\nCNOT 0 1\nH 1\nT 1\nS 0\nH 0\nmeasure 0 1\n");
    for (auto _ : state) {
        benchmark::DoNotOptimize(compile(c));
    }
}
BENCHMARK(bm_compile);

static void bm_enc(benchmark::State &state) {
    int lambda = (int)state.range(0);
    Rng rng(4);
    AuthKey key = keygen(lambda, 2, rng);
    StateVector s = StateVector::random(2, rng);
    std::vector<int> logical{0, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(enc(key, s, logical));
    }
}
BENCHMARK(bm_enc)->Arg(1)->Arg(2);

static void bm_obfuscate_and_evaluate(benchmark::State &state) {
    Rng rng(5);
    Circuit u = parse_circuit("qubits 1\nT 0\nH 0\n");
    StateVector in = StateVector::random(2, rng);
    for (auto _ : state) {
        ObfuscationPackage pkg = qobf(u, StateVector(0), ObfParams{}, rng);
        benchmark::DoNotOptimize(qeval(pkg, in, rng));
    }
}
BENCHMARK(bm_obfuscate_and_evaluate)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
