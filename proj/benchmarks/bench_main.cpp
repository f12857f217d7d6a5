// Copyright 2026 The qktext authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the hot paths: gate application, state preparation,
// kernel evaluation, Gram assembly, and SVM training. Sizes are chosen to
// bracket the experiment configurations that ship in configs/.

#include <vector>

#include <benchmark/benchmark.h>

#include "qktext/circuit.hpp"
#include "qktext/feature_map.hpp"
#include "qktext/kernel.hpp"
#include "qktext/rng.hpp"
#include "qktext/svm.hpp"

namespace {

using namespace qktext;

FeatureVector random_unit_vector(Rng& rng, int dim) {
  FeatureVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.normal();
  return v / v.norm();
}

std::vector<FeatureVector> random_unit_vectors(std::uint64_t seed, int count,
                                               int dim) {
  Rng rng(seed);
  std::vector<FeatureVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(random_unit_vector(rng, dim));
  return out;
}

// One Hadamard per qubit on an n-qubit state; reports time per gate.
void BM_GateApplication(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  QuantumState psi = zero_state(n);
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) apply_gate(psi, Gate::h(q));
    benchmark::DoNotOptimize(psi.amps.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GateApplication)->Arg(4)->Arg(8)->Arg(12);

void BM_StatePreparation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(11);
  const FeatureVector target = random_unit_vector(rng, 1 << n);
  FeatureMapSpec spec;
  spec.n_qubits = n;
  for (auto _ : state) {
    QuantumState psi = run_circuit(feature_circuit(spec, target), zero_state(n));
    benchmark::DoNotOptimize(psi.amps.data());
  }
}
BENCHMARK(BM_StatePreparation)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_ExactKernelAmplitude(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(12);
  const FeatureVector x = random_unit_vector(rng, 1 << n);
  const FeatureVector y = random_unit_vector(rng, 1 << n);
  FeatureMapSpec spec;
  spec.n_qubits = n;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_kernel(spec, x, y));
  }
}
BENCHMARK(BM_ExactKernelAmplitude)->Arg(2)->Arg(4)->Arg(6);

void BM_ExactKernelZz(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(13);
  FeatureVector x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.uniform(0.0, 3.14159);
    y[i] = rng.uniform(0.0, 3.14159);
  }
  FeatureMapSpec spec;
  spec.kind = FeatureMapKind::kZz;
  spec.n_qubits = n;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_kernel(spec, x, y));
  }
}
BENCHMARK(BM_ExactKernelZz)->Arg(2)->Arg(4)->Arg(8);

void BM_EstimatedKernel(benchmark::State& state) {
  const long shots = state.range(0);
  Rng rng(14);
  const FeatureVector x = random_unit_vector(rng, 16);
  const FeatureVector y = random_unit_vector(rng, 16);
  FeatureMapSpec spec;
  spec.n_qubits = 4;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimated_kernel(spec, x, y, {shots, ++seed}, 0, 1));
  }
}
BENCHMARK(BM_EstimatedKernel)->Arg(1000)->Arg(10000);

// Full training Gram at the movie-experiment size (40 x 40, 4-dim inputs).
void BM_GramMatrix(benchmark::State& state) {
  const auto vectors = random_unit_vectors(15, 40, 4);
  FeatureMapSpec spec;
  spec.n_qubits = 2;
  const ShotConfig cfg{state.range(0), 9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram_matrix(spec, vectors, cfg).data());
  }
}
BENCHMARK(BM_GramMatrix)->Arg(0)->Arg(10000);

void BM_SmoTrain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(16);
  std::vector<FeatureVector> points;
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    const int cls = i % 2 == 0 ? 1 : -1;
    FeatureVector p(3);
    p << 1.0, cls * 0.8 + 0.35 * rng.normal(), 0.35 * rng.normal();
    points.push_back(p);
    labels.push_back(cls);
  }
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gram(i, j) = points[i].dot(points[j]);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_svm(gram, labels).alphas.data());
  }
}
BENCHMARK(BM_SmoTrain)->Arg(40)->Arg(70);

}  // namespace

BENCHMARK_MAIN();
