#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qktext/circuit.hpp"
#include "qktext/errors.hpp"
#include "qktext/feature_map.hpp"
#include "qktext/rng.hpp"

using namespace qktext;

namespace {

constexpr double kPi = 3.14159265358979323846;
using Cd = std::complex<double>;

FeatureVector random_signed_unit(Eigen::Index dim, Rng& rng) {
  FeatureVector v(dim);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.normal();
    norm = v.norm();
  } while (norm < 1e-6);
  return v / norm;
}

}  // namespace

TEST_CASE("pad_and_normalize pads with zeros and scales to unit norm") {
  FeatureVector v(3);
  v << 3.0, 0.0, 4.0;
  const FeatureVector out = pad_and_normalize(v, 2);
  CHECK(out.size() == 4);
  CHECK(out[0] == doctest::Approx(0.6));
  CHECK(out[1] == doctest::Approx(0.0));
  CHECK(out[2] == doctest::Approx(0.8));
  CHECK(out[3] == doctest::Approx(0.0));

  FeatureVector zero = FeatureVector::Zero(3);
  CHECK_THROWS_AS(pad_and_normalize(zero, 2), DegenerateInputError);
  FeatureVector longer(5);
  longer << 1, 2, 3, 4, 5;
  CHECK_THROWS_AS(pad_and_normalize(longer, 2), ShapeError);
  CHECK_THROWS_AS(pad_and_normalize(v, 13), CapacityError);
}

TEST_CASE("angle tree reproduces hand-worked examples") {
  FeatureVector uniform(4);
  uniform << 0.5, 0.5, 0.5, 0.5;
  const AngleTree tree = build_angle_tree(uniform);
  REQUIRE(tree.levels.size() == 2);
  REQUIRE(tree.levels[0].size() == 1);
  REQUIRE(tree.levels[1].size() == 2);
  CHECK(tree.levels[0][0] == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(tree.levels[1][0] == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(tree.levels[1][1] == doctest::Approx(kPi / 2).epsilon(1e-12));

  FeatureVector flip(2);
  flip << M_SQRT1_2, -M_SQRT1_2;
  CHECK(build_angle_tree(flip).levels[0][0] ==
        doctest::Approx(-kPi / 2).epsilon(1e-12));

  FeatureVector basis(2);
  basis << 0.0, 1.0;
  CHECK(build_angle_tree(basis).levels[0][0] ==
        doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("angle tree rejects non-power-of-two and non-unit input") {
  FeatureVector three(3);
  three << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(build_angle_tree(three), ArgumentError);
  FeatureVector not_unit(2);
  not_unit << 1.0, 1.0;
  CHECK_THROWS_AS(build_angle_tree(not_unit), ArgumentError);
}

TEST_CASE("state preparation reproduces signed amplitudes exactly") {
  Rng rng(555);
  for (Eigen::Index dim : {2, 4, 8, 16, 32}) {
    for (int trial = 0; trial < 40; ++trial) {
      const FeatureVector v = random_signed_unit(dim, rng);
      const Circuit prep = amplitude_circuit(build_angle_tree(v));
      const QuantumState s = run_circuit(prep, zero_state(prep.n_qubits));
      double worst = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        worst = std::max(worst, std::abs(s.amps[static_cast<std::size_t>(i)] -
                                         Cd{v[i], 0.0}));
      }
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("state preparation handles axis-aligned and padded vectors") {
  FeatureVector v(3);
  v << 0.0, -1.0, 0.0;
  const FeatureVector padded = pad_and_normalize(v, 2);
  const Circuit prep = amplitude_circuit(build_angle_tree(padded));
  const QuantumState s = run_circuit(prep, zero_state(2));
  CHECK(std::abs(s.amps[1] - Cd{-1.0, 0.0}) < 1e-12);
  CHECK(std::abs(s.amps[0]) < 1e-12);
  CHECK(std::abs(s.amps[2]) < 1e-12);
  CHECK(std::abs(s.amps[3]) < 1e-12);
}

TEST_CASE("zz circuit has the expected gate count and layer order") {
  FeatureVector x(3);
  x << 0.3, 1.1, 2.9;
  const Circuit c = zz_circuit(x, 2);
  // Per repetition: n Hadamards, n single rotations, 3 gates per pair.
  const int pairs = 3;
  CHECK(c.gates.size() == 2 * (3 + 3 + 3 * pairs));
  CHECK(c.gates[0].kind == GateKind::kH);
  CHECK(c.gates[3].kind == GateKind::kRz);
  CHECK(c.gates[3].angle == doctest::Approx(2.0 * 0.3));
  CHECK(c.gates[6].kind == GateKind::kCnot);
}

TEST_CASE("zz circuit matches a direct phase computation on two qubits") {
  // One repetition on x = (a, b): H H, RZ(2a) RZ(2b),
  // CNOT(0->1), RZ(2(pi-a)(pi-b)) on qubit 1, CNOT(0->1).
  const double a = 0.4, b = 2.2;
  FeatureVector x(2);
  x << a, b;
  const QuantumState s = run_circuit(zz_circuit(x, 1), zero_state(2));

  // Closed form: index q1 q0, phase contributions from single rotations
  // with sign by bit, and the pair term with sign by XOR of bits.
  const double pair = 2.0 * (kPi - a) * (kPi - b);
  for (std::size_t idx = 0; idx < 4; ++idx) {
    const double s0 = (idx & 1) ? 1.0 : -1.0;
    const double s1 = (idx & 2) ? 1.0 : -1.0;
    const double sp = ((idx & 1) != ((idx >> 1) & 1)) ? 1.0 : -1.0;
    const Cd want = 0.5 * std::polar(1.0, (s0 * 2.0 * a + s1 * 2.0 * b + sp * pair) / 2.0);
    CHECK(std::abs(s.amps[idx] - want) < 1e-12);
  }
}

TEST_CASE("zz circuit rejects bad widths") {
  FeatureVector x(2);
  x << 0.1, 0.2;
  CHECK_THROWS_AS(zz_circuit(x, 0), ArgumentError);
  FeatureMapSpec spec;
  spec.kind = FeatureMapKind::kZz;
  spec.n_qubits = 3;
  CHECK_THROWS_AS(feature_circuit(spec, x), ShapeError);
}

TEST_CASE("feature_circuit dispatches on the map kind") {
  FeatureVector x(2);
  x << 1.0, 1.0;

  FeatureMapSpec amp;
  amp.kind = FeatureMapKind::kAmplitude;
  amp.n_qubits = 1;
  const QuantumState s = run_circuit(feature_circuit(amp, x), zero_state(1));
  CHECK(std::abs(s.amps[0] - Cd{M_SQRT1_2, 0.0}) < 1e-12);

  FeatureMapSpec zz;
  zz.kind = FeatureMapKind::kZz;
  zz.n_qubits = 2;
  zz.reps = 2;
  CHECK(feature_circuit(zz, x).gates.size() == 2 * (2 + 2 + 3));
}

TEST_CASE("zz scaler maps the training range onto [0, pi]") {
  std::vector<FeatureVector> train;
  FeatureVector a(2), b(2);
  a << -1.0, 5.0;
  b << 3.0, 5.0;
  train.push_back(a);
  train.push_back(b);
  const ZzScaler scaler = ZzScaler::fit(train);

  const FeatureVector ta = scaler.transform(a);
  CHECK(ta[0] == doctest::Approx(0.0));
  // Constant dimension collapses to the midpoint.
  CHECK(ta[1] == doctest::Approx(kPi / 2));
  CHECK(scaler.transform(b)[0] == doctest::Approx(kPi));

  FeatureVector mid(2), wild(2);
  mid << 1.0, 5.0;
  CHECK(scaler.transform(mid)[0] == doctest::Approx(kPi / 2));
  // Out-of-range values clamp instead of leaving [0, pi].
  wild << 100.0, -100.0;
  CHECK(scaler.transform(wild)[0] == doctest::Approx(kPi));
  CHECK(scaler.transform(wild)[1] == doctest::Approx(kPi / 2));

  CHECK_THROWS_AS(ZzScaler::fit({}), ArgumentError);
}
