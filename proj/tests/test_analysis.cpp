// Copyright 2026 The envlab Authors
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

#include <cmath>

#include "envlab/analysis.hpp"
#include "support.hpp"

using namespace envlab;
using namespace envlab::testing;

namespace {

SpaceDescriptor one_qubit() { return SpaceDescriptor(std::vector<Subsystem>{{"q", {"0", "1"}}}); }

DensityMatrix random_mixed(std::mt19937_64& rng, const SpaceDescriptor& space) {
  auto n = static_cast<Eigen::Index>(space.dimension());
  CMatrix g(n, n);
  for (Eigen::Index k = 0; k < n; ++k) g.col(k) = random_vector(rng, n);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(space, m);
}

}  // namespace

TEST(Fidelity, Examples) {
  auto zero = density_of(Ket::basis(one_qubit(), {"0"}));
  CVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  auto plus_state = density_of(Ket(one_qubit(), plus));
  EXPECT_NEAR(fidelity(zero, plus_state), 0.5, 1e-12);
  EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(zero, density_of(Ket::basis(one_qubit(), {"1"}))), 0.0, 1e-12);
  // Against I/2 every qubit state has fidelity 1/2 when pure.
  EXPECT_NEAR(fidelity(plus_state, DensityMatrix::maximally_mixed(one_qubit())), 0.5, 1e-12);
}

TEST(Fidelity, SpaceMismatch) {
  auto a = DensityMatrix::maximally_mixed(one_qubit());
  auto b = DensityMatrix::maximally_mixed(qubits("a", "b"));
  EXPECT_ERROR_CODE(fidelity(a, b), ErrorCode::SpaceMismatch);
}

TEST(FidelityProperty, PureStatesGiveSquaredOverlap) {
  std::mt19937_64 rng(61);
  auto space = qubits("a", "b");
  for (int trial = 0; trial < 200; ++trial) {
    Ket x = random_ket(rng, space);
    Ket y = random_ket(rng, space);
    EXPECT_NEAR(fidelity(density_of(x), density_of(y)), std::norm(x.inner(y)), 1e-9);
  }
}

// Oracle for qubits: F = Tr(ab) + 2 sqrt(det a det b).
TEST(FidelityProperty, QubitClosedForm) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_mixed(rng, one_qubit());
    auto b = random_mixed(rng, one_qubit());
    double closed = (a.matrix() * b.matrix()).trace().real() +
                    2.0 * std::sqrt(std::max(0.0, a.matrix().determinant().real() *
                                                      b.matrix().determinant().real()));
    EXPECT_NEAR(fidelity(a, b), closed, 1e-10);
  }
}

TEST(FidelityProperty, SymmetricBoundedAndUnitarilyInvariant) {
  std::mt19937_64 rng(63);
  auto space = qubits("a", "b");
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_mixed(rng, space);
    auto b = random_mixed(rng, space);
    double f = fidelity(a, b);
    EXPECT_NEAR(f, fidelity(b, a), 1e-10);
    EXPECT_GE(f, -1e-12);
    EXPECT_LE(f, 1.0 + 1e-10);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-10);
    CMatrix u = random_unitary(rng, 4);
    DensityMatrix ua(space, u * a.matrix() * u.adjoint());
    DensityMatrix ub(space, u * b.matrix() * u.adjoint());
    EXPECT_NEAR(fidelity(ua, ub), f, 1e-9);
  }
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0000000000000002), "1.0000000000000002");
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int trial = 0; trial < 1000; ++trial) {
    double x = u(rng);
    EXPECT_EQ(std::strtod(format_number(x).c_str(), nullptr), x);
  }
}
