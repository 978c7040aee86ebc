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

#pragma once

// Hand-rolled generators and helpers shared by the unit tests.

#include <gtest/gtest.h>

#include <Eigen/QR>

#include <random>

#include "envlab/error.hpp"
#include "envlab/state.hpp"

namespace envlab::testing {

#define EXPECT_ERROR_CODE(statement, expected)                       \
  do {                                                               \
    try {                                                            \
      statement;                                                     \
      ADD_FAILURE() << "expected " << ::envlab::to_string(expected); \
    } catch (const ::envlab::Error& e_) {                            \
      EXPECT_EQ(e_.code(), expected) << e_.what();                   \
    }                                                                \
  } while (0)

inline CVector random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline Ket random_ket(std::mt19937_64& rng, const SpaceDescriptor& space) {
  CVector v = random_vector(rng, static_cast<Eigen::Index>(space.dimension()));
  return Ket(space, v / v.norm());
}

// Haar-distributed unitary from the QR decomposition of a Ginibre matrix,
// with the phases of R's diagonal folded back into Q.
inline CMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  CMatrix g(n, n);
  for (Eigen::Index k = 0; k < n; ++k) g.col(k) = random_vector(rng, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex d = r(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return q;
}

inline SpaceDescriptor qubits(const std::string& a, const std::string& b) {
  return SpaceDescriptor({{a, {"0", "1"}}, {b, {"0", "1"}}});
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace envlab::testing
