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

#include <Eigen/SVD>

#include "envlab/analysis.hpp"
#include "envlab/error.hpp"

namespace envlab {

// sqrt F is the trace norm of sqrt(a) sqrt(b).
double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.space() == b.space())) {
    fail(ErrorCode::SpaceMismatch, "fidelity needs states on the same space");
  }
  CMatrix product = hermitian_sqrt(a.matrix()) * hermitian_sqrt(b.matrix());
  Eigen::JacobiSVD<CMatrix> svd(product);
  double trace = svd.singularValues().sum();
  return trace * trace;
}

}  // namespace envlab
