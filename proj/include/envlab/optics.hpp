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

#include <string>
#include <utility>
#include <vector>

#include "envlab/state.hpp"

namespace envlab {

/// Unitary on a labeled (sub)space.
///
/// `guarded_inputs` lists basis indices whose true image lies outside the
/// modeled space (the q-plate's OAM window edges). The matrix completes those
/// columns only to stay unitary; apply() refuses any ket with population on
/// them instead of silently folding it back into the window.
class UnitaryOp {
 public:
  /// Throws SpaceMismatch on shape, NotUnitary if U^dag U deviates from I by
  /// more than `tol` in any element.
  UnitaryOp(SpaceDescriptor space, CMatrix matrix, std::string label,
            std::vector<std::size_t> guarded_inputs = {}, double tol = 1e-10);

  static UnitaryOp identity(SpaceDescriptor space);

  const SpaceDescriptor& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  const std::vector<std::size_t>& guarded_inputs() const { return guarded_; }

  UnitaryOp adjoint() const;
  /// this * other (other acts first). Spaces must match.
  UnitaryOp after(const UnitaryOp& other) const;

 private:
  SpaceDescriptor space_;
  CMatrix matrix_;
  std::string label_;
  std::vector<std::size_t> guarded_;
};

struct SwapSpec {
  std::string subsystem;
  std::pair<std::string, std::string> label_pair;
};

/// Applies u to psi, lifting u onto psi's space when u acts on a subset of its
/// subsystems. Throws SpaceMismatch or OamOverflow.
Ket apply(const UnitaryOp& u, const Ket& psi);

/// |a><b| + |b><a| on one subsystem, identity on its other labels.
/// Throws UnknownBasisLabel / InvalidArgument / UnknownSubsystem.
UnitaryOp swap_operator(const SwapSpec& spec, const SpaceDescriptor& space);

/// u (x) I on the remaining subsystems of `full`, indexed in full's order.
/// u's subsystems may appear in any order inside `full`. Throws SpaceMismatch.
UnitaryOp lift(const UnitaryOp& u, const SpaceDescriptor& full);

/// u_a (x) u_b on the concatenated space.
UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b);

/// Jones retarder in the circular basis {R, L}: retardance `retardance`,
/// fast axis at `angle` from horizontal, with |H> = (|R> + |L>)/sqrt(2).
UnitaryOp retarder(double retardance, double angle,
                   const Subsystem& sam = sam_subsystem());
/// At angle 0 this is -i (|R><L| + |L><R|).
UnitaryOp half_wave_plate(double angle, const Subsystem& sam = sam_subsystem());
UnitaryOp quarter_wave_plate(double angle,
                             const Subsystem& sam = sam_subsystem());

/// Tuned, lossless q-plate on SAM (x) OAM:
/// |R,l> -> |L,l-2q>, |L,l> -> |R,l+2q>. `q` must be a nonzero half-integer.
/// Inputs whose image leaves the window are guarded (OamOverflow on apply).
UnitaryOp q_plate(double q, const Subsystem& sam = sam_subsystem(),
                  const Subsystem& oam = oam_window("oam", -2, 2));

/// pi/2 cylindrical-lens mode converter on OAM {+1, -1}: the OAM analog of the
/// swap-setting half-wave plate, -i (|+1><-1| + |-1><+1|).
/// Throws UnsupportedSubspace for any other label set.
UnitaryOp mode_converter_pi2(const Subsystem& oam = oam_subsystem());

/// diag phase: multiplies the basis ket `label` by e^{i phase}.
UnitaryOp phase_gate(const Subsystem& subsystem, const std::string& label,
                     double phase);

/// U^dag U against the identity, max elementwise deviation.
double unitarity_error(const CMatrix& u);

/// min over global phase of ||a - e^{i phi} b|| in the Frobenius norm.
double phase_insensitive_distance(const CMatrix& a, const CMatrix& b);

}  // namespace envlab
