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

#include "envlab/kinds.hpp"
#include "envlab/optics.hpp"

namespace envlab {

/// Subsystem ids used by the two pipelines.
namespace ids {
inline constexpr const char* kSamSignal = "sam_s";
inline constexpr const char* kSamIdler = "sam_i";
inline constexpr const char* kOamSignal = "oam_s";
inline constexpr const char* kOamIdler = "oam_i";
inline constexpr const char* kSam = "sam";
inline constexpr const char* kOam = "oam";
}  // namespace ids

/// Which subsystem plays system and which plays environment. The assignment
/// is part of the experiment: OAM is the system in the nonlocal run and SAM is
/// the system in the local run.
struct Roles {
  std::string system;
  std::string environment;
};

Roles roles(ExperimentKind kind);

struct PostSelectionResult {
  Ket ket;
  double success_probability = 0.0;
};

/// Linear polarization kets in the circular basis.
Ket horizontal(const std::string& id);

/// (|+1>_s |-1>_i + |-1>_s |+1>_i)/sqrt2 (x) |H>_s (x) |H>_i on
/// [oam_s (window -2..2), oam_i {+1,-1}, sam_s, sam_i].
Ket spdc_state();

/// Projects `subsystem` onto `label`, removes it, renormalizes.
/// Throws UnknownSubsystem, UnknownBasisLabel, EmptyPostSelection.
PostSelectionResult post_select(const Ket& psi, const std::string& subsystem,
                                const std::string& label);

/// Removes a subsystem known to be in the product state `factor`.
/// Throws InvalidState if psi does not factor that way within 1e-12.
Ket factor_out(const Ket& psi, const Ket& factor);

/// Bell-form ket (|R,+1> + |L,-1>)/sqrt2. Nonlocal: on [sam_s, oam_i] after
/// the q-plate on the signal, post-selection on |0>_s and removal of the idler
/// polarization. Local: on [sam, oam] from |H>|0> through the q-plate.
Ket prepare(ExperimentKind kind);

/// Success probability of the nonlocal post-selection on |0>_s.
double nonlocal_post_selection_probability();

struct SwapOptions {
  /// Fast-axis errors (radians) added to the half-wave plate used as a swap.
  double system_plate_error = 0.0;
  double environment_plate_error = 0.0;
  /// Replace the environment swap by diag(1, -1), which is not a swap and
  /// breaks envariance. Used as a negative control.
  bool corrupt_environment_swap = false;
};

/// The swap that acts on the system / environment of `kind`. Nonlocal:
/// system = exact OAM label swap (mirror), environment = half-wave plate.
/// Local: system = half-wave plate, environment = pi/2 mode converter.
UnitaryOp system_swap(ExperimentKind kind, const SwapOptions& options = {});
UnitaryOp environment_swap(ExperimentKind kind, const SwapOptions& options = {});

/// Applies the system swap then the environment swap, as selected.
Ket apply_swap_config(const Ket& psi, ExperimentKind kind, SwapConfig config,
                      const SwapOptions& options = {});

}  // namespace envlab
