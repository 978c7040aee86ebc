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

#include "envlab/experiment.hpp"

#include <cmath>
#include <numbers>

#include "envlab/error.hpp"

namespace envlab {

Roles roles(ExperimentKind kind) {
  if (kind == ExperimentKind::Nonlocal) return {ids::kOamIdler, ids::kSamSignal};
  return {ids::kSam, ids::kOam};
}

Ket horizontal(const std::string& id) {
  CVector v(2);
  v << 1.0, 1.0;
  return Ket(SpaceDescriptor({sam_subsystem(id)}), v / std::sqrt(2.0));
}

Ket spdc_state() {
  SpaceDescriptor oam({oam_window(ids::kOamSignal, -2, 2),
                       oam_subsystem(ids::kOamIdler)});
  Ket pair = Ket(oam, Ket::basis(oam, {"+1", "-1"}).amplitudes() +
                          Ket::basis(oam, {"-1", "+1"}).amplitudes())
                 .normalized();
  return tensor(tensor(pair, horizontal(ids::kSamSignal)),
                horizontal(ids::kSamIdler));
}

PostSelectionResult post_select(const Ket& psi, const std::string& subsystem,
                                const std::string& label) {
  const auto& space = psi.space();
  auto pos = space.position(subsystem);
  auto wanted = space.subsystems()[pos].index_of(label);
  SpaceDescriptor rest = space.without(subsystem);
  CVector out = CVector::Zero(static_cast<Eigen::Index>(rest.dimension()));
  std::vector<std::size_t> rest_digits(rest.size());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    auto d = space.digits(i);
    if (d[pos] != wanted) continue;
    for (std::size_t k = 0, r = 0; k < d.size(); ++k) {
      if (k != pos) rest_digits[r++] = d[k];
    }
    out(static_cast<Eigen::Index>(rest.index(rest_digits))) =
        psi.amplitudes()(static_cast<Eigen::Index>(i));
  }
  double p = out.squaredNorm();
  if (p <= 1e-24) {
    fail(ErrorCode::EmptyPostSelection,
         "no amplitude on |" + label + ">_" + subsystem);
  }
  return {Ket(std::move(rest), out / std::sqrt(p)), p};
}

Ket factor_out(const Ket& psi, const Ket& factor) {
  if (factor.space().size() != 1) {
    fail(ErrorCode::InvalidArgument, "factor must live on one subsystem");
  }
  const auto& id = factor.space().subsystems()[0].id;
  const auto& space = psi.space();
  auto pos = space.position(id);
  if (!(space.subsystems()[pos] == factor.space().subsystems()[0])) {
    fail(ErrorCode::SpaceMismatch, "factor basis differs from subsystem '" + id + "'");
  }
  SpaceDescriptor rest = space.without(id);
  CVector contracted = CVector::Zero(static_cast<Eigen::Index>(rest.dimension()));
  std::vector<std::size_t> rest_digits(rest.size());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    auto d = space.digits(i);
    for (std::size_t k = 0, r = 0; k < d.size(); ++k) {
      if (k != pos) rest_digits[r++] = d[k];
    }
    contracted(static_cast<Eigen::Index>(rest.index(rest_digits))) +=
        std::conj(factor.amplitudes()(static_cast<Eigen::Index>(d[pos]))) *
        psi.amplitudes()(static_cast<Eigen::Index>(i));
  }
  Ket remainder(rest, contracted);
  // psi = remainder (x) factor exactly when nothing is left orthogonal.
  Ket rebuilt = tensor(remainder, factor).reordered(space.ids());
  if ((rebuilt.amplitudes() - psi.amplitudes()).norm() > 1e-12) {
    fail(ErrorCode::InvalidState,
         "subsystem '" + id + "' is not in the stated product state");
  }
  return remainder;
}

namespace {

PostSelectionResult nonlocal_chain() {
  Ket pair = spdc_state();
  UnitaryOp qp = q_plate(0.5, sam_subsystem(ids::kSamSignal),
                         oam_window(ids::kOamSignal, -2, 2));
  Ket converted = apply(qp, pair);
  auto selected = post_select(converted, ids::kOamSignal, "0");
  Ket signal = factor_out(selected.ket, horizontal(ids::kSamIdler));
  return {signal.reordered({ids::kSamSignal, ids::kOamIdler}),
          selected.success_probability};
}

}  // namespace

double nonlocal_post_selection_probability() {
  return nonlocal_chain().success_probability;
}

Ket prepare(ExperimentKind kind) {
  if (kind == ExperimentKind::Nonlocal) return nonlocal_chain().ket;
  SpaceDescriptor window({oam_window(ids::kOam, -2, 2)});
  Ket input = tensor(horizontal(ids::kSam), Ket::basis(window, {"0"}));
  Ket converted = apply(q_plate(0.5, sam_subsystem(ids::kSam),
                                oam_window(ids::kOam, -2, 2)),
                        input);
  // All population sits on l = +1 and l = -1; restrict to that two-level space.
  SpaceDescriptor target({sam_subsystem(ids::kSam), oam_subsystem(ids::kOam)});
  CVector v(4);
  for (const auto& sam : {"R", "L"}) {
    for (const auto& oam : {"+1", "-1"}) {
      v(static_cast<Eigen::Index>(target.basis_index({sam, oam}))) =
          converted.amplitude({sam, oam});
    }
  }
  Ket out(target, v);
  if (!out.is_normalized()) {
    fail(ErrorCode::InvalidState, "local preparation left the {+1,-1} subspace");
  }
  return out;
}

UnitaryOp system_swap(ExperimentKind kind, const SwapOptions& options) {
  if (kind == ExperimentKind::Nonlocal) {
    SpaceDescriptor oam({oam_subsystem(ids::kOamIdler)});
    return swap_operator({ids::kOamIdler, {"+1", "-1"}}, oam);
  }
  return half_wave_plate(options.system_plate_error, sam_subsystem(ids::kSam));
}

UnitaryOp environment_swap(ExperimentKind kind, const SwapOptions& options) {
  if (options.corrupt_environment_swap) {
    const auto sub = kind == ExperimentKind::Nonlocal
                         ? sam_subsystem(ids::kSamSignal)
                         : oam_subsystem(ids::kOam);
    return phase_gate(sub, sub.labels[1], std::numbers::pi);
  }
  if (kind == ExperimentKind::Nonlocal) {
    return half_wave_plate(options.environment_plate_error,
                           sam_subsystem(ids::kSamSignal));
  }
  return mode_converter_pi2(oam_subsystem(ids::kOam));
}

Ket apply_swap_config(const Ket& psi, ExperimentKind kind, SwapConfig config,
                      const SwapOptions& options) {
  Ket out = psi;
  if (config.apply_system_swap) out = apply(system_swap(kind, options), out);
  if (config.apply_environment_swap) {
    out = apply(environment_swap(kind, options), out);
  }
  return out;
}

}  // namespace envlab
