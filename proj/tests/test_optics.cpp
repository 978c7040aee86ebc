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
#include <numbers>

#include "envlab/experiment.hpp"
#include "envlab/optics.hpp"
#include "support.hpp"

using namespace envlab;
using namespace envlab::testing;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr double kPi = std::numbers::pi;

SpaceDescriptor single(const Subsystem& s) { return SpaceDescriptor(std::vector<Subsystem>{s}); }

CMatrix two_level_flip() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

// Matrix of an operator lifted to `full`, assembled column by column from
// explicit basis-ket applications rather than a Kronecker product.
CMatrix matrix_by_columns(const UnitaryOp& u, const SpaceDescriptor& full) {
  CMatrix out(full.dimension(), full.dimension());
  for (std::size_t c = 0; c < full.dimension(); ++c) {
    CVector e = CVector::Zero(full.dimension());
    e(c) = 1.0;
    out.col(c) = apply(u, Ket(full, e)).amplitudes();
  }
  return out;
}

Ket bell_sam_oam() {
  SpaceDescriptor space({sam_subsystem(), oam_subsystem()});
  CVector v = CVector::Zero(4);
  v(space.basis_index({"R", "+1"})) = kInvSqrt2;
  v(space.basis_index({"L", "-1"})) = kInvSqrt2;
  return Ket(space, v);
}

}  // namespace

TEST(Swap, SamAndOamMatrices) {
  auto sam = swap_operator({"sam", {"R", "L"}}, single(sam_subsystem()));
  EXPECT_EQ(sam.matrix(), two_level_flip());
  auto oam = swap_operator({"oam", {"+1", "-1"}}, single(oam_subsystem()));
  EXPECT_EQ(oam.matrix(), two_level_flip());
  EXPECT_LT(max_abs(sam.after(sam).matrix() - CMatrix::Identity(2, 2)), 1e-12);
}

TEST(Swap, LeavesOtherLabelsAlone) {
  auto space = single(oam_window("oam", -2, 2));
  auto u = swap_operator({"oam", {"+1", "-1"}}, space);
  EXPECT_EQ(u.matrix()(space.basis_index({"0"}), space.basis_index({"0"})), Complex(1.0, 0.0));
  EXPECT_EQ(u.matrix()(space.basis_index({"+2"}), space.basis_index({"+2"})), Complex(1.0, 0.0));
  EXPECT_EQ(u.matrix()(space.basis_index({"-1"}), space.basis_index({"+1"})), Complex(1.0, 0.0));
}

TEST(Swap, Errors) {
  auto space = single(sam_subsystem());
  EXPECT_ERROR_CODE(swap_operator({"sam", {"R", "X"}}, space), ErrorCode::UnknownBasisLabel);
  EXPECT_ERROR_CODE(swap_operator({"sam", {"R", "R"}}, space), ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(swap_operator({"nope", {"R", "L"}}, space), ErrorCode::UnknownSubsystem);
}

TEST(UnitaryOp, RejectsNonUnitary) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = 2.0;
  EXPECT_ERROR_CODE(UnitaryOp(single(sam_subsystem()), m, "bad"), ErrorCode::NotUnitary);
  EXPECT_ERROR_CODE(UnitaryOp(single(sam_subsystem()), CMatrix::Identity(3, 3), "bad"),
                    ErrorCode::SpaceMismatch);
}

TEST(Lift, SwapTensorIdentityBlockMatrix) {
  SpaceDescriptor full({sam_subsystem(), oam_subsystem()});
  auto u = swap_operator({"sam", {"R", "L"}}, single(sam_subsystem()));
  auto lifted = lift(u, full);
  EXPECT_EQ(lifted.matrix(), kron(two_level_flip(), CMatrix::Identity(2, 2)));
  EXPECT_EQ(lifted.matrix(), matrix_by_columns(u, full));
  EXPECT_EQ(lift(UnitaryOp::identity(single(sam_subsystem())), full).matrix(),
            CMatrix::Identity(4, 4));
}

TEST(Lift, ProductOfLiftsMatchesLiftOfTensor) {
  SpaceDescriptor full({sam_subsystem(), oam_subsystem()});
  auto us = swap_operator({"sam", {"R", "L"}}, single(sam_subsystem()));
  auto ue = mode_converter_pi2();
  CMatrix product = lift(us, full).matrix() * lift(ue, full).matrix();
  EXPECT_EQ(product, lift(tensor(us, ue), full).matrix());
  EXPECT_EQ(product, lift(ue, full).matrix() * lift(us, full).matrix());
}

TEST(Lift, OutOfOrderSubsystems) {
  SpaceDescriptor full({oam_subsystem(), sam_subsystem()});
  auto u = swap_operator({"sam", {"R", "L"}}, single(sam_subsystem()));
  EXPECT_EQ(lift(u, full).matrix(), matrix_by_columns(u, full));
}

TEST(Lift, AbsentSubsystem) {
  auto u = swap_operator({"sam", {"R", "L"}}, single(sam_subsystem()));
  EXPECT_ERROR_CODE(lift(u, single(oam_subsystem())), ErrorCode::SpaceMismatch);
}

TEST(LiftProperty, DisjointLiftsCommuteForRandomUnitaries) {
  std::mt19937_64 rng(21);
  SpaceDescriptor full({{"a", {"0", "1"}}, {"b", {"0", "1", "2"}}, {"c", {"0", "1"}}});
  for (int trial = 0; trial < 50; ++trial) {
    UnitaryOp ua(full.restrict_to({"a"}), random_unitary(rng, 2), "ua");
    UnitaryOp uc(full.restrict_to({"c"}), random_unitary(rng, 2), "uc");
    CMatrix a = lift(ua, full).matrix();
    CMatrix c = lift(uc, full).matrix();
    EXPECT_LT(max_abs(a * c - c * a), 1e-14);
    EXPECT_LT(max_abs(a - matrix_by_columns(ua, full)), 1e-15);
  }
}

TEST(WavePlates, HalfWaveAtSwapSettingFlipsCircular) {
  auto hwp = half_wave_plate(0.0);
  EXPECT_LT(phase_insensitive_distance(hwp.matrix(), two_level_flip()), 1e-12);
  Ket r = Ket::basis(single(sam_subsystem()), {"R"});
  Ket l = Ket::basis(single(sam_subsystem()), {"L"});
  EXPECT_TRUE(equal_up_to_phase(apply(hwp, r), l, 1e-12));
  EXPECT_LT(phase_insensitive_distance(hwp.after(hwp).matrix(), CMatrix::Identity(2, 2)), 1e-12);
}

TEST(WavePlates, QuarterWaveMapsCircularToLinear) {
  auto qwp = quarter_wave_plate(kPi / 4);
  Ket r = Ket::basis(single(sam_subsystem()), {"R"});
  Ket out = apply(qwp, r);
  // Linear polarizations are equal-weight superpositions of R and L.
  EXPECT_NEAR(std::abs(out.amplitudes()(0)), kInvSqrt2, 1e-12);
  EXPECT_NEAR(std::abs(out.amplitudes()(1)), kInvSqrt2, 1e-12);
  auto four = qwp.after(qwp).after(qwp).after(qwp);
  EXPECT_LT(phase_insensitive_distance(four.matrix(), CMatrix::Identity(2, 2)), 1e-12);
}

TEST(WavePlatesProperty, UnitaryAtRandomAngles) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 100; ++trial) {
    double theta = angle(rng);
    EXPECT_LT(unitarity_error(half_wave_plate(theta).matrix()), 1e-12);
    EXPECT_LT(unitarity_error(quarter_wave_plate(theta).matrix()), 1e-12);
    EXPECT_NEAR(std::abs(half_wave_plate(theta).matrix().determinant()), 1.0, 1e-12);
  }
}

TEST(QPlate, HorizontalZeroChargeBecomesBellForm) {
  auto qp = q_plate(0.5);
  Ket in = tensor(horizontal("sam"), Ket::basis(single(oam_window("oam", -2, 2)), {"0"}));
  Ket out = apply(qp, in);
  SpaceDescriptor space = out.space();
  CVector expected = CVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  expected(space.basis_index({"R", "+1"})) = kInvSqrt2;
  expected(space.basis_index({"L", "-1"})) = kInvSqrt2;
  EXPECT_TRUE(equal_up_to_phase(out, Ket(space, expected), 1e-12));
  EXPECT_TRUE(equal_up_to_phase(apply(qp.adjoint(), out), in, 1e-12));
}

TEST(QPlate, ShiftsChargeByTwoQ) {
  auto qp = q_plate(1.0);
  auto space = qp.space();
  Ket r0 = Ket::basis(space, {"R", "0"});
  EXPECT_TRUE(equal_up_to_phase(apply(qp, r0), Ket::basis(space, {"L", "-2"}), 1e-12));
  Ket l0 = Ket::basis(space, {"L", "0"});
  EXPECT_TRUE(equal_up_to_phase(apply(qp, l0), Ket::basis(space, {"R", "+2"}), 1e-12));
}

TEST(QPlate, SquaresToIdentityOnInteriorCharges) {
  auto qp = q_plate(0.5);
  auto space = qp.space();
  for (const char* sam : {"R", "L"}) {
    for (const char* charge : {"-1", "0", "+1"}) {
      Ket k = Ket::basis(space, {sam, charge});
      EXPECT_TRUE(equal_up_to_phase(apply(qp, apply(qp, k)), k, 1e-12)) << sam << charge;
    }
  }
}

TEST(QPlate, OverflowIsAnError) {
  auto qp = q_plate(0.5);
  Ket edge = Ket::basis(qp.space(), {"R", "-2"});
  EXPECT_ERROR_CODE(apply(qp, edge), ErrorCode::OamOverflow);
  EXPECT_ERROR_CODE(q_plate(0.3), ErrorCode::InvalidArgument);
}

// Second q-plate pass: QP HWP QP |H,0> = QP (|L,+1> + |R,-1>)/sqrt2
// = (|R,+2> + |L,-2>)/sqrt2. It does not return to |H,0>; that is checked
// against the direct matrix product and recorded in the notes.
TEST(QPlate, SecondPassAfterHalfWavePlate) {
  auto qp = q_plate(0.5);
  auto space = qp.space();
  Ket in = Ket(space, tensor(horizontal("sam"), Ket::basis(single(oam_window("oam", -2, 2)),
                                                           {"0"}))
                          .amplitudes());
  auto hwp = lift(half_wave_plate(0.0), space);
  Ket out = apply(qp, apply(hwp, apply(qp, in)));
  CVector expected = CVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  expected(space.basis_index({"R", "+2"})) = kInvSqrt2;
  expected(space.basis_index({"L", "-2"})) = kInvSqrt2;
  EXPECT_TRUE(equal_up_to_phase(out, Ket(space, expected), 1e-12));
  CVector direct = qp.matrix() * hwp.matrix() * qp.matrix() * in.amplitudes();
  EXPECT_LT((direct - out.amplitudes()).norm(), 1e-12);
  EXPECT_FALSE(equal_up_to_phase(out, in, 1e-6));
}

TEST(ModeConverter, ActsAsOamSwap) {
  auto mc = mode_converter_pi2();
  auto space = mc.space();
  EXPECT_TRUE(equal_up_to_phase(apply(mc, Ket::basis(space, {"+1"})), Ket::basis(space, {"-1"}),
                                1e-12));
  EXPECT_LT(phase_insensitive_distance(mc.after(mc).matrix(), CMatrix::Identity(2, 2)), 1e-12);
  auto swap = swap_operator({"oam", {"+1", "-1"}}, space);
  EXPECT_LT(phase_insensitive_distance(mc.matrix(), swap.matrix()), 1e-12);
  EXPECT_ERROR_CODE(mode_converter_pi2(oam_window("oam", -1, 1)), ErrorCode::UnsupportedSubspace);
}

TEST(Envariance, SwapPairRestoresBellForm) {
  Ket psi = bell_sam_oam();
  auto us = lift(half_wave_plate(0.0), psi.space());
  auto ue = lift(mode_converter_pi2(), psi.space());
  EXPECT_TRUE(equal_up_to_phase(apply(ue, apply(us, psi)), psi, 1e-12));
  EXPECT_FALSE(equal_up_to_phase(apply(us, psi), psi, 1e-6));
}

TEST(PhaseGate, Diagonal) {
  auto g = phase_gate(oam_subsystem(), "-1", kPi);
  EXPECT_NEAR(std::abs(g.matrix()(1, 1) + 1.0), 0.0, 1e-15);
  EXPECT_EQ(g.matrix()(0, 0), Complex(1.0, 0.0));
}

// ---- experiment pipeline ----

TEST(Pipeline, SpdcState) {
  Ket spdc = spdc_state();
  EXPECT_NEAR(spdc.norm(), 1.0, 1e-12);
  auto d = schmidt_decompose(spdc, BipartiteSplit::of(spdc.space(), {ids::kOamSignal}));
  EXPECT_NEAR(d.coefficients[0], kInvSqrt2, 1e-12);
  EXPECT_NEAR(d.coefficients[1], kInvSqrt2, 1e-12);
  auto reduced = partial_trace(density_of(spdc), {ids::kOamSignal});
  auto window = single(oam_window(ids::kOamSignal, -2, 2));
  CMatrix expected = CMatrix::Zero(5, 5);
  expected(window.basis_index({"+1"}), window.basis_index({"+1"})) = 0.5;
  expected(window.basis_index({"-1"}), window.basis_index({"-1"})) = 0.5;
  EXPECT_LT(max_abs(reduced.matrix() - expected), 1e-12);
}

TEST(Pipeline, PostSelectProductState) {
  Ket a = Ket::basis(single(sam_subsystem()), {"L"});
  Ket b = Ket::basis(single(oam_subsystem()), {"+1"});
  auto result = post_select(tensor(a, b), "oam", "+1");
  EXPECT_NEAR(result.success_probability, 1.0, 1e-12);
  EXPECT_TRUE(equal_up_to_phase(result.ket, a, 1e-12));
  EXPECT_ERROR_CODE(post_select(tensor(a, b), "oam", "-1"), ErrorCode::EmptyPostSelection);
  EXPECT_ERROR_CODE(post_select(tensor(a, b), "oam", "+7"), ErrorCode::UnknownBasisLabel);
}

TEST(Pipeline, NonlocalPostSelectionProbabilityIsHalf) {
  EXPECT_NEAR(nonlocal_post_selection_probability(), 0.5, 1e-12);
}

TEST(Pipeline, PreparedStatesAreBellForm) {
  for (auto kind : {ExperimentKind::Local, ExperimentKind::Nonlocal}) {
    Ket psi = prepare(kind);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    ASSERT_EQ(psi.space().dimension(), 4u);
    CVector expected = CVector::Zero(4);
    expected(0) = kInvSqrt2;  // |R,+1>
    expected(3) = kInvSqrt2;  // |L,-1>
    EXPECT_TRUE(equal_up_to_phase(psi, Ket(psi.space(), expected), 1e-12)) << to_string(kind);
    for (const auto& id : psi.space().ids()) {
      EXPECT_NEAR(purity(partial_trace(density_of(psi), {id})), 0.5, 1e-12);
    }
    EXPECT_EQ(prepare(kind).amplitudes(), psi.amplitudes());
  }
  EXPECT_EQ(prepare(ExperimentKind::Nonlocal).space().ids(),
            (std::vector<std::string>{ids::kSamSignal, ids::kOamIdler}));
}

TEST(Pipeline, RolesFollowTheExperiment) {
  EXPECT_EQ(roles(ExperimentKind::Nonlocal).system, ids::kOamIdler);
  EXPECT_EQ(roles(ExperimentKind::Nonlocal).environment, ids::kSamSignal);
  EXPECT_EQ(roles(ExperimentKind::Local).system, ids::kSam);
  EXPECT_EQ(roles(ExperimentKind::Local).environment, ids::kOam);
}

TEST(Pipeline, SwapConfigurations) {
  for (auto kind : {ExperimentKind::Local, ExperimentKind::Nonlocal}) {
    Ket psi = prepare(kind);
    EXPECT_EQ(apply_swap_config(psi, kind, SwapConfig::original()).amplitudes(),
              psi.amplitudes());
    EXPECT_TRUE(equal_up_to_phase(apply_swap_config(psi, kind, SwapConfig::twice_swapped()), psi,
                                  1e-12));
    for (auto config : kAllSwapConfigs) {
      auto reduced = partial_trace(density_of(apply_swap_config(psi, kind, config)),
                                   {roles(kind).system});
      EXPECT_LT(max_abs(reduced.matrix() - 0.5 * CMatrix::Identity(2, 2)), 1e-12);
    }
  }
  Ket local = prepare(ExperimentKind::Local);
  CVector expected = CVector::Zero(4);
  expected(local.space().basis_index({"L", "+1"})) = kInvSqrt2;
  expected(local.space().basis_index({"R", "-1"})) = kInvSqrt2;
  Ket swapped = apply_swap_config(local, ExperimentKind::Local, SwapConfig::system_swapped());
  EXPECT_TRUE(equal_up_to_phase(swapped, Ket(local.space(), expected), 1e-12));
  CVector direct = lift(half_wave_plate(0.0), local.space()).matrix() * local.amplitudes();
  EXPECT_LT((direct - swapped.amplitudes()).norm(), 1e-12);
}

TEST(Pipeline, CorruptedEnvironmentSwapBreaksEnvariance) {
  SwapOptions options;
  options.corrupt_environment_swap = true;
  for (auto kind : {ExperimentKind::Local, ExperimentKind::Nonlocal}) {
    Ket psi = prepare(kind);
    Ket out = apply_swap_config(psi, kind, SwapConfig::twice_swapped(), options);
    EXPECT_FALSE(equal_up_to_phase(out, psi, 1e-3)) << to_string(kind);
  }
}

TEST(Pipeline, PlateErrorsStayUnitaryAndPerturbSlightly) {
  SwapOptions options;
  options.system_plate_error = 0.01;
  options.environment_plate_error = -0.02;
  for (auto kind : {ExperimentKind::Local, ExperimentKind::Nonlocal}) {
    Ket psi = prepare(kind);
    Ket out = apply_swap_config(psi, kind, SwapConfig::twice_swapped(), options);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
    double overlap = std::abs(out.inner(psi));
    EXPECT_LT(overlap, 1.0 - 1e-6);
    EXPECT_GT(overlap, 0.99);
  }
}

TEST(Pipeline, ParseNames) {
  EXPECT_EQ(parse_experiment("local"), ExperimentKind::Local);
  EXPECT_EQ(parse_experiment("nonlocal"), ExperimentKind::Nonlocal);
  EXPECT_ERROR_CODE(parse_experiment("global"), ErrorCode::ParseError);
  for (auto c : kAllSwapConfigs) EXPECT_EQ(parse_swap_config(to_string(c)), c);
}
