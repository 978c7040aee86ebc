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

#include "envlab/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "envlab/error.hpp"

namespace envlab {

double unitarity_error(const CMatrix& u) {
  CMatrix gram = u.adjoint() * u;
  return (gram - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

double phase_insensitive_distance(const CMatrix& a, const CMatrix& b) {
  Complex overlap = (b.adjoint() * a).trace();
  Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : 1.0;
  return (a - phase * b).norm();
}

UnitaryOp::UnitaryOp(SpaceDescriptor space, CMatrix matrix, std::string label,
                     std::vector<std::size_t> guarded_inputs, double tol)
    : space_(std::move(space)),
      matrix_(std::move(matrix)),
      label_(std::move(label)),
      guarded_(std::move(guarded_inputs)) {
  auto d = static_cast<Eigen::Index>(space_.dimension());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    fail(ErrorCode::SpaceMismatch, "operator shape does not match its space");
  }
  double err = unitarity_error(matrix_);
  if (err > tol) {
    fail(ErrorCode::NotUnitary,
         label_ + ": U^dag U deviates by " + std::to_string(err));
  }
  std::sort(guarded_.begin(), guarded_.end());
}

UnitaryOp UnitaryOp::identity(SpaceDescriptor space) {
  auto d = static_cast<Eigen::Index>(space.dimension());
  return UnitaryOp(std::move(space), CMatrix::Identity(d, d), "I");
}

UnitaryOp UnitaryOp::adjoint() const {
  // The guarded columns are a permutation block of the completed matrix, so
  // the adjoint guards their images.
  std::vector<std::size_t> guarded;
  for (auto g : guarded_) {
    Eigen::Index row = 0;
    matrix_.col(static_cast<Eigen::Index>(g)).cwiseAbs().maxCoeff(&row);
    guarded.push_back(static_cast<std::size_t>(row));
  }
  return UnitaryOp(space_, matrix_.adjoint(), label_ + "^dag", guarded);
}

UnitaryOp UnitaryOp::after(const UnitaryOp& other) const {
  if (!(space_ == other.space_)) {
    fail(ErrorCode::SpaceMismatch, "composing operators on different spaces");
  }
  // Only the first-acting operator's guards are exact; later guards would
  // need the intermediate state and are checked when applied in sequence.
  return UnitaryOp(space_, matrix_ * other.matrix_, label_ + "*" + other.label_,
                   other.guarded_);
}

UnitaryOp lift(const UnitaryOp& u, const SpaceDescriptor& full) {
  const auto& sub = u.space();
  std::vector<std::size_t> pos;
  for (const auto& s : sub.subsystems()) {
    if (!full.contains(s.id)) {
      fail(ErrorCode::SpaceMismatch,
           "subsystem '" + s.id + "' of " + u.label() + " is absent");
    }
    pos.push_back(full.position(s.id));
    if (!(full.subsystems()[pos.back()] == s)) {
      fail(ErrorCode::SpaceMismatch, "subsystem '" + s.id + "' basis differs");
    }
  }
  if (sub.size() == full.size() && sub == full) return u;

  auto d = static_cast<Eigen::Index>(full.dimension());
  CMatrix m = CMatrix::Zero(d, d);
  std::vector<std::size_t> local(sub.size());
  std::vector<std::size_t> guarded;
  const auto& um = u.matrix();
  for (Eigen::Index j = 0; j < d; ++j) {
    auto col_digits = full.digits(static_cast<std::size_t>(j));
    for (std::size_t k = 0; k < pos.size(); ++k) local[k] = col_digits[pos[k]];
    auto lj = static_cast<Eigen::Index>(sub.index(local));
    if (std::binary_search(u.guarded_inputs().begin(), u.guarded_inputs().end(),
                           static_cast<std::size_t>(lj))) {
      guarded.push_back(static_cast<std::size_t>(j));
    }
    auto row_digits = col_digits;
    for (Eigen::Index li = 0; li < um.rows(); ++li) {
      Complex v = um(li, lj);
      if (v == Complex(0.0)) continue;
      auto ld = sub.digits(static_cast<std::size_t>(li));
      for (std::size_t k = 0; k < pos.size(); ++k) row_digits[pos[k]] = ld[k];
      m(static_cast<Eigen::Index>(full.index(row_digits)), j) = v;
    }
  }
  return UnitaryOp(full, std::move(m), u.label(), std::move(guarded));
}

Ket apply(const UnitaryOp& u, const Ket& psi) {
  UnitaryOp full = lift(u, psi.space());
  for (auto g : full.guarded_inputs()) {
    if (std::abs(psi.amplitudes()(static_cast<Eigen::Index>(g))) > 1e-12) {
      fail(ErrorCode::OamOverflow,
           u.label() + " would shift population of |" +
               psi.space().basis_name(g) + "> outside the modeled window");
    }
  }
  return Ket(psi.space(), full.matrix() * psi.amplitudes());
}

UnitaryOp swap_operator(const SwapSpec& spec, const SpaceDescriptor& space) {
  const Subsystem& s = space.subsystem(spec.subsystem);
  auto a = s.index_of(spec.label_pair.first);
  auto b = s.index_of(spec.label_pair.second);
  if (a == b) fail(ErrorCode::InvalidArgument, "swap labels must differ");
  auto d = static_cast<Eigen::Index>(s.dim());
  CMatrix m = CMatrix::Identity(d, d);
  auto ia = static_cast<Eigen::Index>(a);
  auto ib = static_cast<Eigen::Index>(b);
  m(ia, ia) = m(ib, ib) = 0.0;
  m(ia, ib) = m(ib, ia) = 1.0;
  UnitaryOp local(SpaceDescriptor({s}), std::move(m),
                  "swap[" + s.id + ":" + spec.label_pair.first + "<->" +
                      spec.label_pair.second + "]");
  return lift(local, space);
}

UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b) {
  std::vector<std::size_t> guarded;
  auto db = b.space().dimension();
  for (auto ga : a.guarded_inputs()) {
    for (std::size_t j = 0; j < db; ++j) guarded.push_back(ga * db + j);
  }
  for (std::size_t i = 0; i < a.space().dimension(); ++i) {
    for (auto gb : b.guarded_inputs()) guarded.push_back(i * db + gb);
  }
  std::sort(guarded.begin(), guarded.end());
  guarded.erase(std::unique(guarded.begin(), guarded.end()), guarded.end());
  return UnitaryOp(a.space().concat(b.space()), kron(a.matrix(), b.matrix()),
                   a.label() + "(x)" + b.label(), std::move(guarded));
}

namespace {

void require_circular(const Subsystem& sam) {
  if (sam.labels != std::vector<std::string>{"R", "L"}) {
    fail(ErrorCode::UnsupportedSubspace,
         "wave plates act on a {R, L} polarization subsystem");
  }
}

}  // namespace

UnitaryOp retarder(double retardance, double angle, const Subsystem& sam) {
  require_circular(sam);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  // Linear-basis Jones matrix R(-angle) diag(e^{-i G/2}, e^{i G/2}) R(angle).
  Eigen::Matrix2cd rot;
  rot << c, s, -s, c;
  Eigen::Matrix2cd phase = Eigen::Matrix2cd::Zero();
  phase(0, 0) = std::polar(1.0, -retardance / 2.0);
  phase(1, 1) = std::polar(1.0, retardance / 2.0);
  Eigen::Matrix2cd linear = rot.transpose() * phase * rot;
  // Columns are |R>, |L> in the (H, V) basis: R = (H - iV)/sqrt2,
  // L = (H + iV)/sqrt2.
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd to_linear;
  to_linear << 1.0, 1.0, -i, i;
  to_linear /= std::sqrt(2.0);
  CMatrix circular = to_linear.adjoint() * linear * to_linear;
  return UnitaryOp(SpaceDescriptor({sam}), circular,
                   "retarder(" + std::to_string(retardance) + "," +
                       std::to_string(angle) + ")");
}

UnitaryOp half_wave_plate(double angle, const Subsystem& sam) {
  UnitaryOp r = retarder(std::numbers::pi, angle, sam);
  return UnitaryOp(r.space(), r.matrix(), "HWP(" + std::to_string(angle) + ")");
}

UnitaryOp quarter_wave_plate(double angle, const Subsystem& sam) {
  UnitaryOp r = retarder(std::numbers::pi / 2.0, angle, sam);
  return UnitaryOp(r.space(), r.matrix(), "QWP(" + std::to_string(angle) + ")");
}

UnitaryOp q_plate(double q, const Subsystem& sam, const Subsystem& oam) {
  require_circular(sam);
  double twice = 2.0 * q;
  if (std::abs(twice - std::round(twice)) > 1e-12 || std::round(twice) == 0.0) {
    fail(ErrorCode::InvalidArgument, "q must be a nonzero half-integer");
  }
  const int shift = static_cast<int>(std::lround(twice));
  std::vector<int> charges;
  for (const auto& l : oam.labels) charges.push_back(parse_oam_label(l));
  auto find_charge = [&](int c) -> std::ptrdiff_t {
    auto it = std::find(charges.begin(), charges.end(), c);
    return it == charges.end() ? -1 : it - charges.begin();
  };

  SpaceDescriptor space({sam, oam});
  auto d = static_cast<Eigen::Index>(space.dimension());
  CMatrix m = CMatrix::Zero(d, d);
  std::vector<std::size_t> guarded;
  std::vector<Eigen::Index> free_rows;
  std::vector<bool> row_used(static_cast<std::size_t>(d), false);
  const auto n_oam = static_cast<std::ptrdiff_t>(oam.dim());
  // sam index 0 = R, 1 = L.
  for (std::ptrdiff_t p = 0; p < 2; ++p) {
    for (std::ptrdiff_t l = 0; l < n_oam; ++l) {
      int target = charges[static_cast<std::size_t>(l)] + (p == 0 ? -shift : shift);
      auto t = find_charge(target);
      if (t < 0) continue;
      Eigen::Index col = p * n_oam + l;
      Eigen::Index row = (1 - p) * n_oam + t;
      m(row, col) = 1.0;
      row_used[static_cast<std::size_t>(row)] = true;
    }
  }
  for (Eigen::Index r = 0; r < d; ++r) {
    if (!row_used[static_cast<std::size_t>(r)]) free_rows.push_back(r);
  }
  // Complete the unused columns onto the unused rows in order, reversed so
  // the tuned q = 1/2 case pairs |R,lo> with |L,hi> (an involution).
  std::size_t next = free_rows.size();
  for (Eigen::Index c = 0; c < d; ++c) {
    if (m.col(c).cwiseAbs().sum() > 0.0) continue;
    guarded.push_back(static_cast<std::size_t>(c));
    m(free_rows[--next], c) = 1.0;
  }
  return UnitaryOp(std::move(space), std::move(m),
                   "q-plate(q=" + std::to_string(q) + ")", std::move(guarded));
}

UnitaryOp mode_converter_pi2(const Subsystem& oam) {
  if (oam.labels != std::vector<std::string>{"+1", "-1"}) {
    fail(ErrorCode::UnsupportedSubspace,
         "the pi/2 mode converter is modeled on OAM {+1, -1} only");
  }
  const Complex i(0.0, 1.0);
  CMatrix m(2, 2);
  m << 0.0, -i, -i, 0.0;
  return UnitaryOp(SpaceDescriptor({oam}), std::move(m), "mode-converter(pi/2)");
}

UnitaryOp phase_gate(const Subsystem& subsystem, const std::string& label,
                     double phase) {
  auto d = static_cast<Eigen::Index>(subsystem.dim());
  CMatrix m = CMatrix::Identity(d, d);
  auto k = static_cast<Eigen::Index>(subsystem.index_of(label));
  m(k, k) = std::polar(1.0, phase);
  return UnitaryOp(SpaceDescriptor({subsystem}), std::move(m),
                   "phase[" + subsystem.id + ":" + label + "](" +
                       std::to_string(phase) + ")");
}

}  // namespace envlab
