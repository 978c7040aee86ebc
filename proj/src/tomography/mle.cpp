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
#include <limits>
#include <optional>

#include "envlab/born.hpp"
#include "envlab/tomography.hpp"

namespace envlab {
namespace {

struct Data {
  std::vector<double> freq;
  std::vector<CMatrix> proj;
  double scale = 1.0;  // K with sum_i pi_i = K I on a complete set
};

Data gather(const CountTable& counts, const ProjectorSet& set) {
  Data d;
  double total = 0.0;
  for (const auto& p : set.projectors) {
    double n = static_cast<double>(counts.count(p.id));
    d.freq.push_back(n);
    total += n;
    d.proj.push_back(p.ket.amplitudes() * p.ket.amplitudes().adjoint());
  }
  if (total <= 0.0) fail(ErrorCode::EmptyCounts, "count table has no events");
  for (auto& f : d.freq) f /= total;
  CMatrix sum = CMatrix::Zero(d.proj[0].rows(), d.proj[0].cols());
  for (const auto& pi : d.proj) sum += pi;
  d.scale = sum.trace().real() / static_cast<double>(sum.rows());
  return d;
}

std::vector<double> normalized_probabilities(const DensityMatrix& rho,
                                             const ProjectorSet& set) {
  auto table = born_probabilities(rho, set);
  double s = table.sum();
  std::vector<double> p;
  for (const auto& e : table.entries) p.push_back(s > 0.0 ? e.value / s : 0.0);
  return p;
}

double likelihood(const std::vector<double>& f, const std::vector<double>& p) {
  double l = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] <= 0.0) continue;
    if (p[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    l += f[i] * std::log(p[i]);
  }
  return l;
}

DensityMatrix seed_state(const CountTable& counts, const ProjectorSet& set,
                         const ReconstructionOptions& options, const Data& d) {
  if (options.initial_state == InitialState::MaximallyMixed) {
    return DensityMatrix::maximally_mixed(set.space);
  }
  // A setting with no events leaves linear inversion undefined; the
  // likelihood is still well posed, so start from I/d instead.
  bool empty_setting = false;
  std::optional<DensityMatrix> inverted;
  try {
    inverted = linear_inversion(counts, set, /*clip=*/true);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyCounts) throw;
    empty_setting = true;
  }
  if (empty_setting) return DensityMatrix::maximally_mixed(set.space);
  DensityMatrix rho = *inverted;
  auto p = normalized_probabilities(rho, set);
  if (std::isfinite(likelihood(d.freq, p))) return rho;
  // Clipping removed support the data needs; mix in a little of I/d.
  constexpr double kMix = 1e-3;
  auto dim = static_cast<Eigen::Index>(set.space.dimension());
  CMatrix m = (1.0 - kMix) * rho.matrix() +
              kMix * CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix(set.space, m);
}

}  // namespace

double log_likelihood(const DensityMatrix& rho, const CountTable& counts,
                      const ProjectorSet& set) {
  Data d = gather(counts, set);
  return likelihood(d.freq, normalized_probabilities(rho, set));
}

MleResult mle_reconstruct(const CountTable& counts, const ProjectorSet& set,
                          const ReconstructionOptions& options) {
  options.validate();
  if (set.size() == 0) fail(ErrorCode::MissingConfiguration, "empty projector set");
  Data d = gather(counts, set);
  auto dim = static_cast<Eigen::Index>(set.space.dimension());
  const CMatrix identity = CMatrix::Identity(dim, dim);

  DensityMatrix rho = seed_state(counts, set, options, d);
  auto p = normalized_probabilities(rho, set);
  double current = likelihood(d.freq, p);
  MleResult result{rho, 0, {current}, false};

  for (int it = 1; it <= options.max_iterations; ++it) {
    CMatrix r = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < d.freq.size(); ++i) {
      if (d.freq[i] > 0.0) r += (d.freq[i] / p[i]) * d.proj[i];
    }
    r /= d.scale;

    double t = 1.0;
    bool accepted = false;
    DensityMatrix next = rho;
    std::vector<double> next_p;
    double next_l = current;
    while (t > 1e-12) {
      CMatrix rt = (1.0 - t) * identity + t * r;
      CMatrix m = rt * rho.matrix() * rt.adjoint();
      m = 0.5 * (m + m.adjoint()).eval();
      m /= m.trace().real();
      next = DensityMatrix(set.space, m);
      next_p = normalized_probabilities(next, set);
      next_l = likelihood(d.freq, next_p);
      if (next_l >= current) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    result.iterations = it;
    if (!accepted) {
      // No ascent direction left at machine precision.
      result.converged = true;
      return result;
    }
    double gain = next_l - current;
    rho = next;
    p = std::move(next_p);
    current = next_l;
    result.state = rho;
    result.log_likelihood.push_back(current);
    if (gain < options.convergence_tol) {
      result.converged = true;
      return result;
    }
  }
  throw ConvergenceFailure("no convergence within " +
                               std::to_string(options.max_iterations) + " iterations",
                           result);
}

DensityMatrix reconstruct(const CountTable& counts, const ProjectorSet& set,
                          const ReconstructionOptions& options) {
  if (options.method == ReconstructionMethod::LinearInversion) {
    return linear_inversion(counts, set, options.clip);
  }
  return mle_reconstruct(counts, set, options).state;
}

DensityMatrix reduced_tomography(const CountTable& counts6,
                                 const ReconstructionOptions& options) {
  if (counts6.provenance.mode != ProjectorMode::ReducedSingle6) {
    fail(ErrorCode::MissingConfiguration, "reduced tomography needs a ReducedSingle6 record");
  }
  return reconstruct(counts6, record_projectors(counts6), options);
}

}  // namespace envlab
