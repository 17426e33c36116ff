// Copyright 2026 The qmask Authors
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

// Numerical search for maskers over the isometry manifold.
//
// An isometry H_A -> H_A (x) H_B is parameterized by the (dA*dB)^2 real
// coefficients of an anti-Hermitian generator G: U = exp(G), and the masker
// keeps the dA columns of U with the ancilla in |0>. Every parameter vector
// is therefore exactly (to rounding) on the manifold, and plain gradient
// descent in parameter space suffices.
//
// The descent minimizes a smooth surrogate, the sum of squared Frobenius
// norms of all marginal deviations and cross marginals. Reported defects are
// always re-evaluated with masking_defect.

#ifndef QMASK_WITNESS_HPP
#define QMASK_WITNESS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qmask/kernels.hpp"
#include "qmask/masklib.hpp"
#include "qmask/qcore.hpp"

namespace qmask {

struct OptimizerConfig {
  std::size_t dB = 0;  // 0 selects dA
  std::size_t restarts = 8;
  std::size_t max_iters = 3000;
  double step_init = 0.1;
  double grad_tol = 1e-12;
  std::uint64_t seed = 0;
  MaskMode mode = MaskMode::span;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  std::size_t ancilla_dim(std::size_t dA) const { return dB == 0 ? dA : dB; }
};

struct OptimizationResult {
  Masker best_masker;
  double best_defect = 0.0;
  std::size_t best_restart = 0;
  std::vector<double> per_restart_defects;
  std::vector<std::size_t> iterations_used;
  std::vector<bool> restart_converged;
  /// Surrogate value after every accepted step, one trace per restart.
  std::vector<std::vector<double>> objective_traces;
  bool converged = false;  // the best restart reached grad_tol
};

/// Number of real generator coefficients for the given dimensions.
std::size_t isometry_param_count(std::size_t dA, std::size_t dB);

/// Isometry matrix ((dA*dB) x dA) for a generator parameter vector.
Mat isometry_from_params(std::span<const double> params, std::size_t dA, std::size_t dB);
Masker parameterize_isometry(std::span<const double> params, std::size_t dA, std::size_t dB);

/// Smooth objective minimized by optimize_masker; zero iff masking_defect is.
double masking_surrogate(const Mat& iso, std::size_t dA, std::size_t dB,
                         const std::vector<PureState>& states, MaskMode mode);

/// Multi-start finite-difference gradient descent with backtracking.
///
/// Restart r starts from N(0, 1) generator coefficients drawn with
/// derive_seed(cfg.seed, r). Results do not depend on `exec`.
OptimizationResult optimize_masker(const std::vector<PureState>& states,
                                   const OptimizerConfig& cfg,
                                   kernels::Exec exec = kernels::Exec::parallel);

struct NoMaskingWitness {
  double floor_estimate;
  OptimizationResult evidence;
};

/// floor_estimate is the best defect over all restarts. A value far above the
/// masking tolerance witnesses that no isometry masks the set.
NoMaskingWitness witness_no_masking(const std::vector<PureState>& states,
                                    const OptimizerConfig& cfg);

struct ProbeSample {
  std::size_t index;
  double dev_a;
  double dev_b;
  double entropy;
  std::vector<double> profile;  // |<k|psi>|
};

struct ProbeReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double entropy_floor = 0.0;
  DensityMatrix reference_marginal_a;
  DensityMatrix reference_marginal_b;
  std::vector<ProbeSample> masked;
  double min_deviation = 0.0;  // over all samples; 0 when samples == 0
};

inline constexpr double kDefaultProbeTol = 1e-4;

/// Draws `samples` Haar-random inputs and keeps those whose image marginals
/// match the reference within tol (trace distance, both sides) and whose
/// image entanglement exceeds entropy_floor. The reference is the image of
/// the uniform superposition of the computational basis. Sample i uses
/// derive_seed(seed, i), so the report does not depend on `exec`.
ProbeReport probe_maskable_family(const Masker& v, std::size_t samples, std::uint64_t seed,
                                  double tol = kDefaultProbeTol,
                                  double entropy_floor = kDefaultEntropyFloor,
                                  kernels::Exec exec = kernels::Exec::parallel);

}  // namespace qmask

#endif  // QMASK_WITNESS_HPP
