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

#include "qmask/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace qmask {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;
// Surrogate values below this are treated as an exact zero.
constexpr double kZeroObjective = 1e-22;
// Stop (unconverged) once this many consecutive steps each gain less than
// kStallRelative of the objective; finite-difference noise keeps the gradient
// norm above tight grad_tol values on a positive floor.
constexpr int kStallSteps = 50;
constexpr double kStallRelative = 1e-13;

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("OptimizerConfig: max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("OptimizerConfig: grad_tol must be > 0");
  if (!(step_init > 0.0)) throw std::invalid_argument("OptimizerConfig: step_init must be > 0");
}

std::size_t isometry_param_count(std::size_t dA, std::size_t dB) {
  return dA * dB * dA * dB;
}

Mat isometry_from_params(std::span<const double> params, std::size_t dA, std::size_t dB) {
  const std::size_t n = dA * dB;
  if (params.size() != n * n) {
    throw std::invalid_argument("parameterize_isometry: expected " + std::to_string(n * n) +
                                " parameters, got " + std::to_string(params.size()));
  }
  const auto ni = static_cast<Eigen::Index>(n);
  // Diagonal entries i*p; each pair j<k uses two coefficients for G(j,k) and
  // G(k,j) = -conj(G(j,k)).
  Mat gen = Mat::Zero(ni, ni);
  std::size_t p = 0;
  for (Eigen::Index j = 0; j < ni; ++j) gen(j, j) = cplx(0.0, params[p++]);
  for (Eigen::Index j = 0; j < ni; ++j) {
    for (Eigen::Index k = j + 1; k < ni; ++k) {
      const cplx z(params[p], params[p + 1]);
      p += 2;
      gen(j, k) = z;
      gen(k, j) = -std::conj(z);
    }
  }
  const Mat u = gen.exp();
  Mat iso(ni, static_cast<Eigen::Index>(dA));
  for (std::size_t k = 0; k < dA; ++k) {
    iso.col(static_cast<Eigen::Index>(k)) = u.col(static_cast<Eigen::Index>(k * dB));
  }
  return iso;
}

Masker parameterize_isometry(std::span<const double> params, std::size_t dA, std::size_t dB) {
  return Masker(isometry_from_params(params, dA, dB), dA, dB);
}

double masking_surrogate(const Mat& iso, std::size_t dA, std::size_t dB,
                         const std::vector<PureState>& states, MaskMode mode) {
  const auto a = static_cast<Eigen::Index>(dA);
  const auto b = static_cast<Eigen::Index>(dB);
  // For an image vector v, t = Map(v, dB, dA) is the transpose of the
  // dA x dB coefficient matrix m, so rho_A = t^T conj(t) and rho_B = t t^dag.
  auto marginals = [&](const Vec& v, Mat& rho_a, Mat& rho_b) {
    const Eigen::Map<const Mat> t(v.data(), b, a);
    rho_a.noalias() = t.transpose() * t.conjugate();
    rho_b.noalias() = t * t.adjoint();
  };

  double total = 0.0;
  Mat ref_a(a, a), ref_b(b, b), rho_a(a, a), rho_b(b, b);
  marginals(iso * states.front().amps(), ref_a, ref_b);
  for (std::size_t i = 1; i < states.size(); ++i) {
    marginals(iso * states[i].amps(), rho_a, rho_b);
    total += (rho_a - ref_a).squaredNorm() + (rho_b - ref_b).squaredNorm();
  }
  if (mode == MaskMode::span) {
    const auto support = support_indices(states);
    for (std::size_t x = 0; x < support.size(); ++x) {
      const Eigen::Map<const Mat> tk(iso.col(static_cast<Eigen::Index>(support[x])).data(), b, a);
      for (std::size_t y = x + 1; y < support.size(); ++y) {
        const Eigen::Map<const Mat> tl(iso.col(static_cast<Eigen::Index>(support[y])).data(), b,
                                       a);
        total += (tk.transpose() * tl.conjugate()).squaredNorm();
        total += (tk * tl.adjoint()).squaredNorm();
      }
    }
  }
  return total;
}

namespace {

struct RestartOutcome {
  std::vector<double> params;
  std::vector<double> trace;
  std::size_t iterations = 0;
  bool converged = false;
};

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

RestartOutcome descend(const kernels::Objective& f, std::vector<double> x,
                       const OptimizerConfig& cfg, kernels::Exec exec) {
  const auto gradient = [&](std::span<const double> at) {
    return exec == kernels::Exec::serial ? kernels::central_gradient_serial(f, at, kFdStep)
                                         : kernels::central_gradient_parallel(f, at, kFdStep);
  };
  RestartOutcome out;
  double fx = f(x);
  std::vector<double> g = gradient(x);
  double step = cfg.step_init;
  out.trace.push_back(fx);

  std::vector<double> trial(x.size());
  int stalled = 0;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    const double gnorm2 = dot(g, g);
    if (std::sqrt(gnorm2) < cfg.grad_tol || fx < kZeroObjective) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    double f_trial = fx;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step * g[i];
      f_trial = f(trial);
      if (f_trial <= fx - kArmijo * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> g_new = gradient(trial);
    // Barzilai-Borwein trial step for the next iteration.
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = trial[i] - x[i];
      ss += s * s;
      sy += s * (g_new[i] - g[i]);
    }
    step = sy > 0.0 ? ss / sy : 2.0 * step;

    stalled = fx - f_trial < kStallRelative * fx ? stalled + 1 : 0;
    x.swap(trial);
    g.swap(g_new);
    fx = f_trial;
    out.trace.push_back(fx);
    ++out.iterations;
    if (stalled >= kStallSteps) break;
  }
  if (!out.converged) {
    out.converged = std::sqrt(dot(g, g)) < cfg.grad_tol || fx < kZeroObjective;
  }
  out.params = std::move(x);
  return out;
}

}  // namespace

OptimizationResult optimize_masker(const std::vector<PureState>& states,
                                   const OptimizerConfig& cfg, kernels::Exec exec) {
  cfg.validate();
  if (states.empty()) throw std::invalid_argument("optimize_masker: empty state list");
  const std::size_t dA = states.front().dim();
  for (const auto& s : states) {
    if (s.dim() != dA) throw std::invalid_argument("optimize_masker: dimension mismatch");
  }
  const std::size_t dB = cfg.ancilla_dim(dA);
  const std::size_t nparams = isometry_param_count(dA, dB);

  const kernels::Objective objective = [&](std::span<const double> p) {
    return masking_surrogate(isometry_from_params(p, dA, dB), dA, dB, states, cfg.mode);
  };

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  kernels::for_each_index(
      cfg.restarts,
      [&](std::size_t r) {
        std::mt19937_64 rng(derive_seed(cfg.seed, r));
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> x0(nparams);
        for (auto& v : x0) v = normal(rng);
        outcomes[r] = descend(objective, std::move(x0), cfg, exec);
      },
      exec);

  std::vector<double> defects;
  std::optional<Masker> best;
  std::size_t best_restart = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    Masker m = parameterize_isometry(outcomes[r].params, dA, dB);
    defects.push_back(masking_defect(m, states, cfg.mode).defect);
    if (!best || defects[r] < defects[best_restart]) {
      best = std::move(m);
      best_restart = r;
    }
  }

  OptimizationResult result{.best_masker = std::move(*best)};
  result.best_defect = defects[best_restart];
  result.best_restart = best_restart;
  result.per_restart_defects = std::move(defects);
  for (auto& o : outcomes) {
    result.iterations_used.push_back(o.iterations);
    result.restart_converged.push_back(o.converged);
    result.objective_traces.push_back(std::move(o.trace));
  }
  result.converged = result.restart_converged[best_restart];
  return result;
}

NoMaskingWitness witness_no_masking(const std::vector<PureState>& states,
                                    const OptimizerConfig& cfg) {
  auto evidence = optimize_masker(states, cfg);
  const double floor = evidence.best_defect;
  return {floor, std::move(evidence)};
}

ProbeReport probe_maskable_family(const Masker& v, std::size_t samples, std::uint64_t seed,
                                  double tol, double entropy_floor, kernels::Exec exec) {
  const std::size_t dA = v.dA();
  const PureState center = great_disk_state(std::vector<double>(dA, 0.0));
  const PureState center_image = apply_masker(v, center);
  ProbeReport report{
      .samples = samples,
      .seed = seed,
      .tol = tol,
      .entropy_floor = entropy_floor,
      .reference_marginal_a = partial_trace(center_image, {0}),
      .reference_marginal_b = partial_trace(center_image, {1}),
  };

  std::vector<std::optional<ProbeSample>> kept(samples);
  std::vector<double> deviation(samples, 0.0);
  kernels::for_each_index(
      samples,
      [&](std::size_t i) {
        const PureState psi = random_pure_state(dA, derive_seed(seed, i));
        const PureState img = apply_masker(v, psi);
        const double da = trace_distance(partial_trace(img, {0}), report.reference_marginal_a);
        const double db = trace_distance(partial_trace(img, {1}), report.reference_marginal_b);
        deviation[i] = std::max(da, db);
        if (deviation[i] >= tol) return;
        const double h = entanglement_entropy(img, {0});
        if (h <= entropy_floor) return;
        ProbeSample s{i, da, db, h, {}};
        for (Eigen::Index k = 0; k < psi.amps().size(); ++k) {
          s.profile.push_back(std::abs(psi.amps()(k)));
        }
        kept[i] = std::move(s);
      },
      exec);

  for (auto& s : kept) {
    if (s) report.masked.push_back(std::move(*s));
  }
  report.min_deviation =
      samples == 0 ? 0.0 : *std::min_element(deviation.begin(), deviation.end());
  return report;
}

}  // namespace qmask
