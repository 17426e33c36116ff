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

#include "qmask/masklib.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qmask {

Masker::Masker(Mat iso, std::size_t dA, std::size_t dB, double tol)
    : iso_(std::move(iso)), dA_(dA), dB_(dB) {
  if (dA_ == 0 || dB_ == 0) throw std::invalid_argument("Masker: zero dimension");
  if (static_cast<std::size_t>(iso_.rows()) != dA_ * dB_ ||
      static_cast<std::size_t>(iso_.cols()) != dA_) {
    throw std::invalid_argument("Masker: iso must be (dA*dB) x dA");
  }
  const Mat gram = iso_.adjoint() * iso_;
  const double err = (gram - Mat::Identity(iso_.cols(), iso_.cols())).cwiseAbs().maxCoeff();
  if (!(err <= tol)) {
    throw std::invalid_argument("Masker: columns are not orthonormal (error " +
                                std::to_string(err) + ")");
  }
}

PureState Masker::image(std::size_t k) const {
  if (k >= dA_) throw std::invalid_argument("Masker::image: index out of range");
  return PureState(iso_.col(static_cast<Eigen::Index>(k)), output_dims());
}

Masker diagonal_masker(std::size_t d) {
  if (d < 2) throw std::invalid_argument("diagonal_masker: d must be at least 2");
  const auto n = static_cast<Eigen::Index>(d);
  Mat iso = Mat::Zero(n * n, n);
  for (Eigen::Index k = 0; k < n; ++k) iso(k * n + k, k) = 1.0;
  return Masker(std::move(iso), d, d);
}

Masker masker_from_images(const std::vector<PureState>& images) {
  if (images.empty()) throw std::invalid_argument("masker_from_images: no images");
  const DimProfile& dims = images.front().dims();
  if (dims.num_factors() != 2 || dims[0] != images.size()) {
    throw std::invalid_argument(
        "masker_from_images: images must live on {dA, dB} with dA equal to the image count");
  }
  Mat iso(static_cast<Eigen::Index>(dims.total()), static_cast<Eigen::Index>(images.size()));
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (!(images[k].dims() == dims)) {
      throw std::invalid_argument("masker_from_images: inconsistent image profiles");
    }
    iso.col(static_cast<Eigen::Index>(k)) = images[k].amps();
  }
  return Masker(std::move(iso), dims[0], dims[1]);
}

PureState apply_masker(const Masker& v, const PureState& psi) {
  if (psi.dim() != v.dA()) {
    throw std::invalid_argument("apply_masker: state dimension " + std::to_string(psi.dim()) +
                                " != dA " + std::to_string(v.dA()));
  }
  return PureState(v.iso() * psi.amps(), v.output_dims());
}

PureState hyperdisk_state(const std::vector<double>& r, const std::vector<double>& phi) {
  if (r.size() != phi.size() || r.empty()) {
    throw std::invalid_argument("hyperdisk_state: amplitude and phase lengths differ");
  }
  double norm2 = 0.0;
  for (double x : r) {
    if (x < 0.0) throw std::invalid_argument("hyperdisk_state: negative amplitude");
    norm2 += x * x;
  }
  if (std::abs(norm2 - 1.0) > kDefaultTol) {
    throw std::invalid_argument("hyperdisk_state: amplitudes are not normalized");
  }
  Vec v(static_cast<Eigen::Index>(r.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = std::polar(r[k], phi[k]);
  }
  return PureState(std::move(v));
}

PureState great_disk_state(const std::vector<double>& phi) {
  std::vector<double> r(phi.size(), 1.0 / std::sqrt(static_cast<double>(phi.size())));
  return hyperdisk_state(r, phi);
}

std::vector<std::size_t> support_indices(const std::vector<PureState>& states, double tol) {
  std::vector<std::size_t> out;
  if (states.empty()) return out;
  for (std::size_t k = 0; k < states.front().dim(); ++k) {
    for (const auto& s : states) {
      if (std::abs(s.amps()(static_cast<Eigen::Index>(k))) > tol) {
        out.push_back(k);
        break;
      }
    }
  }
  return out;
}

MaskingReport masking_defect(const Masker& v, const std::vector<PureState>& states,
                             MaskMode mode, double tol, double entropy_floor) {
  if (states.empty()) throw std::invalid_argument("masking_defect: empty state list");

  std::vector<PureState> images;
  images.reserve(states.size());
  for (const auto& s : states) images.push_back(apply_masker(v, s));

  MaskingReport report{
      .reference_marginal_a = partial_trace(images.front(), {0}),
      .reference_marginal_b = partial_trace(images.front(), {1}),
  };
  report.mode = mode;
  report.tol = tol;
  report.entropy_floor = entropy_floor;

  double defect = 0.0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const double da = trace_distance(partial_trace(images[i], {0}), report.reference_marginal_a);
    const double db = trace_distance(partial_trace(images[i], {1}), report.reference_marginal_b);
    report.per_state_deviation.push_back({i, da, db});
    report.entropies.push_back(entanglement_entropy(images[i], {0}));
    defect = std::max({defect, da, db});
  }

  if (mode == MaskMode::span) {
    const auto support = support_indices(states);
    for (std::size_t a = 0; a < support.size(); ++a) {
      const PureState ei = v.image(support[a]);
      for (std::size_t b = a + 1; b < support.size(); ++b) {
        const PureState ej = v.image(support[b]);
        const double na = operator_norm(cross_marginal(ei, ej, Side::B));
        const double nb = operator_norm(cross_marginal(ei, ej, Side::A));
        report.cross_norms.push_back({support[a], support[b], na, nb});
        defect = std::max({defect, na, nb});
      }
    }
  }

  report.defect = defect;
  const double min_entropy = *std::min_element(report.entropies.begin(), report.entropies.end());
  report.verdict = defect < tol && min_entropy > entropy_floor;
  return report;
}

MaskCheck is_masked(const Masker& v, const std::vector<PureState>& states, double tol,
                    double entropy_floor) {
  auto report = masking_defect(v, states, MaskMode::span, tol, entropy_floor);
  const bool masked = report.verdict;
  return {masked, std::move(report)};
}

namespace {

// First basis vector on the Bloch sphere; the second is its orthogonal
// complement. Both are phase-fixed afterwards, so no relative phase parameter.
Mat qubit_basis(double theta, double phi) {
  Mat b(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  b(0, 0) = c;
  b(1, 0) = std::polar(s, phi);
  b(0, 1) = -std::polar(s, -phi);
  b(1, 1) = c;
  return b;
}

void fix_phases(Mat& basis) {
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      const cplx z = basis(i, k);
      if (std::abs(z) > kDefaultTol) {
        basis.col(k) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
}

// <mu|mu_perp> for basis vector b is b^T K conj(b) with K = M0^dag M1.
cplx pair_overlap(const Mat& k, const Vec& b) {
  const Vec w = b.conjugate();
  return w.dot(k * w);
}

double basis_residual(const Mat& k, const Mat& basis) {
  return std::norm(pair_overlap(k, basis.col(0))) + std::norm(pair_overlap(k, basis.col(1)));
}

WalgateDecomposition assemble(const Mat& m0, const Mat& m1, const Mat& basis) {
  WalgateDecomposition w;
  w.basis_b = basis;
  w.mu = m0 * basis.col(0).conjugate();
  w.nu = m0 * basis.col(1).conjugate();
  w.mu_perp = m1 * basis.col(0).conjugate();
  w.nu_perp = m1 * basis.col(1).conjugate();
  w.residual = std::norm(w.mu.dot(w.mu_perp)) + std::norm(w.nu.dot(w.nu_perp));
  return w;
}

int zero_parts(const WalgateDecomposition& w) {
  int n = 0;
  for (const Vec* v : {&w.mu, &w.nu, &w.mu_perp, &w.nu_perp}) {
    if (v->norm() <= kDefaultTol) ++n;
  }
  return n;
}

// Damped Gauss-Newton on (Re g, Im g) with g = <mu|mu_perp>(theta, phi).
std::array<double, 2> polish(const Mat& k, std::array<double, 2> x) {
  auto residual = [&](const std::array<double, 2>& p) {
    const cplx g = pair_overlap(k, qubit_basis(p[0], p[1]).col(0));
    return Eigen::Vector2d(g.real(), g.imag());
  };
  constexpr double kStep = 1e-7;
  double lambda = 1e-3;
  Eigen::Vector2d r = residual(x);
  for (int it = 0; it < 200 && r.squaredNorm() > 1e-32; ++it) {
    Eigen::Matrix2d jac;
    for (int j = 0; j < 2; ++j) {
      auto up = x, down = x;
      up[j] += kStep;
      down[j] -= kStep;
      jac.col(j) = (residual(up) - residual(down)) / (2 * kStep);
    }
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      const Eigen::Matrix2d lhs =
          jac.transpose() * jac + lambda * Eigen::Matrix2d::Identity();
      const Eigen::Vector2d delta = lhs.ldlt().solve(-jac.transpose() * r);
      const std::array<double, 2> trial{x[0] + delta(0), x[1] + delta(1)};
      const Eigen::Vector2d rt = residual(trial);
      if (rt.squaredNorm() < r.squaredNorm()) {
        x = trial;
        r = rt;
        lambda = std::max(lambda / 10, 1e-15);
        improved = true;
      } else {
        lambda *= 10;
      }
    }
    if (!improved) break;
  }
  return x;
}

}  // namespace

WalgateDecomposition walgate_decompose(const PureState& psi0, const PureState& psi1,
                                       std::uint64_t seed, int restarts) {
  const DimProfile& dims = psi0.dims();
  if (!(dims == psi1.dims()) || dims.num_factors() != 2 || dims[1] != 2) {
    throw std::invalid_argument("walgate_decompose: states must share a {dA, 2} profile");
  }
  const double overlap = std::abs(psi0.amps().dot(psi1.amps()));
  if (overlap > kDefaultTol) {
    throw std::invalid_argument("walgate_decompose: states are not orthogonal (|<0|1>| = " +
                                std::to_string(overlap) + ")");
  }
  const Mat m0 = reshape_along(psi0.amps(), dims, {0});
  const Mat m1 = reshape_along(psi1.amps(), dims, {0});
  const Mat k = m0.adjoint() * m1;
  // |<mu|mu_perp>| below 1e-9.
  constexpr double kTarget = 1e-18;
  constexpr double kPi = std::numbers::pi;

  // Z, X and Y eigenbases; when several already solve, keep the sparsest.
  std::optional<WalgateDecomposition> best;
  for (auto [theta, phi] : {std::pair{0.0, 0.0}, {kPi / 2, 0.0}, {kPi / 2, kPi / 2}}) {
    Mat basis = qubit_basis(theta, phi);
    fix_phases(basis);
    if (basis_residual(k, basis) >= kTarget) continue;
    auto w = assemble(m0, m1, basis);
    if (!best || zero_parts(w) > zero_parts(*best)) best = std::move(w);
  }
  if (best) return *best;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best_residual = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::array<double, 2> x{std::acos(1.0 - 2.0 * unit(rng)), 2 * kPi * unit(rng)};
    x = polish(k, x);
    Mat basis = qubit_basis(x[0], x[1]);
    fix_phases(basis);
    auto w = assemble(m0, m1, basis);
    best_residual = std::min(best_residual, w.residual);
    if (w.residual < kTarget) return w;
  }
  std::ostringstream msg;
  msg << "walgate_decompose: no basis found after " << restarts
      << " restarts (best residual " << best_residual << ", |<0|1>| " << overlap << ")";
  throw std::runtime_error(msg.str());
}

}  // namespace qmask
