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

#include "qmask/protocols.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qmask {

namespace {

constexpr double kMarginalTol = 1e-8;
// Schmidt coefficients closer than this share a block.
constexpr double kBlockTol = 1e-8;
constexpr double kZeroCoeff = 1e-12;

}  // namespace

LocalUnitary::LocalUnitary(Mat mat, double tol) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("LocalUnitary: not square");
  const double err =
      (mat_.adjoint() * mat_ - Mat::Identity(mat_.rows(), mat_.cols())).cwiseAbs().maxCoeff();
  if (!(err <= tol)) {
    throw std::invalid_argument("LocalUnitary: not unitary (error " + std::to_string(err) + ")");
  }
}

Masker classical_bit_masker() {
  const double h = 1.0 / std::sqrt(2.0);
  Vec plus(4), minus(4);
  plus << h, 0, 0, h;
  minus << h, 0, 0, -h;
  return masker_from_images({PureState(plus, DimProfile{2, 2}),
                             PureState(minus, DimProfile{2, 2})});
}

Masker multiparty_masker(std::size_t d) {
  if (d < 2) throw std::invalid_argument("multiparty_masker: d must be at least 2");
  const auto n = static_cast<Eigen::Index>(d);
  const Eigen::Index dB = n * n * n;
  Mat iso = Mat::Zero(n * dB, n);
  for (Eigen::Index k = 0; k < n; ++k) iso(k * dB + k * (n * n + n + 1), k) = 1.0;
  return Masker(std::move(iso), d, static_cast<std::size_t>(dB));
}

CommitmentTranscript commit(const PureState& psi, const Masker& v) {
  PureState joint = apply_masker(v, psi);
  DensityMatrix sent = partial_trace(joint, {1});
  return CommitmentTranscript{psi, std::move(joint), std::move(sent), psi};
}

LocalUnitary cheat_unitary(const PureState& psi0, const PureState& psi1) {
  const DimProfile& dims = psi0.dims();
  if (!(dims == psi1.dims()) || dims.num_factors() != 2) {
    throw std::invalid_argument("cheat_unitary: states must share a two-factor profile");
  }
  const double gap = trace_distance(partial_trace(psi0, {1}), partial_trace(psi1, {1}));
  if (gap > kMarginalTol) {
    std::ostringstream msg;
    msg << "cheat_unitary: B marginals differ (trace distance " << gap
        << "), no local unitary relates the states";
    throw std::invalid_argument(msg.str());
  }

  const Mat m0 = reshape_along(psi0.amps(), dims, {0});
  const Mat m1 = reshape_along(psi1.amps(), dims, {0});
  Eigen::JacobiSVD<Mat> svd0(m0, Eigen::ComputeFullU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<Mat> svd1(m1, Eigen::ComputeFullU | Eigen::ComputeThinV);
  const Mat& a0 = svd0.matrixU();
  const Mat& a1 = svd1.matrixU();
  const Mat b0 = svd0.matrixV().conjugate();
  const Mat b1 = svd1.matrixV().conjugate();
  const auto& s = svd0.singularValues();

  const Eigen::Index da = a0.rows();
  Mat u = Mat::Zero(da, da);
  Eigen::Index start = 0;
  const Eigen::Index rank = (s.array() > kZeroCoeff).count();
  while (start < rank) {
    Eigen::Index end = start + 1;
    while (end < rank && std::abs(s(end) - s(start)) <= kBlockTol) ++end;
    const Eigen::Index k = end - start;
    // b0_j = sum_i b1_i w(i, j) when both blocks span the same eigenspace.
    const Mat w = b1.middleCols(start, k).adjoint() * b0.middleCols(start, k);
    const double unitarity = (w.adjoint() * w - Mat::Identity(k, k)).cwiseAbs().maxCoeff();
    if (unitarity > 1e-6) {
      std::ostringstream msg;
      msg << "cheat_unitary: Schmidt block [" << start << ", " << end << ") with coefficient "
          << s(start) << " does not align (overlap unitarity error " << unitarity << ")";
      throw std::runtime_error(msg.str());
    }
    Eigen::JacobiSVD<Mat> polar(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Mat w_unitary = polar.matrixU() * polar.matrixV().adjoint();
    u += a0.middleCols(start, k) * w_unitary.transpose() * a1.middleCols(start, k).adjoint();
    start = end;
  }
  if (rank < da) {
    u += a0.rightCols(da - rank) * a1.rightCols(da - rank).adjoint();
  }
  return LocalUnitary(std::move(u));
}

PureState apply_local(const LocalUnitary& u, const PureState& joint) {
  const DimProfile& dims = joint.dims();
  if (dims.num_factors() != 2 || static_cast<std::size_t>(u.mat().rows()) != dims[0]) {
    throw std::invalid_argument("apply_local: unitary does not act on the first factor");
  }
  const Mat m = reshape_along(joint.amps(), dims, {0});
  const Mat out = u.mat() * m;
  // Row-major flattening of a dA x dB matrix is the column-major flattening of its transpose.
  const Mat t = out.transpose();
  return PureState(Eigen::Map<const Vec>(t.data(), t.size()), dims);
}

double cheat_overlap(const LocalUnitary& u, const PureState& psi0, const PureState& psi1) {
  return std::abs(psi0.amps().dot(apply_local(u, psi1).amps()));
}

PureState relative_phase_shift(const PureState& psi, double phi) {
  Vec v = psi.amps();
  const cplx phase = std::polar(1.0, phi);
  for (Eigen::Index k = 1; k < v.size(); ++k) v(k) *= phase;
  return PureState(std::move(v), psi.dims());
}

CheatOutcome cheat_commitment(const CommitmentTranscript& t, const Masker& v, double phi) {
  PureState target = relative_phase_shift(t.committed_state, phi);
  PureState target_joint = apply_masker(v, target);
  LocalUnitary u = cheat_unitary(target_joint, t.joint);
  PureState cheated = apply_local(u, t.joint);
  const double fidelity = std::abs(target_joint.amps().dot(cheated.amps()));
  return CheatOutcome{std::move(target), std::move(target_joint), std::move(u),
                      std::move(cheated), fidelity};
}

PureState multiparty_phase_masker(std::size_t d, const std::vector<double>& phi) {
  if (d < 2) throw std::invalid_argument("multiparty_phase_masker: d must be at least 2");
  if (phi.size() != d) throw std::invalid_argument("multiparty_phase_masker: need d phases");
  const auto n = static_cast<Eigen::Index>(d);
  Vec v = Vec::Zero(n * n * n * n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k * (n * n * n + n * n + n + 1)) = std::polar(amp, phi[static_cast<std::size_t>(k)]);
  }
  return PureState(std::move(v), DimProfile{d, d, d, d});
}

bool is_classical_classical(const DensityMatrix& rho, FactorSet side_a, double tol) {
  const std::size_t nf = rho.dims().num_factors();
  side_a = normalize_factor_set(std::move(side_a), nf);
  const FactorSet side_b = complement(side_a, nf);

  // Reorder so that the side-A multi-index is the slow one.
  const auto table = split_index_table(rho.dims(), side_a);
  const auto n = static_cast<Eigen::Index>(rho.dim());
  Mat reordered(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      reordered(i, j) = rho.mat()(static_cast<Eigen::Index>(table[static_cast<std::size_t>(i)]),
                                  static_cast<Eigen::Index>(table[static_cast<std::size_t>(j)]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> ea(partial_trace(rho, side_a).mat());
  Eigen::SelfAdjointEigenSolver<Mat> eb(partial_trace(rho, side_b).mat());
  const Mat basis = Eigen::kroneckerProduct(ea.eigenvectors(), eb.eigenvectors()).eval();
  Mat d = basis.adjoint() * reordered * basis;
  d.diagonal().setZero();
  return d.cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix dephase_factor(const DensityMatrix& rho, std::size_t factor) {
  const DimProfile& dims = rho.dims();
  if (factor >= dims.num_factors()) throw std::invalid_argument("dephase_factor: bad factor");
  std::size_t stride = 1;
  for (std::size_t k = factor + 1; k < dims.num_factors(); ++k) stride *= dims[k];
  const std::size_t d = dims[factor];
  Mat out = rho.mat();
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      const std::size_t di = (static_cast<std::size_t>(i) / stride) % d;
      const std::size_t dj = (static_cast<std::size_t>(j) / stride) % d;
      if (di != dj) out(i, j) = 0.0;
    }
  }
  return DensityMatrix(std::move(out), dims);
}

}  // namespace qmask
