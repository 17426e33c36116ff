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

#include "qmask/qcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qmask/kernels.hpp"

namespace qmask {

DimProfile::DimProfile(std::vector<std::size_t> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("DimProfile: no factors");
  for (auto f : factors_) {
    if (f == 0) throw std::invalid_argument("DimProfile: factor dimension 0");
    total_ *= f;
  }
}

DimProfile::DimProfile(std::initializer_list<std::size_t> factors)
    : DimProfile(std::vector<std::size_t>(factors)) {}

DimProfile DimProfile::concat(const DimProfile& other) const {
  std::vector<std::size_t> f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return DimProfile(std::move(f));
}

DimProfile DimProfile::select(const FactorSet& which) const {
  std::vector<std::size_t> f;
  f.reserve(which.size());
  for (auto i : which) f.push_back(factors_.at(i));
  return DimProfile(std::move(f));
}

std::size_t DimProfile::total_of(const FactorSet& which) const {
  std::size_t t = 1;
  for (auto i : which) t *= factors_.at(i);
  return t;
}

PureState::PureState(Vec amps, DimProfile dims, double tol)
    : amps_(std::move(amps)), dims_(std::move(dims)) {
  if (static_cast<std::size_t>(amps_.size()) != dims_.total()) {
    throw std::invalid_argument("PureState: " + std::to_string(amps_.size()) +
                                " amplitudes for profile of total dimension " +
                                std::to_string(dims_.total()));
  }
  const double norm = amps_.norm();
  if (!(std::abs(norm - 1.0) <= tol)) {
    throw std::invalid_argument("PureState: norm " + std::to_string(norm) + " is not 1");
  }
}

PureState::PureState(Vec amps, double tol)
    : PureState(amps, DimProfile{static_cast<std::size_t>(amps.size())}, tol) {}

PureState PureState::basis(const DimProfile& dims, std::size_t index) {
  if (index >= dims.total()) throw std::invalid_argument("PureState::basis: index out of range");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dims.total()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v), dims);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  return basis(DimProfile{dim}, index);
}

DensityMatrix::DensityMatrix(Mat mat, DimProfile dims, double tol)
    : mat_(std::move(mat)), dims_(std::move(dims)) {
  if (mat_.rows() != mat_.cols() || static_cast<std::size_t>(mat_.rows()) != dims_.total()) {
    throw std::invalid_argument("DensityMatrix: shape does not match profile");
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  const cplx tr = mat_.trace();
  if (std::abs(tr - cplx(1.0)) > tol) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.amps() * psi.amps().adjoint(), psi.dims());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(Mat::Identity(n, n) / static_cast<double>(dim), DimProfile{dim});
}

FactorSet normalize_factor_set(FactorSet keep, std::size_t num_factors) {
  std::sort(keep.begin(), keep.end());
  if (keep.empty()) throw std::invalid_argument("factor set is empty");
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw std::invalid_argument("factor set has duplicates");
  }
  if (keep.back() >= num_factors) {
    throw std::invalid_argument("factor index " + std::to_string(keep.back()) +
                                " out of range for " + std::to_string(num_factors) + " factors");
  }
  if (keep.size() == num_factors) throw std::invalid_argument("factor set is not a proper subset");
  return keep;
}

FactorSet complement(const FactorSet& keep, std::size_t num_factors) {
  FactorSet rest;
  for (std::size_t i = 0; i < num_factors; ++i) {
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) rest.push_back(i);
  }
  return rest;
}

std::vector<std::size_t> split_index_table(const DimProfile& dims, const FactorSet& rows) {
  const std::size_t n = dims.num_factors();
  const FactorSet cols = complement(rows, n);
  // Stride of each factor inside its own group (row or column multi-index).
  std::vector<std::size_t> stride(n, 0);
  std::vector<bool> is_row(n, false);
  auto assign = [&](const FactorSet& group, bool row) {
    std::size_t s = 1;
    for (auto it = group.rbegin(); it != group.rend(); ++it) {
      stride[*it] = s;
      is_row[*it] = row;
      s *= dims[*it];
    }
  };
  assign(rows, true);
  assign(cols, false);
  const std::size_t ncols = dims.total_of(cols);

  std::vector<std::size_t> table(dims.total());
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t flat = 0; flat < dims.total(); ++flat) {
    std::size_t r = 0, c = 0;
    for (std::size_t k = 0; k < n; ++k) (is_row[k] ? r : c) += digit[k] * stride[k];
    table[r * ncols + c] = flat;
    for (std::size_t k = n; k-- > 0;) {
      if (++digit[k] < dims[k]) break;
      digit[k] = 0;
    }
  }
  return table;
}

Mat reshape_along(const Vec& amps, const DimProfile& dims, const FactorSet& rows) {
  const auto table = split_index_table(dims, rows);
  const std::size_t nrows = dims.total_of(rows);
  const std::size_t ncols = dims.total() / nrows;
  Mat m(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) {
      m(r, c) = amps(static_cast<Eigen::Index>(table[r * ncols + c]));
    }
  }
  return m;
}

PureState tensor(const PureState& u, const PureState& v) {
  Vec out(u.amps().size() * v.amps().size());
  for (Eigen::Index i = 0; i < u.amps().size(); ++i) {
    out.segment(i * v.amps().size(), v.amps().size()) = u.amps()(i) * v.amps();
  }
  return PureState(std::move(out), u.dims().concat(v.dims()));
}

Mat reduced_outer(const PureState& psi0, const PureState& psi1, FactorSet keep) {
  if (!(psi0.dims() == psi1.dims())) {
    throw std::invalid_argument("reduced_outer: states have different profiles");
  }
  keep = normalize_factor_set(std::move(keep), psi0.dims().num_factors());
  const Mat m0 = reshape_along(psi0.amps(), psi0.dims(), keep);
  const Mat m1 = reshape_along(psi1.amps(), psi1.dims(), keep);
  return m0 * m1.adjoint();
}

DensityMatrix partial_trace(const PureState& psi, FactorSet keep) {
  keep = normalize_factor_set(std::move(keep), psi.dims().num_factors());
  DimProfile kept = psi.dims().select(keep);
  return DensityMatrix(reduced_outer(psi, psi, keep), std::move(kept));
}

DensityMatrix partial_trace(const DensityMatrix& rho, FactorSet keep) {
  keep = normalize_factor_set(std::move(keep), rho.dims().num_factors());
  const auto table = split_index_table(rho.dims(), keep);
  const std::size_t nrows = rho.dims().total_of(keep);
  const std::size_t ncols = rho.dims().total() / nrows;
  return DensityMatrix(kernels::partial_trace_parallel(rho.mat(), table, nrows, ncols),
                       rho.dims().select(keep));
}

Mat cross_marginal(const PureState& psi0, const PureState& psi1, Side traced) {
  if (psi0.dims().num_factors() != 2) {
    throw std::invalid_argument("cross_marginal: expects a two-factor profile");
  }
  return reduced_outer(psi0, psi1, {traced == Side::A ? std::size_t{1} : std::size_t{0}});
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, FactorSet side_a) {
  side_a = normalize_factor_set(std::move(side_a), psi.dims().num_factors());
  const FactorSet side_b = complement(side_a, psi.dims().num_factors());
  const Mat m = reshape_along(psi.amps(), psi.dims(), side_a);

  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();
  const auto& s = svd.singularValues();
  out.coeffs.assign(s.data(), s.data() + s.size());
  for (Eigen::Index k = 0; k < out.basis_a.cols(); ++k) {
    for (Eigen::Index i = 0; i < out.basis_a.rows(); ++i) {
      const cplx z = out.basis_a(i, k);
      if (std::abs(z) > kDefaultTol) {
        const cplx phase = z / std::abs(z);
        out.basis_a.col(k) *= std::conj(phase);
        out.basis_b.col(k) *= phase;
        break;
      }
    }
  }
  out.dims_a = psi.dims().select(side_a);
  out.dims_b = psi.dims().select(side_b);
  out.side_a = std::move(side_a);
  out.dims = psi.dims();
  return out;
}

Vec SchmidtDecomposition::reconstruct() const {
  Mat m = Mat::Zero(basis_a.rows(), basis_b.rows());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    m += coeffs[k] * basis_a.col(kk) * basis_b.col(kk).transpose();
  }
  const auto table = split_index_table(dims, side_a);
  const std::size_t ncols = static_cast<std::size_t>(m.cols());
  Vec v(static_cast<Eigen::Index>(dims.total()));
  for (std::size_t r = 0; r < static_cast<std::size_t>(m.rows()); ++r) {
    for (std::size_t c = 0; c < ncols; ++c) {
      v(static_cast<Eigen::Index>(table[r * ncols + c])) = m(r, c);
    }
  }
  return v;
}

double trace_norm_hermitian(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  return 0.5 * trace_norm_hermitian(rho.mat() - sigma.mat());
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double shannon_entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double entanglement_entropy(const PureState& psi, FactorSet side_a) {
  const auto sd = schmidt_decompose(psi, std::move(side_a));
  std::vector<double> probs;
  probs.reserve(sd.coeffs.size());
  for (double c : sd.coeffs) probs.push_back(c * c);
  return shannon_entropy_bits(probs);
}

Vec random_gaussian_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

PureState random_pure_state(const DimProfile& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vec v = random_gaussian_vector(dims.total(), rng);
  v.normalize();
  return PureState(std::move(v), dims);
}

PureState random_pure_state(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("random_pure_state: dim must be positive");
  return random_pure_state(DimProfile{dim}, seed);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Mat random_unitary(std::size_t dim, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  Mat z(n, n);
  for (Eigen::Index c = 0; c < n; ++c) z.col(c) = random_gaussian_vector(dim, rng);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace qmask
