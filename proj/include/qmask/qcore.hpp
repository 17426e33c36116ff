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

#ifndef QMASK_QCORE_HPP
#define QMASK_QCORE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qmask {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Validation tolerance used wherever the caller does not supply one.
inline constexpr double kDefaultTol = 1e-10;

/// Ordered set of factor indices. Operations taking one sort it and reject
/// duplicates or out-of-range entries.
using FactorSet = std::vector<std::size_t>;

/// Local dimensions d1,...,dn of a multipartite Hilbert space.
///
/// Amplitude vectors over the profile are indexed row-major with the last
/// factor's index varying fastest.
class DimProfile {
 public:
  DimProfile() = default;
  explicit DimProfile(std::vector<std::size_t> factors);
  DimProfile(std::initializer_list<std::size_t> factors);

  const std::vector<std::size_t>& factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  std::size_t total() const { return total_; }
  std::size_t operator[](std::size_t i) const { return factors_[i]; }

  /// Factor list of `this` followed by the factor list of `other`.
  DimProfile concat(const DimProfile& other) const;
  /// Sub-profile made of the listed factors, in the listed order.
  DimProfile select(const FactorSet& which) const;
  /// Product of the listed factors.
  std::size_t total_of(const FactorSet& which) const;

  bool operator==(const DimProfile& other) const = default;

 private:
  std::vector<std::size_t> factors_;
  std::size_t total_ = 1;
};

/// Normalized state vector over a DimProfile.
class PureState {
 public:
  PureState(Vec amps, DimProfile dims, double tol = kDefaultTol);
  /// Single-factor state of dimension amps.size().
  explicit PureState(Vec amps, double tol = kDefaultTol);

  /// Computational basis state |index> over `dims`.
  static PureState basis(const DimProfile& dims, std::size_t index);
  static PureState basis(std::size_t dim, std::size_t index);

  const Vec& amps() const { return amps_; }
  const DimProfile& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

 private:
  Vec amps_;
  DimProfile dims_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a DimProfile.
class DensityMatrix {
 public:
  DensityMatrix(Mat mat, DimProfile dims, double tol = kDefaultTol);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  const Mat& mat() const { return mat_; }
  const DimProfile& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }

 private:
  Mat mat_;
  DimProfile dims_;
};

/// psi = sum_k coeffs[k] * basis_a.col(k) (x) basis_b.col(k).
struct SchmidtDecomposition {
  std::vector<double> coeffs;  // nonincreasing
  Mat basis_a;                 // orthonormal columns on the side-A factors
  Mat basis_b;                 // orthonormal columns on the side-B factors
  DimProfile dims_a;
  DimProfile dims_b;
  FactorSet side_a;            // factors of the original profile on side A
  DimProfile dims;             // the original profile

  /// Rebuilds the amplitude vector in the original factor order.
  Vec reconstruct() const;
};

/// Which factor of a bipartite (two-factor) state is traced out.
enum class Side { A, B };

PureState tensor(const PureState& u, const PureState& v);

/// Reduced state on the `keep` factors (kept in ascending order).
DensityMatrix partial_trace(const PureState& psi, FactorSet keep);
DensityMatrix partial_trace(const DensityMatrix& rho, FactorSet keep);

/// Tr_complement(|psi0><psi1|) on the `keep` factors. Shared by partial_trace
/// and cross_marginal so that the diagonal case agrees bit for bit.
Mat reduced_outer(const PureState& psi0, const PureState& psi1, FactorSet keep);

/// Tr_traced(|psi0><psi1|) for two states on the same two-factor profile.
Mat cross_marginal(const PureState& psi0, const PureState& psi1, Side traced);

/// Schmidt decomposition across `side_a` versus the remaining factors.
///
/// Computed from the SVD of the amplitudes reshaped along the cut. Each
/// side-A vector is phase-fixed so its first component above kDefaultTol is
/// real positive; the matching side-B vector absorbs the conjugate phase.
SchmidtDecomposition schmidt_decompose(const PureState& psi, FactorSet side_a);

/// 1/2 * sum |eig(rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
/// Trace norm of a Hermitian matrix; the input is not checked for Hermiticity.
double trace_norm_hermitian(const Mat& h);
/// Largest singular value.
double operator_norm(const Mat& m);

/// Shannon entropy (bits) of the squared Schmidt coefficients across the cut.
double entanglement_entropy(const PureState& psi, FactorSet side_a);
double shannon_entropy_bits(std::span<const double> probs);

/// Unitarily invariant random state: complex Gaussian amplitudes, normalized.
PureState random_pure_state(std::size_t dim, std::uint64_t seed);
PureState random_pure_state(const DimProfile& dims, std::uint64_t seed);
Vec random_gaussian_vector(std::size_t dim, std::mt19937_64& rng);
/// Independent 64-bit seed for stream `stream` of a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
Mat random_unitary(std::size_t dim, std::mt19937_64& rng);

/// Sorts `keep` and checks it is a nonempty proper subset of [0, num_factors).
FactorSet normalize_factor_set(FactorSet keep, std::size_t num_factors);
/// Factors of [0, num_factors) not in `keep`, ascending.
FactorSet complement(const FactorSet& keep, std::size_t num_factors);

/// Reshapes `amps` to a matrix whose row multi-index runs over `rows` and
/// whose column multi-index runs over the remaining factors, both ascending.
Mat reshape_along(const Vec& amps, const DimProfile& dims, const FactorSet& rows);

/// table[r * ncols + c] is the flat index of (row multi-index r, column
/// multi-index c) with rows over `rows` and columns over the complement.
std::vector<std::size_t> split_index_table(const DimProfile& dims, const FactorSet& rows);

}  // namespace qmask

#endif  // QMASK_QCORE_HPP
