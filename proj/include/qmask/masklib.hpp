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

#ifndef QMASK_MASKLIB_HPP
#define QMASK_MASKLIB_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmask/qcore.hpp"

namespace qmask {

/// Default entanglement floor (bits) below which an image counts as a
/// product state.
inline constexpr double kDefaultEntropyFloor = 1e-6;

/// Isometry H_A -> H_A (x) H_B. Column k is the image of |k>_A with the
/// ancilla in its fixed blank state.
class Masker {
 public:
  Masker(Mat iso, std::size_t dA, std::size_t dB, double tol = kDefaultTol);

  const Mat& iso() const { return iso_; }
  std::size_t dA() const { return dA_; }
  std::size_t dB() const { return dB_; }
  DimProfile output_dims() const { return DimProfile{dA_, dB_}; }

  /// Image of the basis state |k>.
  PureState image(std::size_t k) const;

 private:
  Mat iso_;
  std::size_t dA_;
  std::size_t dB_;
};

enum class MaskMode {
  /// Marginals of every listed image must match the first image's.
  set,
  /// Additionally, cross marginals Tr_X(|V k><V l|) between images of distinct
  /// computational basis states in the inputs' support must vanish on both
  /// sides. This certifies every state sharing amplitude moduli with a listed
  /// input (its whole phase orbit), not only the listed states.
  span,
};

struct StateDeviation {
  std::size_t index;
  double dev_a;  // trace distance of the A marginal to the reference
  double dev_b;
};

struct CrossNorm {
  std::size_t i;  // basis indices of the pair
  std::size_t j;
  double norm_a;  // operator norm of Tr_B(|V i><V j|)
  double norm_b;  // operator norm of Tr_A(|V i><V j|)
};

struct MaskingReport {
  DensityMatrix reference_marginal_a;
  DensityMatrix reference_marginal_b;
  std::vector<StateDeviation> per_state_deviation;
  std::vector<CrossNorm> cross_norms;  // empty in set mode
  std::vector<double> entropies;       // bits, one per image
  double defect = 0.0;
  MaskMode mode = MaskMode::set;
  double tol = kDefaultTol;
  double entropy_floor = kDefaultEntropyFloor;
  bool verdict = false;
};

/// |mu> (x) b0 + |nu> (x) b1 and |mu_perp> (x) b0 + |nu_perp> (x) b1 with
/// <mu|mu_perp> = <nu|nu_perp> = 0.
struct WalgateDecomposition {
  Mat basis_b;  // 2 x 2, columns b0 and b1
  Vec mu;
  Vec nu;
  Vec mu_perp;
  Vec nu_perp;
  double residual = 0.0;  // |<mu|mu_perp>|^2 + |<nu|nu_perp>|^2
};

/// |k>|b> -> |k>|k>.
Masker diagonal_masker(std::size_t d);

/// Masker whose column k is images[k]. The images must be orthonormal states
/// on a common profile {dA, dB} with dA == images.size().
Masker masker_from_images(const std::vector<PureState>& images);

PureState apply_masker(const Masker& v, const PureState& psi);

/// sum_k r_k e^{i phi_k} |k>.
PureState hyperdisk_state(const std::vector<double>& r, const std::vector<double>& phi);

/// Uniform-modulus member of the great hyper-disk.
PureState great_disk_state(const std::vector<double>& phi);

MaskingReport masking_defect(const Masker& v, const std::vector<PureState>& states,
                             MaskMode mode, double tol = kDefaultTol,
                             double entropy_floor = kDefaultEntropyFloor);

struct MaskCheck {
  bool masked;
  MaskingReport report;
};

/// Span-mode masking_defect; masked iff defect < tol and every image carries
/// more than entropy_floor bits of entanglement.
MaskCheck is_masked(const Masker& v, const std::vector<PureState>& states,
                    double tol = kDefaultTol, double entropy_floor = kDefaultEntropyFloor);

/// Indices k with |<k|psi>| > tol for some listed psi.
std::vector<std::size_t> support_indices(const std::vector<PureState>& states,
                                         double tol = kDefaultTol);

/// Decomposes two orthogonal states on H_A (x) C^2 over a common qubit basis
/// in which the A-parts pair up orthogonally. Canonical bases (Z, X, Y
/// eigenbases) are tried first; otherwise a seeded multi-start damped
/// Gauss-Newton search runs over the Bloch angles of the first basis vector.
WalgateDecomposition walgate_decompose(const PureState& psi0, const PureState& psi1,
                                       std::uint64_t seed = 0, int restarts = 20);

}  // namespace qmask

#endif  // QMASK_MASKLIB_HPP
