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

#include <random>

#include "gtest/gtest.h"
#include "qmask/protocols.hpp"
#include "test_util.hpp"

using namespace qmask;
using namespace qmask::testing;

namespace {

std::vector<double> random_phases(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::vector<double> phi(d);
  for (auto& p : phi) p = angle(rng);
  return phi;
}

std::vector<double> random_amplitudes(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> r(d);
  double norm2 = 0.0;
  for (auto& x : r) {
    x = u(rng);
    norm2 += x * x;
  }
  for (auto& x : r) x /= std::sqrt(norm2);
  return r;
}

// u (x) v for a vector on A and one on a qubit B, last factor fastest.
Vec kron(const Vec& u, const Vec& v) {
  Vec out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    for (Eigen::Index j = 0; j < v.size(); ++j) out(i * v.size() + j) = u(i) * v(j);
  }
  return out;
}

// Random unit vector orthogonal to psi.
PureState orthogonal_partner(const PureState& psi, std::uint64_t seed) {
  Vec v = random_pure_state(psi.dims(), seed).amps();
  v -= psi.amps() * psi.amps().dot(v);
  return PureState(v / v.norm(), psi.dims());
}

}  // namespace

TEST(Masker, RejectsNonIsometry) {
  Mat iso = Mat::Zero(4, 2);
  iso(0, 0) = 1.0;
  iso(0, 1) = 1.0;
  EXPECT_THROW(Masker(iso, 2, 2), std::invalid_argument);
  EXPECT_THROW(Masker(Mat::Identity(4, 2), 2, 3), std::invalid_argument);
}

TEST(DiagonalMasker, BasisImages) {
  const Masker v = diagonal_masker(2);
  EXPECT_LT((v.image(0).amps() - vec({1, 0, 0, 0})).norm(), 1e-15);
  EXPECT_LT((v.image(1).amps() - vec({0, 0, 0, 1})).norm(), 1e-15);
  EXPECT_EQ(v.dB(), 2u);
  EXPECT_THROW(diagonal_masker(1), std::invalid_argument);
}

TEST(DiagonalMasker, PlusMapsToBell) {
  EXPECT_LT((apply_masker(diagonal_masker(2), ket_plus()).amps() - bell_plus().amps()).norm(),
            1e-15);
}

TEST(DiagonalMasker, QutritPhaseStateHasMaximallyMixedMarginals) {
  for (double phi : {0.0, 0.3, 1.7, -2.9}) {
    const PureState psi = great_disk_state({0.0, phi, 0.0});
    const PureState img = apply_masker(diagonal_masker(3), psi);
    EXPECT_LT(trace_distance(partial_trace(img, {0}), DensityMatrix::maximally_mixed(3)), 1e-15);
    EXPECT_LT(trace_distance(partial_trace(img, {1}), DensityMatrix::maximally_mixed(3)), 1e-15);
  }
}

TEST(MaskerFromImages, ProductImagesEqualDiagonalMasker) {
  const Masker v = masker_from_images({two_qubit({1, 0, 0, 0}), two_qubit({0, 0, 0, 1})});
  EXPECT_TRUE(v.iso() == diagonal_masker(2).iso());
}

TEST(MaskerFromImages, BellImagesAreTheClassicalBitMasker) {
  const Masker v = masker_from_images({bell_plus(), bell_minus()});
  EXPECT_LT(max_abs(v.iso() - classical_bit_masker().iso()), 1e-15);
  EXPECT_LT((apply_masker(v, PureState::basis(2, 1)).amps() - bell_minus().amps()).norm(), 1e-15);
}

TEST(MaskerFromImages, ProductImagesWithDistinctBMarginalsFail) {
  const Masker v = masker_from_images({two_qubit({1, 0, 0, 0}), two_qubit({0, 1, 0, 0})});
  const auto report = masking_defect(v, {PureState::basis(2, 0), PureState::basis(2, 1)},
                                     MaskMode::set);
  EXPECT_NEAR(report.per_state_deviation[1].dev_a, 0.0, 1e-15);
  EXPECT_NEAR(report.per_state_deviation[1].dev_b, 1.0, 1e-15);
  EXPECT_FALSE(report.verdict);
}

TEST(MaskerFromImages, Errors) {
  EXPECT_THROW(masker_from_images({bell_plus(), bell_plus()}), std::invalid_argument);
  EXPECT_THROW(masker_from_images({bell_plus()}), std::invalid_argument);  // dA != count
  EXPECT_THROW(masker_from_images({}), std::invalid_argument);
}

TEST(ApplyMasker, LinearityAndDimensionCheck) {
  std::mt19937_64 rng(11);
  const Mat u = random_unitary(6, rng);
  const Masker v(u.leftCols(3), 3, 2);
  const PureState p0 = random_pure_state(3, 1), p1 = random_pure_state(3, 2);
  const cplx a(0.3, -0.2), b(0.5, 0.1);
  const Vec combo = a * p0.amps() + b * p1.amps();
  const PureState mixed(combo / combo.norm());
  const Vec lhs = combo.norm() * apply_masker(v, mixed).amps();
  const Vec rhs = a * apply_masker(v, p0).amps() + b * apply_masker(v, p1).amps();
  EXPECT_LT((lhs - rhs).norm(), 1e-14);
  EXPECT_THROW(apply_masker(v, random_pure_state(2, 0)), std::invalid_argument);
}

TEST(HyperdiskState, Examples) {
  EXPECT_LT((hyperdisk_state({kInvSqrt2, kInvSqrt2}, {0, 0}).amps() - ket_plus().amps()).norm(),
            1e-15);
  EXPECT_LT((hyperdisk_state({kInvSqrt2, kInvSqrt2}, {0, kPi}).amps() - ket_minus().amps()).norm(),
            1e-15);
  const double s = 1.0 / std::sqrt(3.0);
  EXPECT_LT((hyperdisk_state({s, s, s}, {0, kPi / 2, kPi}).amps() - vec({s, cplx(0, s), -s}))
                .norm(),
            1e-15);
  EXPECT_THROW(hyperdisk_state({0.5, 0.5}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(hyperdisk_state({1.0}, {0, 0}), std::invalid_argument);
}

TEST(MaskingDefect, GreatDiskSpanModeIsZero) {
  const auto report =
      masking_defect(diagonal_masker(2),
                     {great_disk_state({0, 0}), great_disk_state({0, kPi / 2}),
                      great_disk_state({0, kPi})},
                     MaskMode::span);
  EXPECT_LT(report.defect, 1e-12);
  EXPECT_TRUE(report.verdict);
  EXPECT_EQ(report.cross_norms.size(), 1u);
  for (double h : report.entropies) EXPECT_NEAR(h, 1.0, 1e-12);
}

TEST(MaskingDefect, ZeroAndPlusSetModeIsOneHalf) {
  const auto report =
      masking_defect(diagonal_masker(2), {PureState::basis(2, 0), ket_plus()}, MaskMode::set);
  EXPECT_NEAR(report.defect, 0.5, 1e-15);
  EXPECT_TRUE(report.cross_norms.empty());
  EXPECT_FALSE(report.verdict);
}

// Product images |00>, |11> leak the input through both marginals: the
// deviations are 1, not 0, and the images carry no entanglement either.
TEST(MaskingDefect, ProductImagesOnBasisStates) {
  const Masker v = masker_from_images({two_qubit({1, 0, 0, 0}), two_qubit({0, 0, 0, 1})});
  const auto report =
      masking_defect(v, {PureState::basis(2, 0), PureState::basis(2, 1)}, MaskMode::set);
  EXPECT_NEAR(report.per_state_deviation[1].dev_a, 1.0, 1e-15);
  EXPECT_NEAR(report.per_state_deviation[1].dev_b, 1.0, 1e-15);
  EXPECT_NEAR(report.entropies[0], 0.0, 1e-15);
  EXPECT_FALSE(report.verdict);
}

// A single product image has zero defect; only the entropy floor rejects it.
TEST(MaskingDefect, EntropyFloorRejectsProductImage) {
  Mat iso = Mat::Zero(4, 2);
  iso(0, 0) = 1.0;  // |0> -> |00>
  iso(2, 1) = 1.0;  // |1> -> |10>
  const auto report = masking_defect(Masker(iso, 2, 2), {PureState::basis(2, 0)}, MaskMode::set);
  EXPECT_EQ(report.defect, 0.0);
  EXPECT_FALSE(report.verdict);
}

TEST(MaskingDefect, EmptyAndMismatchedInputs) {
  EXPECT_THROW(masking_defect(diagonal_masker(2), {}, MaskMode::set), std::invalid_argument);
  EXPECT_THROW(masking_defect(diagonal_masker(2), {random_pure_state(3, 0)}, MaskMode::set),
               std::invalid_argument);
}

TEST(MaskingDefect, DefectIsMaxOfEntries) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Masker v(random_unitary(6, rng).leftCols(2), 2, 3);
    const auto report = masking_defect(
        v, {random_pure_state(2, 3 * trial), random_pure_state(2, 3 * trial + 1)},
        MaskMode::span);
    double expected = 0.0;
    for (const auto& d : report.per_state_deviation) expected = std::max({expected, d.dev_a, d.dev_b});
    for (const auto& c : report.cross_norms) expected = std::max({expected, c.norm_a, c.norm_b});
    EXPECT_EQ(report.defect, expected);
  }
}

// Set mode sees only the listed states; span mode catches the superpositions
// that the two Bell images fail to mask.
TEST(MaskingDefect, SpanModeCatchesSuperpositions) {
  const Masker v = classical_bit_masker();
  const std::vector<PureState> basis{PureState::basis(2, 0), PureState::basis(2, 1)};
  EXPECT_TRUE(masking_defect(v, basis, MaskMode::set).verdict);
  const auto span = masking_defect(v, basis, MaskMode::span);
  EXPECT_NEAR(span.defect, 0.5, 1e-15);
  EXPECT_FALSE(span.verdict);
  EXPECT_GT(masking_defect(v, {PureState::basis(2, 0), ket_plus()}, MaskMode::set).defect, 0.4);
}

TEST(IsMasked, Examples) {
  std::mt19937_64 rng(4);
  std::vector<PureState> phase_family;
  for (int s = 0; s < 6; ++s) phase_family.push_back(great_disk_state(random_phases(3, rng)));
  EXPECT_TRUE(is_masked(diagonal_masker(3), phase_family).masked);

  Mat iso = Mat::Zero(4, 2);
  iso(0, 0) = 1.0;
  iso(2, 1) = 1.0;
  EXPECT_FALSE(
      is_masked(Masker(iso, 2, 2), {PureState::basis(2, 0), PureState::basis(2, 1)}).masked);

  const auto tomographic = is_masked(
      diagonal_masker(2), {PureState::basis(2, 0), PureState::basis(2, 1), ket_plus(), ket_plus_i()});
  EXPECT_FALSE(tomographic.masked);
  EXPECT_NEAR(tomographic.report.per_state_deviation[2].dev_a, 0.5, 1e-15);
}

TEST(MaskerProperties, IsometryPreservesNorm) {
  std::mt19937_64 rng(8);
  std::vector<Masker> maskers{diagonal_masker(2), diagonal_masker(5), classical_bit_masker(),
                              multiparty_masker(3), Masker(random_unitary(12, rng).leftCols(4), 4, 3)};
  for (const auto& v : maskers) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      EXPECT_NEAR(apply_masker(v, random_pure_state(v.dA(), s)).amps().norm(), 1.0, 1e-10);
    }
  }
}

// For every d, amplitude profile r and phases, the diagonal masker images have
// marginals diag(r_k^2) and the span-mode defect vanishes.
TEST(MaskerProperties, HyperdiskFamilyIsMasked) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> dim(2, 8);
  for (int family = 0; family < 10; ++family) {
    const std::size_t d = dim(rng);
    const auto r = random_amplitudes(d, rng);
    Mat expected = Mat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) expected(k, k) = r[k] * r[k];
    std::vector<PureState> states;
    for (int s = 0; s < 50; ++s) states.push_back(hyperdisk_state(r, random_phases(d, rng)));
    const auto report = masking_defect(diagonal_masker(d), states, MaskMode::span);
    EXPECT_LT(report.defect, 1e-10);
    for (const auto& psi : states) {
      const PureState img = apply_masker(diagonal_masker(d), psi);
      EXPECT_LT(max_abs(partial_trace(img, {0}).mat() - expected), 1e-10);
      EXPECT_LT(max_abs(partial_trace(img, {1}).mat() - expected), 1e-10);
    }
  }
}

// Convex mixtures of masked inputs map to the same marginals.
TEST(MaskerProperties, MixtureClosure) {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  for (std::size_t d = 2; d <= 5; ++d) {
    const Masker v = diagonal_masker(d);
    const auto n = static_cast<Eigen::Index>(d);
    const DensityMatrix reference = partial_trace(apply_masker(v, great_disk_state(
                                                                      std::vector<double>(d, 0.0))),
                                                  {0});
    Mat rho = Mat::Zero(n, n);
    double total = 0.0;
    for (int s = 0; s < 10; ++s) {
      const double w = weight(rng);
      const Vec a = great_disk_state(random_phases(d, rng)).amps();
      rho += w * a * a.adjoint();
      total += w;
    }
    rho /= total;
    const Mat joint = v.iso() * rho * v.iso().adjoint();
    const DensityMatrix image(joint, v.output_dims(), 1e-10);
    EXPECT_LT(trace_distance(partial_trace(image, {0}), reference), 1e-12);
    EXPECT_LT(trace_distance(partial_trace(image, {1}), reference), 1e-12);
  }
}

TEST(MaskerProperties, SharpCrossMarginalsVanishExactly) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const Masker v = diagonal_masker(d);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t j = 0; j < d; ++j) {
        if (k == j) continue;
        EXPECT_EQ(max_abs(cross_marginal(v.image(k), v.image(j), Side::A)), 0.0);
        EXPECT_EQ(max_abs(cross_marginal(v.image(k), v.image(j), Side::B)), 0.0);
      }
    }
  }
}

TEST(Walgate, BellPairUsesHadamardBasis) {
  const auto w = walgate_decompose(bell_plus(), bell_minus());
  EXPECT_LT(phase_insensitive_distance(w.basis_b.col(0), ket_plus().amps()), 1e-12);
  EXPECT_LT(phase_insensitive_distance(w.basis_b.col(1), ket_minus().amps()), 1e-12);
  EXPECT_LT((w.mu - ket_plus().amps() * kInvSqrt2).norm(), 1e-12);
  EXPECT_LT((w.nu - ket_minus().amps() * kInvSqrt2).norm(), 1e-12);
  EXPECT_LT((w.mu_perp - ket_minus().amps() * kInvSqrt2).norm(), 1e-12);
  EXPECT_LT((w.nu_perp - ket_plus().amps() * kInvSqrt2).norm(), 1e-12);
}

TEST(Walgate, ComputationalPair) {
  const auto w = walgate_decompose(two_qubit({1, 0, 0, 0}), two_qubit({0, 0, 0, 1}));
  EXPECT_LT(max_abs(w.basis_b - Mat::Identity(2, 2)), 1e-15);
  EXPECT_LT((w.mu - vec({1, 0})).norm(), 1e-15);
  EXPECT_LT(w.nu.norm(), 1e-15);
  EXPECT_LT(w.mu_perp.norm(), 1e-15);
  EXPECT_LT((w.nu_perp - vec({0, 1})).norm(), 1e-15);
}

TEST(Walgate, ProductPairInHadamardBasis) {
  const PureState p0 = tensor(PureState::basis(2, 0), ket_plus());
  const PureState p1 = tensor(PureState::basis(2, 1), ket_minus());
  const auto w = walgate_decompose(p0, p1);
  EXPECT_LT(phase_insensitive_distance(w.basis_b.col(0), ket_plus().amps()), 1e-12);
  EXPECT_LT((w.mu - vec({1, 0})).norm(), 1e-12);
  EXPECT_LT(w.nu.norm(), 1e-12);
  EXPECT_LT(w.mu_perp.norm(), 1e-12);
  EXPECT_LT((w.nu_perp - vec({0, 1})).norm(), 1e-12);
}

TEST(Walgate, Errors) {
  EXPECT_THROW(walgate_decompose(bell_plus(), bell_plus()), std::invalid_argument);
  EXPECT_THROW(walgate_decompose(random_pure_state(DimProfile{2, 3}, 0),
                                 random_pure_state(DimProfile{2, 3}, 1)),
               std::invalid_argument);
}

TEST(Walgate, RandomOrthogonalPairs) {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const std::size_t da = 1 + trial % 4;
    const PureState p0 = random_pure_state(DimProfile{da, 2}, 5000 + trial);
    const PureState p1 = orthogonal_partner(p0, 9000 + trial);
    const auto w = walgate_decompose(p0, p1, trial);
    const Vec b0 = w.basis_b.col(0), b1 = w.basis_b.col(1);
    EXPECT_LT(max_abs(w.basis_b.adjoint() * w.basis_b - Mat::Identity(2, 2)), 1e-12);
    EXPECT_LT((kron(w.mu, b0) + kron(w.nu, b1) - p0.amps()).norm(), 1e-8);
    EXPECT_LT((kron(w.mu_perp, b0) + kron(w.nu_perp, b1) - p1.amps()).norm(), 1e-8);
    EXPECT_LT(std::abs(w.mu.dot(w.mu_perp)), 1e-8);
    EXPECT_LT(std::abs(w.nu.dot(w.nu_perp)), 1e-8);
  }
}
