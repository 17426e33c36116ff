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

#ifndef QMASK_PROTOCOLS_HPP
#define QMASK_PROTOCOLS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "qmask/masklib.hpp"
#include "qmask/qcore.hpp"

namespace qmask {

/// Unitary acting on the first factor of a bipartite state.
class LocalUnitary {
 public:
  explicit LocalUnitary(Mat mat, double tol = kDefaultTol);
  const Mat& mat() const { return mat_; }

 private:
  Mat mat_;
};

struct CommitmentTranscript {
  PureState committed_state;  // on H_A
  PureState joint;            // on H_A (x) H_B
  DensityMatrix sent_marginal;  // Tr_A of joint, handed to the receiver
  PureState unveiled_state;   // what the sender opens with
};

/// |0> -> (|00> + |11>)/sqrt2, |1> -> (|00> - |11>)/sqrt2.
Masker classical_bit_masker();

/// |k> -> |k>|kkk>, the four-party phase masker written as A : (E_A B E_B).
Masker multiparty_masker(std::size_t d);

CommitmentTranscript commit(const PureState& psi, const Masker& v);

/// U_A with (U_A (x) I)|psi1> = |psi0> up to a global phase. Requires equal B
/// marginals (within 1e-8). Built from Schmidt decompositions of both states:
/// within every block of equal Schmidt coefficients the B-side bases are
/// related by their overlap unitary, which is absorbed into the A-side basis.
LocalUnitary cheat_unitary(const PureState& psi0, const PureState& psi1);

PureState apply_local(const LocalUnitary& u, const PureState& joint);

/// |<psi0|(U (x) I)|psi1>|.
double cheat_overlap(const LocalUnitary& u, const PureState& psi0, const PureState& psi1);

/// diag(1, e^{i phi}, ..., e^{i phi}) psi.
PureState relative_phase_shift(const PureState& psi, double phi);

struct CheatOutcome {
  PureState target_state;  // the state the sender now claims
  PureState target_joint;
  LocalUnitary unitary;
  PureState cheated_joint;
  double fidelity;  // |<target_joint|cheated_joint>|
};

/// Switches a commitment to relative_phase_shift(committed, phi) by a local
/// unitary on the sender's half.
CheatOutcome cheat_commitment(const CommitmentTranscript& t, const Masker& v, double phi);

/// (1/sqrt d) sum_k e^{i phi_k} |kkkk> on factors (A, E_A, B, E_B).
PureState multiparty_phase_masker(std::size_t d, const std::vector<double>& phi);

/// True iff rho is diagonal (within tol) in the product of the eigenbases of
/// its marginals on side_a and on the remaining factors. A sufficient test for
/// zero quantum correlations, not a discord computation.
bool is_classical_classical(const DensityMatrix& rho, FactorSet side_a,
                            double tol = kDefaultTol);

/// Completely dephases one factor in its computational basis.
DensityMatrix dephase_factor(const DensityMatrix& rho, std::size_t factor);

}  // namespace qmask

#endif  // QMASK_PROTOCOLS_HPP
