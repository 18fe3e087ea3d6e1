// Copyright 2026 The hrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hrcsim/clifford.hpp"
#include "hrcsim/region.hpp"

namespace hrcsim::dense {

using Amplitude = std::complex<double>;

/// Full state vector over 2^n amplitudes, used as a brute-force reference
/// for the tableau simulator. Basis index bit k holds the Z eigenvalue bit
/// of qubit k (0 means Z = +1). Small systems only.
class DenseState {
 public:
  explicit DenseState(int n_qubits);  // |0...0>

  int n_qubits() const { return n_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  std::vector<Amplitude>& amplitudes() { return amps_; }
  double norm() const;

  /// Applies a 4x4 unitary whose basis index is 2*q_i + q_j.
  void apply_unitary(const Eigen::Matrix4cd& u, int i, int j);

  /// Applies the canonical unitary of a symplectic gate.
  void apply_two_qubit(const SymplecticGate& gate, int i, int j);

  /// Probability that a Z measurement at `site` yields +1.
  double prob_z_plus(int site) const;

  /// Projects onto the Z = +1 (plus) or Z = -1 branch and renormalizes.
  /// Throws if the branch has (numerically) zero probability.
  void project_z(int site, bool plus);

 private:
  int n_ = 0;
  std::vector<Amplitude> amps_;
};

/// Projected and renormalized copy (both branches exposed for tests).
DenseState dense_measure_z(const DenseState& s, int site, bool plus);

/// Canonical 4x4 unitary realizing a symplectic gate's conjugation action.
/// One fixed representative per Sp(4, F2) element, built once by composing
/// Hadamard, phase, and CNOT generators.
const Eigen::Matrix4cd& gate_unitary(const SymplecticGate& gate);

/// Checks, for every table element and all 15 non-identity two-qubit Pauli
/// supports v, that U P_v U^dagger equals P_{g(v)} up to a unit phase.
/// Throws std::logic_error on any failure.
void verify_gate_table();

/// Reduced density matrix over the listed qubits. Bit k of the reduced
/// basis index is qubit kept[k].
Eigen::MatrixXcd reduced_density(const DenseState& s,
                                 const std::vector<int>& kept);

/// Von Neumann entropy of the reduced state in bits.
double dense_entropy(const DenseState& s, const Region& region);

double dense_mutual_information(const DenseState& s, const Region& a,
                                const Region& c);

double dense_tripartite_mutual_information(const DenseState& s,
                                           const Region& a, const Region& b,
                                           const Region& c);

/// Logarithmic negativity: log2 of the trace norm of the partial transpose
/// (over `a`) of the reduced state on a union b.
double dense_negativity(const DenseState& s, const Region& a,
                        const Region& b);

}  // namespace hrcsim::dense
