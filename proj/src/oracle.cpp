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

#include "hrcsim/oracle.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace hrcsim::dense {

namespace {

constexpr int kMaxQubits = 16;
constexpr double kTolerance = 1e-9;

}  // namespace

DenseState::DenseState(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("DenseState: n_qubits out of supported range");
  }
  n_ = n_qubits;
  amps_.assign(std::size_t{1} << n_, Amplitude(0.0, 0.0));
  amps_[0] = Amplitude(1.0, 0.0);
}

double DenseState::norm() const {
  double total = 0.0;
  for (const Amplitude& a : amps_) {
    total += std::norm(a);
  }
  return std::sqrt(total);
}

void DenseState::apply_unitary(const Eigen::Matrix4cd& u, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw std::invalid_argument("apply_unitary: sites must be distinct and in range");
  }
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  const std::uint64_t size = std::uint64_t{1} << n_;
  for (std::uint64_t base = 0; base < size; ++base) {
    if (base & (bi | bj)) {
      continue;
    }
    // Local basis index is 2*q_i + q_j.
    const std::uint64_t idx[4] = {base, base | bj, base | bi, base | bi | bj};
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) {
      v(k) = amps_[idx[k]];
    }
    const Eigen::Vector4cd w = u * v;
    for (int k = 0; k < 4; ++k) {
      amps_[idx[k]] = w(k);
    }
  }
}

void DenseState::apply_two_qubit(const SymplecticGate& gate, int i, int j) {
  apply_unitary(gate_unitary(gate), i, j);
}

double DenseState::prob_z_plus(int site) const {
  if (site < 0 || site >= n_) {
    throw std::invalid_argument("prob_z_plus: site out of range");
  }
  const std::uint64_t bit = std::uint64_t{1} << site;
  double p = 0.0;
  for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
    if (!(idx & bit)) {
      p += std::norm(amps_[idx]);
    }
  }
  return p;
}

void DenseState::project_z(int site, bool plus) {
  const double p_plus = prob_z_plus(site);
  const double p = plus ? p_plus : 1.0 - p_plus;
  if (p < 1e-12) {
    throw std::invalid_argument("project_z: branch has zero probability");
  }
  const std::uint64_t bit = std::uint64_t{1} << site;
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
    const bool keep = ((idx & bit) == 0) == plus;
    amps_[idx] = keep ? amps_[idx] * scale : Amplitude(0.0, 0.0);
  }
}

DenseState dense_measure_z(const DenseState& s, int site, bool plus) {
  DenseState out = s;
  out.project_z(site, plus);
  return out;
}

namespace {

struct GeneratorGate {
  std::uint16_t mask;
  Eigen::Matrix4cd unitary;
};

// Packs a 4x4 GF(2) matrix given per-row column lists.
std::uint16_t pack_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::uint16_t mask = 0;
  int r = 0;
  for (const auto& cols : rows) {
    for (const int c : cols) {
      mask |= static_cast<std::uint16_t>(1u << (4 * r + c));
    }
    ++r;
  }
  return mask;
}

// Component order is (x_i, x_j, z_i, z_j); the unitary basis index is
// 2*q_i + q_j.
std::vector<GeneratorGate> generator_gates() {
  const Amplitude one(1.0, 0.0);
  const Amplitude im(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);

  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();

  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
      }
    }
    return out;
  };

  std::vector<GeneratorGate> gens;

  // Hadamard on i: swaps x_i and z_i.
  gens.push_back({pack_rows({{2}, {1}, {0}, {3}}), kron(h, id2)});
  // Hadamard on j.
  gens.push_back({pack_rows({{0}, {3}, {2}, {1}}), kron(id2, h)});
  // Phase gate on i: z_i += x_i.
  {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = one;
    u(1, 1) = one;
    u(2, 2) = im;
    u(3, 3) = im;
    gens.push_back({pack_rows({{0}, {1}, {0, 2}, {3}}), u});
  }
  // Phase gate on j: z_j += x_j.
  {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = one;
    u(1, 1) = im;
    u(2, 2) = one;
    u(3, 3) = im;
    gens.push_back({pack_rows({{0}, {1}, {2}, {1, 3}}), u});
  }
  // CNOT with control i, target j: x_j += x_i, z_i += z_j.
  {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = one;
    u(1, 1) = one;
    u(3, 2) = one;
    u(2, 3) = one;
    gens.push_back({pack_rows({{0}, {0, 1}, {2, 3}, {3}}), u});
  }
  // CNOT with control j, target i: x_i += x_j, z_j += z_i.
  {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = one;
    u(3, 1) = one;
    u(2, 2) = one;
    u(1, 3) = one;
    gens.push_back({pack_rows({{0, 1}, {1}, {2}, {2, 3}}), u});
  }
  return gens;
}

std::uint16_t multiply_gate_masks(std::uint16_t a, std::uint16_t b) {
  std::uint16_t out = 0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      int sum = 0;
      for (int k = 0; k < 4; ++k) {
        sum ^= ((a >> (4 * r + k)) & 1) & ((b >> (4 * k + c)) & 1);
      }
      if (sum) {
        out |= static_cast<std::uint16_t>(1u << (4 * r + c));
      }
    }
  }
  return out;
}

// One canonical unitary per Sp(4, F2) element, found by breadth-first
// composition of the generators. Indexed like two_qubit_clifford_table().
const std::vector<Eigen::Matrix4cd>& unitary_table() {
  static const std::vector<Eigen::Matrix4cd> table = [] {
    const auto& gates = two_qubit_clifford_table();
    const auto gens = generator_gates();
    std::unordered_map<std::uint16_t, Eigen::Matrix4cd> found;
    std::deque<std::uint16_t> queue;

    const std::uint16_t id_mask = SymplecticGate::identity_gate().mask;
    found.emplace(id_mask, Eigen::Matrix4cd::Identity());
    queue.push_back(id_mask);
    while (!queue.empty()) {
      const std::uint16_t cur = queue.front();
      queue.pop_front();
      const Eigen::Matrix4cd cur_u = found.at(cur);
      for (const auto& gen : gens) {
        const std::uint16_t next = multiply_gate_masks(gen.mask, cur);
        if (found.emplace(next, gen.unitary * cur_u).second) {
          queue.push_back(next);
        }
      }
    }
    if (found.size() != gates.size()) {
      throw std::logic_error("gate_unitary: generators do not span Sp(4, F2)");
    }
    std::vector<Eigen::Matrix4cd> table;
    table.reserve(gates.size());
    for (const auto& g : gates) {
      table.push_back(found.at(g.mask));
    }
    return table;
  }();
  return table;
}

Eigen::Matrix2cd pauli_factor(bool x, bool z) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  if (x) {
    Eigen::Matrix2cd px;
    px << 0, 1, 1, 0;
    m = px * m;
  }
  if (z) {
    Eigen::Matrix2cd pz;
    pz << 1, 0, 0, -1;
    m = m * pz;  // X^x Z^z
  }
  return m;
}

// P_v for support v with bits (x_i, x_j, z_i, z_j), basis index 2*q_i + q_j.
Eigen::Matrix4cd pauli_matrix(int v) {
  const bool xi = v & 1, xj = (v >> 1) & 1, zi = (v >> 2) & 1, zj = (v >> 3) & 1;
  const Eigen::Matrix2cd pi = pauli_factor(xi, zi);
  const Eigen::Matrix2cd pj = pauli_factor(xj, zj);
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * r, 2 * c) = pi(r, c) * pj;
    }
  }
  return out;
}

}  // namespace

const Eigen::Matrix4cd& gate_unitary(const SymplecticGate& gate) {
  return unitary_table()[two_qubit_clifford_index(gate.mask)];
}

void verify_gate_table() {
  const auto& gates = two_qubit_clifford_table();
  Eigen::Matrix4cd paulis[16];
  for (int v = 1; v < 16; ++v) {
    paulis[v] = pauli_matrix(v);
  }
  for (const auto& g : gates) {
    const Eigen::Matrix4cd& u = gate_unitary(g);
    if ((u * u.adjoint() - Eigen::Matrix4cd::Identity()).norm() > kTolerance) {
      throw std::logic_error("verify_gate_table: non-unitary table entry");
    }
    for (int v = 1; v < 16; ++v) {
      const Eigen::Matrix4cd conj = u * paulis[v] * u.adjoint();
      const Eigen::Matrix4cd& expected = paulis[g.action[v]];
      // conj must equal a unit-phase multiple of expected.
      Amplitude phase(0.0, 0.0);
      for (int r = 0; r < 4 && std::abs(phase) < 0.5; ++r) {
        for (int c = 0; c < 4; ++c) {
          if (std::abs(expected(r, c)) > 0.5) {
            phase = conj(r, c) / expected(r, c);
            break;
          }
        }
      }
      if (std::abs(std::abs(phase) - 1.0) > kTolerance ||
          (conj - phase * expected).norm() > kTolerance) {
        throw std::logic_error("verify_gate_table: conjugation mismatch");
      }
    }
  }
}

Eigen::MatrixXcd reduced_density(const DenseState& s,
                                 const std::vector<int>& kept) {
  const int n = s.n_qubits();
  const int m = static_cast<int>(kept.size());
  std::vector<bool> used(n, false);
  for (const int q : kept) {
    if (q < 0 || q >= n || used[q]) {
      throw std::invalid_argument("reduced_density: bad qubit list");
    }
    used[q] = true;
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!used[q]) {
      rest.push_back(q);
    }
  }
  const std::uint64_t dim_a = std::uint64_t{1} << m;
  const std::uint64_t dim_b = std::uint64_t{1} << rest.size();

  auto scatter = [](std::uint64_t bits, const std::vector<int>& qubits) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      if ((bits >> k) & 1) {
        out |= std::uint64_t{1} << qubits[k];
      }
    }
    return out;
  };
  std::vector<std::uint64_t> idx_a(dim_a), idx_b(dim_b);
  for (std::uint64_t a = 0; a < dim_a; ++a) {
    idx_a[a] = scatter(a, kept);
  }
  for (std::uint64_t b = 0; b < dim_b; ++b) {
    idx_b[b] = scatter(b, rest);
  }

  const auto& amps = s.amplitudes();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_a, dim_a);
  for (std::uint64_t a1 = 0; a1 < dim_a; ++a1) {
    for (std::uint64_t a2 = 0; a2 <= a1; ++a2) {
      Amplitude sum(0.0, 0.0);
      for (std::uint64_t b = 0; b < dim_b; ++b) {
        sum += amps[idx_a[a1] | idx_b[b]] * std::conj(amps[idx_a[a2] | idx_b[b]]);
      }
      rho(a1, a2) = sum;
      rho(a2, a1) = std::conj(sum);
    }
  }
  return rho;
}

namespace {

// Absolute eigenvalues of a Hermitian matrix. The QR eigensolver can fail on
// exactly degenerate spectra (and BDCSVD can silently misresolve them), so
// fall back to one-sided Jacobi and verify the Frobenius norm either way.
Eigen::VectorXd hermitian_abs_eigenvalues(const Eigen::MatrixXcd& m) {
  const double frob2 = m.squaredNorm();
  const double tol = 1e-9 * std::max(1.0, frob2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success &&
      std::abs(solver.eigenvalues().squaredNorm() - frob2) <= tol) {
    return solver.eigenvalues().cwiseAbs();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  if (svd.info() != Eigen::Success ||
      std::abs(svd.singularValues().squaredNorm() - frob2) > tol) {
    throw std::runtime_error(
        "hermitian_abs_eigenvalues: eigenvalue and SVD passes both failed");
  }
  return svd.singularValues();
}

}  // namespace

double dense_entropy(const DenseState& s, const Region& region) {
  region.validate(s.n_qubits());
  if (region.empty() || region.size() == s.n_qubits()) {
    return 0.0;
  }
  const Eigen::MatrixXcd rho = reduced_density(s, region.sites());
  // rho is positive semidefinite, so |eigenvalues| are the eigenvalues.
  const Eigen::VectorXd lambdas = hermitian_abs_eigenvalues(rho);
  double entropy = 0.0;
  for (const double lambda : lambdas) {
    if (lambda > 1e-12) {
      entropy -= lambda * std::log2(lambda);
    }
  }
  return entropy;
}

double dense_mutual_information(const DenseState& s, const Region& a,
                                const Region& c) {
  const Region joined = Region::join(a, c);
  return dense_entropy(s, a) + dense_entropy(s, c) - dense_entropy(s, joined);
}

double dense_tripartite_mutual_information(const DenseState& s,
                                           const Region& a, const Region& b,
                                           const Region& c) {
  const Region ab = Region::join(a, b);
  const Region ac = Region::join(a, c);
  const Region bc = Region::join(b, c);
  const Region abc = Region::join(ab, c);
  return dense_entropy(s, a) + dense_entropy(s, b) + dense_entropy(s, c) -
         dense_entropy(s, ab) - dense_entropy(s, ac) - dense_entropy(s, bc) +
         dense_entropy(s, abc);
}

double dense_negativity(const DenseState& s, const Region& a,
                        const Region& b) {
  a.validate(s.n_qubits());
  b.validate(s.n_qubits());
  if (!a.disjoint_with(b)) {
    throw std::invalid_argument("dense_negativity: regions overlap");
  }
  if (a.empty() || b.empty()) {
    return 0.0;
  }
  std::vector<int> kept = a.sites();
  kept.insert(kept.end(), b.sites().begin(), b.sites().end());
  const Eigen::MatrixXcd rho = reduced_density(s, kept);

  // Partial transpose over the low |a| index bits.
  const int ka = a.size();
  const std::uint64_t dim = rho.rows();
  const std::uint64_t mask_a = (std::uint64_t{1} << ka) - 1;
  Eigen::MatrixXcd pt(dim, dim);
  for (std::uint64_t r = 0; r < dim; ++r) {
    for (std::uint64_t c = 0; c < dim; ++c) {
      const std::uint64_t r_swapped = (r & ~mask_a) | (c & mask_a);
      const std::uint64_t c_swapped = (c & ~mask_a) | (r & mask_a);
      pt(r, c) = rho(r_swapped, c_swapped);
    }
  }
  const Eigen::VectorXd lambdas = hermitian_abs_eigenvalues(pt);
  return std::log2(lambdas.sum());
}

}  // namespace hrcsim::dense
