#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qsearch/errors.hpp"

namespace qsearch {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;

// Sorted, duplicate-free set of basis indices. Used for phase inversions,
// source/target sets and probability queries.
class BasisSet {
 public:
  BasisSet() = default;
  explicit BasisSet(std::vector<BasisIndex> indices);
  static BasisSet single(BasisIndex i) { return BasisSet({i}); }

  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  bool contains(BasisIndex i) const;
  const std::vector<BasisIndex>& indices() const { return idx_; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

  // Throws ArgumentError if any member is >= 2^n_qubits.
  void validate_for(int n_qubits) const;

  bool intersects(const BasisSet& other) const;
  bool operator==(const BasisSet& other) const { return idx_ == other.idx_; }

 private:
  std::vector<BasisIndex> idx_;
};

// 2x2 unitary; unitarity is checked at construction (1e-12).
class OneQubitUnitary {
 public:
  explicit OneQubitUnitary(const Eigen::Matrix2cd& m);
  const Eigen::Matrix2cd& matrix() const { return m_; }
  OneQubitUnitary adjoint() const;

  // M = (1/sqrt(2)) [[1, 1], [1, -1]] — the one-bit superposition gate.
  static OneQubitUnitary hadamard();
  static OneQubitUnitary identity();

 private:
  Eigen::Matrix2cd m_;
};

// Dense state over n qubits: 2^n complex amplitudes. Qubit 0 is the
// least-significant bit of the basis index.
class StateVector {
 public:
  StateVector(int n_qubits, Eigen::VectorXcd amps);

  int n_qubits() const { return n_; }
  std::int64_t dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Eigen::VectorXcd& amps() { return amps_; }
  Amplitude amp(BasisIndex i) const { return amps_(static_cast<Eigen::Index>(i)); }

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

// |i> on n qubits.
StateVector basis_state(int n_qubits, BasisIndex i);

// Uniform superposition over S (1/sqrt(|S|) on each member). S non-empty.
StateVector uniform_over(int n_qubits, const BasisSet& s);

// In-place gate on qubit q: every amplitude pair differing only in bit q is
// multiplied by g.
void apply_one_qubit(StateVector& sv, const OneQubitUnitary& g, int q);

// In-place Walsh-Hadamard transform: amp'_y = 2^{-n/2} sum_x (-1)^{x.y} amp_x.
// Implemented as the n-pass butterfly, cost 2^n * n.
void walsh_hadamard(StateVector& sv);

// Negate the amplitudes of the listed basis states.
void selective_phase_inversion(StateVector& sv, const BasisSet& s);

// Negate every amplitude.
void global_negate(StateVector& sv);

// sum_i conj(a_i) * b_i, reduced in fixed index order.
Amplitude inner_product(const StateVector& a, const StateVector& b);

// sum over S of |amp_i|^2.
double probability_of(const StateVector& sv, const BasisSet& s);

// The per-qubit rotation for searching at Hamming distance k out of n:
// [[sqrt(1-k/n), -sqrt(k/n)], [sqrt(k/n), sqrt(1-k/n)]]. Requires 0 < k < n.
OneQubitUnitary rotation_gate(int k, int n);

// Oracle realized through an ancilla: |x, b> -> |x, b XOR f(x)>. The state
// covers n+1 qubits with the ancilla as the highest-index qubit; f sees the
// n-qubit x-register index. With the ancilla prepared as (|0>-|1>)/sqrt(2)
// this inverts the phase exactly where f(x) = 1.
void ancilla_oracle_inversion(StateVector& sv, const std::function<bool(BasisIndex)>& f);
void ancilla_oracle_inversion(StateVector& sv, const BasisSet& s);

// True when every amplitude is finite.
bool all_finite(const StateVector& sv);

double norm(const StateVector& sv);

}  // namespace qsearch
