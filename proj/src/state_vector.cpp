#include "qsearch/state_vector.hpp"

#include <algorithm>
#include <cmath>

namespace qsearch {

namespace {
constexpr double kUnitaryTol = 1e-12;
constexpr int kMaxQubits = 24;  // 2^24 amplitudes = 256 MiB; desk-scale guard

std::int64_t checked_dim(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw ArgumentError("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                        "], got " + std::to_string(n_qubits));
  return std::int64_t{1} << n_qubits;
}
}  // namespace

BasisSet::BasisSet(std::vector<BasisIndex> indices) : idx_(std::move(indices)) {
  std::sort(idx_.begin(), idx_.end());
  idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

bool BasisSet::contains(BasisIndex i) const {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

void BasisSet::validate_for(int n_qubits) const {
  const auto dim = static_cast<BasisIndex>(checked_dim(n_qubits));
  if (!idx_.empty() && idx_.back() >= dim)
    throw ArgumentError("basis index " + std::to_string(idx_.back()) +
                        " out of range for " + std::to_string(n_qubits) + " qubits");
}

bool BasisSet::intersects(const BasisSet& other) const {
  auto a = idx_.begin();
  auto b = other.idx_.begin();
  while (a != idx_.end() && b != other.idx_.end()) {
    if (*a == *b) return true;
    (*a < *b) ? ++a : ++b;
  }
  return false;
}

OneQubitUnitary::OneQubitUnitary(const Eigen::Matrix2cd& m) : m_(m) {
  if (!m.allFinite()) throw ArgumentError("gate entries must be finite");
  const Eigen::Matrix2cd delta = m.adjoint() * m - Eigen::Matrix2cd::Identity();
  if (delta.cwiseAbs().maxCoeff() > kUnitaryTol)
    throw ArgumentError("gate is not unitary within 1e-12");
}

OneQubitUnitary OneQubitUnitary::adjoint() const {
  return OneQubitUnitary(Eigen::Matrix2cd(m_.adjoint()));
}

OneQubitUnitary OneQubitUnitary::hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  m << s, s, s, -s;
  return OneQubitUnitary(m);
}

OneQubitUnitary OneQubitUnitary::identity() {
  return OneQubitUnitary(Eigen::Matrix2cd::Identity());
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amps)
    : n_(n_qubits), amps_(std::move(amps)) {
  if (amps_.size() != checked_dim(n_qubits))
    throw ArgumentError("amplitude count does not match qubit count");
}

StateVector basis_state(int n_qubits, BasisIndex i) {
  const std::int64_t dim = checked_dim(n_qubits);
  if (i >= static_cast<BasisIndex>(dim))
    throw ArgumentError("basis index " + std::to_string(i) + " out of range");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(dim);
  a(static_cast<Eigen::Index>(i)) = 1.0;
  return StateVector(n_qubits, std::move(a));
}

StateVector uniform_over(int n_qubits, const BasisSet& s) {
  if (s.empty()) throw ArgumentError("uniform_over requires a non-empty set");
  s.validate_for(n_qubits);
  const std::int64_t dim = checked_dim(n_qubits);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(dim);
  const double w = 1.0 / std::sqrt(static_cast<double>(s.size()));
  for (BasisIndex i : s) a(static_cast<Eigen::Index>(i)) = w;
  return StateVector(n_qubits, std::move(a));
}

void apply_one_qubit(StateVector& sv, const OneQubitUnitary& g, int q) {
  if (q < 0 || q >= sv.n_qubits())
    throw ArgumentError("qubit index " + std::to_string(q) + " out of range");
  const auto& m = g.matrix();
  const Amplitude g00 = m(0, 0), g01 = m(0, 1), g10 = m(1, 0), g11 = m(1, 1);
  auto& a = sv.amps();
  const std::int64_t dim = sv.dim();
  const std::int64_t stride = std::int64_t{1} << q;
  for (std::int64_t base = 0; base < dim; base += 2 * stride) {
    for (std::int64_t i = base; i < base + stride; ++i) {
      const Amplitude x = a(i);
      const Amplitude y = a(i + stride);
      a(i) = g00 * x + g01 * y;
      a(i + stride) = g10 * x + g11 * y;
    }
  }
}

void walsh_hadamard(StateVector& sv) {
  auto& a = sv.amps();
  const std::int64_t dim = sv.dim();
  const double s = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < sv.n_qubits(); ++q) {
    const std::int64_t stride = std::int64_t{1} << q;
    for (std::int64_t base = 0; base < dim; base += 2 * stride) {
      for (std::int64_t i = base; i < base + stride; ++i) {
        const Amplitude x = a(i);
        const Amplitude y = a(i + stride);
        a(i) = (x + y) * s;
        a(i + stride) = (x - y) * s;
      }
    }
  }
}

void selective_phase_inversion(StateVector& sv, const BasisSet& s) {
  s.validate_for(sv.n_qubits());
  auto& a = sv.amps();
  for (BasisIndex i : s) a(static_cast<Eigen::Index>(i)) = -a(static_cast<Eigen::Index>(i));
}

void global_negate(StateVector& sv) { sv.amps() = -sv.amps(); }

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits())
    throw ArgumentError("inner_product dimension mismatch");
  // Plain sequential loop: the reduction order is part of the contract.
  Amplitude acc = 0.0;
  for (std::int64_t i = 0; i < a.dim(); ++i)
    acc += std::conj(a.amps()(i)) * b.amps()(i);
  return acc;
}

double probability_of(const StateVector& sv, const BasisSet& s) {
  s.validate_for(sv.n_qubits());
  double acc = 0.0;
  for (BasisIndex i : s) acc += std::norm(sv.amp(i));
  return acc;
}

OneQubitUnitary rotation_gate(int k, int n) {
  if (k <= 0 || k >= n)
    throw ArgumentError("rotation_gate requires 0 < k < n, got k=" +
                        std::to_string(k) + ", n=" + std::to_string(n));
  const double frac = static_cast<double>(k) / static_cast<double>(n);
  const double c = std::sqrt(1.0 - frac);
  const double s = std::sqrt(frac);
  Eigen::Matrix2cd m;
  m << c, -s, s, c;
  return OneQubitUnitary(m);
}

void ancilla_oracle_inversion(StateVector& sv, const std::function<bool(BasisIndex)>& f) {
  if (sv.n_qubits() < 2)
    throw ArgumentError("ancilla_oracle_inversion needs an x-register plus the ancilla");
  auto& a = sv.amps();
  const std::int64_t half = sv.dim() / 2;  // ancilla = highest qubit
  for (std::int64_t x = 0; x < half; ++x)
    if (f(static_cast<BasisIndex>(x))) std::swap(a(x), a(x + half));
}

void ancilla_oracle_inversion(StateVector& sv, const BasisSet& s) {
  ancilla_oracle_inversion(sv, [&s](BasisIndex x) { return s.contains(x); });
}

bool all_finite(const StateVector& sv) { return sv.amps().allFinite(); }

double norm(const StateVector& sv) { return sv.amps().norm(); }

}  // namespace qsearch
