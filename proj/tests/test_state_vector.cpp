#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "oracle.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/state_vector.hpp"

using namespace qsearch;
using testoracle::ref_one_qubit;
using testoracle::ref_walsh;

TEST_CASE("basis set sorts, dedupes and answers membership") {
  const BasisSet s({7, 1, 4, 1, 7});
  CHECK(s.size() == 3);
  CHECK(s.indices() == std::vector<BasisIndex>{1, 4, 7});
  CHECK(s.contains(4));
  CHECK_FALSE(s.contains(2));
  CHECK(s.intersects(BasisSet({0, 7})));
  CHECK_FALSE(s.intersects(BasisSet({0, 2})));
  CHECK_NOTHROW(s.validate_for(3));
  CHECK_THROWS_AS(s.validate_for(2), ArgumentError);
}

TEST_CASE("one-qubit gates must be unitary") {
  Eigen::Matrix2cd bad;
  bad << 1.0, 0.0, 0.0, 2.0;
  CHECK_THROWS_AS(OneQubitUnitary{bad}, ArgumentError);

  const OneQubitUnitary h = OneQubitUnitary::hadamard();
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(h.matrix()(0, 0).real() - r) < 1e-15);
  CHECK(std::abs(h.matrix()(1, 1).real() + r) < 1e-15);
  const Eigen::Matrix2cd prod = h.matrix() * h.adjoint().matrix();
  CHECK((prod - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
}

TEST_CASE("rotation gate entries and bounds") {
  const OneQubitUnitary g = rotation_gate(1, 4);
  const double c = std::sqrt(0.75);
  const double s = std::sqrt(0.25);
  CHECK(g.matrix()(0, 0).real() == doctest::Approx(c).epsilon(1e-15));
  CHECK(g.matrix()(0, 1).real() == doctest::Approx(-s).epsilon(1e-15));
  CHECK(g.matrix()(1, 0).real() == doctest::Approx(s).epsilon(1e-15));
  CHECK(g.matrix()(1, 1).real() == doctest::Approx(c).epsilon(1e-15));
  CHECK_THROWS_AS(rotation_gate(0, 4), ArgumentError);
  CHECK_THROWS_AS(rotation_gate(4, 4), ArgumentError);
}

TEST_CASE("basis_state and uniform_over") {
  const StateVector sv = basis_state(3, 5);
  CHECK(sv.dim() == 8);
  CHECK(std::abs(sv.amp(5) - Amplitude{1.0, 0.0}) < 1e-15);
  CHECK(norm(sv) == doctest::Approx(1.0).epsilon(1e-15));

  const StateVector u = uniform_over(3, BasisSet({1, 2, 6, 7}));
  CHECK(std::abs(u.amp(2) - Amplitude{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(u.amp(0)) == 0.0);
  CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(basis_state(0, 0), ArgumentError);
  CHECK_THROWS_AS(basis_state(25, 0), ArgumentError);
  CHECK_THROWS_AS(basis_state(3, 8), ArgumentError);
}

TEST_CASE("apply_one_qubit matches the dense embedding on every column") {
  std::mt19937_64 rng(7);
  for (const int q : {0, 1, 3}) {
    const int n = 4;
    const OneQubitUnitary g = rotation_gate(2, 5);
    const Eigen::MatrixXcd ref = ref_one_qubit(g, q, n);
    for (BasisIndex j = 0; j < 16; ++j) {
      StateVector sv = basis_state(n, j);
      apply_one_qubit(sv, g, q);
      CHECK((sv.amps() - ref.col(static_cast<Eigen::Index>(j))).norm() <
            1e-14);
    }
  }
}

TEST_CASE("walsh_hadamard follows the sign rule and is self-inverse") {
  const int n = 4;
  const Eigen::MatrixXcd ref = ref_walsh(n);
  for (BasisIndex j = 0; j < 16; ++j) {
    StateVector sv = basis_state(n, j);
    walsh_hadamard(sv);
    CHECK((sv.amps() - ref.col(static_cast<Eigen::Index>(j))).norm() < 1e-14);
  }

  std::mt19937_64 rng(11);
  StateVector sv = testoracle::random_real_state(rng, n);
  const Eigen::VectorXcd before = sv.amps();
  walsh_hadamard(sv);
  walsh_hadamard(sv);
  CHECK((sv.amps() - before).norm() < 1e-13);
}

TEST_CASE("selective phase inversion flips exactly the listed states") {
  std::mt19937_64 rng(3);
  StateVector sv = testoracle::random_real_state(rng, 3);
  const Eigen::VectorXcd before = sv.amps();
  const BasisSet flips({0, 6});
  selective_phase_inversion(sv, flips);
  for (BasisIndex i = 0; i < 8; ++i) {
    const double sign = flips.contains(i) ? -1.0 : 1.0;
    CHECK(std::abs(sv.amp(i) - sign * before(static_cast<Eigen::Index>(i))) <
          1e-15);
  }

  global_negate(sv);
  for (BasisIndex i = 0; i < 8; ++i) {
    const double sign = flips.contains(i) ? 1.0 : -1.0;
    CHECK(std::abs(sv.amp(i) - sign * before(static_cast<Eigen::Index>(i))) <
          1e-15);
  }
}

TEST_CASE("inner_product and probability_of") {
  const StateVector a = uniform_over(2, BasisSet({0, 1, 2, 3}));
  const StateVector b = basis_state(2, 2);
  CHECK(std::abs(inner_product(a, b) - Amplitude{0.5, 0.0}) < 1e-15);
  CHECK(probability_of(a, BasisSet({1, 3})) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("ancilla oracle realizes phase inversion") {
  // x-register n=3 plus ancilla qubit 3 prepared as (|0>-|1>)/sqrt(2).
  const int n = 3;
  const BasisSet marked({2, 5});
  std::mt19937_64 rng(19);
  const StateVector x = testoracle::random_real_state(rng, n);

  Eigen::VectorXcd joint(16);
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < 8; ++i) {
    joint(i) = x.amps()(i) * r;
    joint(i + 8) = -x.amps()(i) * r;
  }
  StateVector sv(n + 1, joint);
  ancilla_oracle_inversion(sv, marked);

  // The x-register amplitudes must carry a minus sign exactly on marked x.
  for (BasisIndex i = 0; i < 8; ++i) {
    const double sign = marked.contains(i) ? -1.0 : 1.0;
    CHECK(std::abs(sv.amp(i) - sign * r * x.amp(i)) < 1e-15);
    CHECK(std::abs(sv.amp(i + 8) + sign * r * x.amp(i)) < 1e-15);
  }

  // Predicate overload agrees with the set overload.
  StateVector sv2(n + 1, joint);
  ancilla_oracle_inversion(
      sv2, [&](BasisIndex i) { return marked.contains(i); });
  CHECK((sv2.amps() - sv.amps()).norm() < 1e-15);
}

TEST_CASE("all_finite flags NaN amplitudes") {
  StateVector sv = basis_state(2, 0);
  CHECK(all_finite(sv));
  sv.amps()(1) = Amplitude{std::nan(""), 0.0};
  CHECK_FALSE(all_finite(sv));
}
