#include "qsearch/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "qsearch/amplify.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/problems.hpp"
#include "qsearch/program.hpp"
#include "qsearch/state_vector.hpp"

namespace qsearch {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// ---- independent dense references -------------------------------------------
// Built straight from the definitions, sharing no code with the library's
// apply or to_dense paths.

MatrixXcd ref_walsh(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      const int bits = std::popcount(static_cast<std::uint64_t>(i & j));
      m(i, j) = (bits % 2 == 0 ? scale : -scale);
    }
  return m;
}

MatrixXcd ref_one_qubit(const OneQubitUnitary& g, int q, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index mask = Eigen::Index{1} << q;
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      if ((i | mask) != (j | mask)) continue;  // other bits must agree
      m(i, j) = g.matrix()((i & mask) ? 1 : 0, (j & mask) ? 1 : 0);
    }
  return m;
}

MatrixXcd ref_flip(const BasisSet& s, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatrixXcd m = MatrixXcd::Identity(dim, dim);
  for (const BasisIndex i : s) m(static_cast<Eigen::Index>(i),
                                 static_cast<Eigen::Index>(i)) = -1.0;
  return m;
}

MatrixXcd ref_permutation(const std::vector<BasisIndex>& map) {
  const Eigen::Index dim = static_cast<Eigen::Index>(map.size());
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    m(static_cast<Eigen::Index>(map[static_cast<std::size_t>(j)]), j) = 1.0;
  return m;
}

MatrixXcd ref_program(const UnitaryProgram& p);

struct RefVisitor {
  int n;
  MatrixXcd operator()(const OneQubitOp& op) const {
    return ref_one_qubit(op.gate, op.qubit, n);
  }
  MatrixXcd operator()(const WalshHadamardOp&) const { return ref_walsh(n); }
  MatrixXcd operator()(const PhaseInvertOp& op) const {
    return ref_flip(op.states, n);
  }
  MatrixXcd operator()(const NegateOp&) const {
    const Eigen::Index dim = Eigen::Index{1} << n;
    return -MatrixXcd::Identity(dim, dim);
  }
  MatrixXcd operator()(const BasisPermutationOp& op) const {
    return ref_permutation(*op.map);
  }
  MatrixXcd operator()(const RepeatOp& op) const {
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatrixXcd body = ref_program(*op.body);
    MatrixXcd acc = MatrixXcd::Identity(dim, dim);
    for (std::int64_t r = 0; r < op.count; ++r) acc = body * acc;
    return acc;
  }
};

MatrixXcd ref_program(const UnitaryProgram& p) {
  const Eigen::Index dim = Eigen::Index{1} << p.n_qubits();
  MatrixXcd acc = MatrixXcd::Identity(dim, dim);
  for (const Primitive& prim : p.primitives())
    acc = std::visit(RefVisitor{p.n_qubits()}, prim) * acc;
  return acc;
}

// ---- randomized program draws ------------------------------------------------

UnitaryProgram random_program(std::mt19937_64& rng, int n, int length) {
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Primitive> prims;
  for (int i = 0; i < length; ++i) {
    switch (kind(rng)) {
      case 0:
        prims.push_back(OneQubitOp{OneQubitUnitary::hadamard(), qubit(rng)});
        break;
      case 1: {
        std::uniform_int_distribution<int> kdist(1, n == 1 ? 1 : n - 1);
        const int k = n == 1 ? 0 : kdist(rng);
        if (n == 1)
          prims.push_back(OneQubitOp{OneQubitUnitary::hadamard(), 0});
        else
          prims.push_back(OneQubitOp{rotation_gate(k, n), qubit(rng)});
        break;
      }
      case 2: {
        std::vector<BasisIndex> states;
        std::uniform_int_distribution<BasisIndex> idx(0, dim - 1);
        const int count = 1 + static_cast<int>(idx(rng) % 3);
        for (int c = 0; c < count; ++c) states.push_back(idx(rng));
        std::sort(states.begin(), states.end());
        states.erase(std::unique(states.begin(), states.end()), states.end());
        prims.push_back(PhaseInvertOp{BasisSet(std::move(states))});
        break;
      }
      case 3:
        prims.push_back(NegateOp{});
        break;
      case 4: {
        std::vector<BasisIndex> map(static_cast<std::size_t>(dim));
        std::iota(map.begin(), map.end(), BasisIndex{0});
        std::shuffle(map.begin(), map.end(), rng);
        prims.push_back(make_permutation(std::move(map)));
        break;
      }
      default:
        prims.push_back(WalshHadamardOp{});
        break;
    }
  }
  return UnitaryProgram(n, std::move(prims));
}

// ---- check harness ------------------------------------------------------------

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class Checker {
 public:
  void run(const char* module, const char* name,
           const std::function<std::string()>& body) {
    VerifyCheck c;
    c.module = module;
    c.name = name;
    try {
      c.detail = body();  // empty string means pass
      c.pass = c.detail.empty();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    checks_.push_back(std::move(c));
  }

  std::vector<VerifyCheck> take() { return std::move(checks_); }

 private:
  std::vector<VerifyCheck> checks_;
};

std::string expect_near(double got, double want, double tol,
                        const char* what) {
  if (std::abs(got - want) <= tol) return {};
  return std::string(what) + ": got " + fmt(got) + ", want " + fmt(want);
}

std::string expect_small(double got, double tol, const char* what) {
  if (got <= tol) return {};
  return std::string(what) + " = " + fmt(got) + " exceeds " + fmt(tol);
}

}  // namespace

std::vector<VerifyCheck> run_verify(std::uint64_t seed) {
  Checker ck;
  std::mt19937_64 rng(seed);

  ck.run("state_vector", "walsh_sign_rule", [&]() -> std::string {
    for (const int n : {1, 2, 3, 5}) {
      const MatrixXcd ref = ref_walsh(n);
      const Eigen::Index dim = Eigen::Index{1} << n;
      for (Eigen::Index j = 0; j < dim; ++j) {
        StateVector sv = basis_state(n, static_cast<BasisIndex>(j));
        walsh_hadamard(sv);
        const double err = (sv.amps() - ref.col(j)).norm();
        if (err > 1e-12)
          return "column " + std::to_string(j) + " deviates by " + fmt(err);
      }
    }
    return {};
  });

  ck.run("state_vector", "one_qubit_embedding", [&]() -> std::string {
    std::uniform_int_distribution<int> qd(0, 3);
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 4;
      const int q = qd(rng);
      const OneQubitUnitary g = trial % 2 ? rotation_gate(1, 3)
                                          : OneQubitUnitary::hadamard();
      const MatrixXcd ref = ref_one_qubit(g, q, n);
      const Eigen::Index dim = Eigen::Index{1} << n;
      for (Eigen::Index j = 0; j < dim; ++j) {
        StateVector sv = basis_state(n, static_cast<BasisIndex>(j));
        apply_one_qubit(sv, g, q);
        const double err = (sv.amps() - ref.col(j)).norm();
        if (err > 1e-12)
          return "qubit " + std::to_string(q) + " column " +
                 std::to_string(j) + " deviates by " + fmt(err);
      }
    }
    return {};
  });

  ck.run("program", "dense_matches_reference", [&]() -> std::string {
    for (int trial = 0; trial < 6; ++trial) {
      const int n = 2 + trial % 3;
      const UnitaryProgram p = random_program(rng, n, 5);
      const double err = (to_dense_matrix(p) - ref_program(p)).norm();
      if (err > 1e-10) return "trial " + std::to_string(trial) +
                              " dense deviates by " + fmt(err);
    }
    return {};
  });

  ck.run("program", "apply_matches_reference", [&]() -> std::string {
    for (int trial = 0; trial < 6; ++trial) {
      const int n = 2 + trial % 3;
      const UnitaryProgram p = random_program(rng, n, 6);
      const MatrixXcd ref = ref_program(p);
      const Eigen::Index dim = Eigen::Index{1} << n;
      for (Eigen::Index j = 0; j < dim; ++j) {
        StateVector sv = basis_state(n, static_cast<BasisIndex>(j));
        apply_program(sv, p);
        const double err = (sv.amps() - ref.col(j)).norm();
        if (err > 1e-10)
          return "trial " + std::to_string(trial) + " column " +
                 std::to_string(j) + " deviates by " + fmt(err);
      }
    }
    return {};
  });

  ck.run("program", "unitarity_and_inverse", [&]() -> std::string {
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 3;
      const UnitaryProgram p = random_program(rng, n, 7);
      const MatrixXcd u = ref_program(p);
      const Eigen::Index dim = u.rows();
      std::string err = expect_small(
          (u * u.adjoint() - MatrixXcd::Identity(dim, dim)).norm(), 1e-10,
          "||U U+ - I||");
      if (!err.empty()) return err;
      err = expect_small(
          (ref_program(invert_program(p)) - u.adjoint()).norm(), 1e-10,
          "||ref(invert(p)) - U+||");
      if (!err.empty()) return err;
    }
    return {};
  });

  ck.run("program", "dump_parse_round_trip", [&]() -> std::string {
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 2 + trial % 2;
      std::vector<Primitive> prims;
      UnitaryProgram body = random_program(rng, n, 3);
      prims.push_back(make_repeat(std::move(body), 2));
      UnitaryProgram tail = random_program(rng, n, 3);
      for (const Primitive& pr : tail.primitives()) prims.push_back(pr);
      const UnitaryProgram p(n, std::move(prims));
      const UnitaryProgram q = parse_program(dump_program(p));
      const double err = (ref_program(p) - ref_program(q)).norm();
      if (err > 1e-10) return "round trip deviates by " + fmt(err);
    }
    return {};
  });

  ck.run("amplify", "q_dense_identity", [&]() -> std::string {
    // build_q must equal -I_s U^-1 I_t U as a dense product.
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 3;
      const UnitaryProgram p = random_program(rng, n, 5);
      const BasisSet source = BasisSet::single(0);
      const BasisSet target = BasisSet::single(5);
      const AmplificationSpec spec(p, source, target);
      const MatrixXcd u = ref_program(p);
      const MatrixXcd q_ref = -ref_flip(source, n) * u.adjoint() *
                              ref_flip(target, n) * u;
      const double err = (ref_program(build_q(spec)) - q_ref).norm();
      if (err > 1e-10) return "Q deviates by " + fmt(err);
    }
    return {};
  });

  ck.run("amplify", "recurrence_matches_simulation", [&]() -> std::string {
    // Exhaustive search on 4 qubits: dense iteration, the closed 2x2
    // recurrence and run_amplification must agree on the success curve.
    const int n = 4;
    const UnitaryProgram w(n, {WalshHadamardOp{}});
    const BasisIndex t = 11;
    const AmplificationSpec spec(w, BasisSet::single(0), BasisSet::single(t));
    const MatrixXcd u = ref_program(w);
    const MatrixXcd q =
        -ref_flip(BasisSet::single(0), n) * u.adjoint() *
        ref_flip(BasisSet::single(t), n) * u;
    const Amplitude uts = u(static_cast<Eigen::Index>(t), 0);
    VectorXcd psi = VectorXcd::Zero(Eigen::Index{1} << n);
    psi(0) = 1.0;
    TwoDimState st{1.0, 0.0};
    for (std::int64_t eta = 0; eta <= 6; ++eta) {
      const VectorXcd out = u * psi;
      const double dense_success =
          std::norm(out(static_cast<Eigen::Index>(t)));
      const double rec_success = std::norm(st.a_t + st.a_s * uts);
      const double lib_success = run_amplification(spec, eta).success;
      std::string err = expect_near(rec_success, dense_success, 1e-12,
                                    "recurrence vs dense");
      if (!err.empty()) return "eta " + std::to_string(eta) + ": " + err;
      err = expect_near(lib_success, dense_success, 1e-12,
                        "run_amplification vs dense");
      if (!err.empty()) return "eta " + std::to_string(eta) + ": " + err;
      psi = q * psi;
      st = two_dim_step(st, uts);
    }
    return {};
  });

  ck.run("amplify", "source_preparation", [&]() -> std::string {
    for (const std::vector<BasisIndex>& raw :
         {std::vector<BasisIndex>{3}, std::vector<BasisIndex>{1, 6},
          std::vector<BasisIndex>{0, 2, 9, 12}}) {
      const int n = 4;
      const BasisSet s(raw);
      const UnitaryProgram prep = prepare_uniform_source(s, n);
      StateVector sv = basis_state(n, 0);
      apply_program(sv, prep);
      const StateVector want = uniform_over(n, s);
      const double err = (sv.amps() - want.amps()).norm();
      if (err > 1e-12)
        return "|S| = " + std::to_string(s.size()) + " deviates by " +
               fmt(err);
    }
    return {};
  });

  ck.run("problems", "inversion_about_average", [&]() -> std::string {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const int n = 5;
    const Eigen::Index dim = Eigen::Index{1} << n;
    VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = amp(rng);
    v /= v.norm();
    const StateVector x(n, v);
    inversion_about_average_check(x);  // throws on deviation
    return {};
  });

  ck.run("problems", "rotation_closed_form", [&]() -> std::string {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{
             {4, 1}, {6, 2}, {8, 4}, {10, 3}}) {
      UnitaryProgram u(n, {});
      std::vector<Primitive> prims;
      for (int q = 0; q < n; ++q)
        prims.push_back(OneQubitOp{rotation_gate(k, n), q});
      u = UnitaryProgram(n, std::move(prims));
      const BasisIndex t = (BasisIndex{1} << k) - 1;  // k low bits differ
      const double got = std::abs(amplitude_between(u, 0, t));
      const double fn = n;
      const double fk = k;
      const double want = std::pow(1.0 - fk / fn, (fn - fk) / 2.0) *
                          std::pow(fk / fn, fk / 2.0);
      const std::string err =
          expect_near(got, want, 1e-12, "rotation coupling");
      if (!err.empty())
        return "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
               err;
    }
    return {};
  });

  return ck.take();
}

}  // namespace qsearch
