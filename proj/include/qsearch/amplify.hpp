#pragma once

#include <optional>
#include <vector>

#include "qsearch/program.hpp"

namespace qsearch {

// A full amplification problem: iterate Q = -I_S U^-1 I_T U from a uniform
// source over S, aiming at T.
class AmplificationSpec {
 public:
  // Throws DegenerateSpecError if S and T intersect and allow_overlap is
  // false. S and T must be non-empty and in range.
  AmplificationSpec(UnitaryProgram u, BasisSet source, BasisSet target,
                    bool allow_overlap = false);

  const UnitaryProgram& u() const { return u_; }
  const BasisSet& source() const { return source_; }
  const BasisSet& target() const { return target_; }
  int n_qubits() const { return u_.n_qubits(); }

  // Program preparing the uniform source from |0...0> (present when |S| is a
  // power of two; empty-source preparation for S = {0} is the empty program).
  const std::optional<UnitaryProgram>& prep_program() const { return prep_; }

  // The uniform superposition over S the run starts from. Produced by the
  // preparation program when one exists, else written directly.
  const StateVector& prepared_source() const { return prepared_; }

 private:
  UnitaryProgram u_;
  BasisSet source_;
  BasisSet target_;
  std::optional<UnitaryProgram> prep_;
  StateVector prepared_;
};

// Iteration plan around eta = round(pi / (4 m)). Floor and ceiling are kept
// as sweep candidates; when m > 1/2 the degenerate counts {0, 1} join them.
struct IterationPlan {
  double uts_mag = 0.0;
  std::int64_t eta = 0;
  std::int64_t eta_floor = 0;
  std::int64_t eta_ceil = 0;

  std::vector<std::int64_t> candidates() const;
};

// Coordinates of the iterate on the (nearly orthogonal) basis {v_s, U^-1 v_t}.
struct TwoDimState {
  Amplitude a_s;
  Amplitude a_t;
};

// [U, PhaseInvert(T), U^-1, PhaseInvert(S), Negate] — the rightmost factor of
// -I_S U^-1 I_T U applied first.
UnitaryProgram build_q(const AmplificationSpec& spec);

// One application of Q in the two-dimensional invariant subspace:
//   a_s' = (1 - 4|u|^2) a_s - 2 conj(u) a_t
//   a_t' = 2 u a_s + a_t
TwoDimState two_dim_step(const TwoDimState& st, Amplitude uts);

// Plan for coupling magnitude m in (0, 1]. Throws NoCouplingError at m <= 0.
IterationPlan iteration_count(double uts_mag);

// Program mapping |0...0> to the uniform superposition over S: M gates on the
// low log2|S| qubits, then a cycle-completed permutation sending j -> S[j].
// Requires |S| to be a power of two.
UnitaryProgram prepare_uniform_source(const BasisSet& s, int n_qubits);

struct RunResult {
  StateVector final_state;
  double success = 0.0;          // probability over T
  std::int64_t primitive_ops = 0;  // preparation + eta * Q + final U
};

// Prepare the source, apply Q eta times, then one final U.
RunResult run_amplification(const AmplificationSpec& spec, std::int64_t eta);

// Runs every candidate of the plan and keeps the best.
struct BestRun {
  std::int64_t eta_best = 0;
  double success_at_best = 0.0;
  double success_at_predicted = 0.0;  // at plan.eta
  std::int64_t primitive_ops_best = 0;
};
BestRun run_candidates(const AmplificationSpec& spec, const IterationPlan& plan);

// sqrt(probability over T) of U applied to the prepared source — the
// effective |U_ts| driving the iterate. Throws NoCouplingError below 1e-12.
double effective_coupling(const AmplificationSpec& spec);

// effective_coupling plus the pairwise amplitude survey over S x T.
struct CouplingReport {
  double value = 0.0;                 // the effective coupling
  Amplitude complex_value{0.0, 0.0};  // <uniform T | U | prepared source>
  double max_pairwise_deviation = 0.0;
  bool pairwise_symmetric = false;  // all U_{t s} equal within 1e-9
  std::vector<Amplitude> pair_amplitudes;  // row-major over S x T
};
CouplingReport coupling_report(const AmplificationSpec& spec);

// Success predicted by the two-dimensional recurrence: eta steps from (1, 0)
// with coupling u, then the final-U mapping |a_t + a_s u|^2. Exact for a
// single pair and for symmetric multi-state specs (u = the effective complex
// coupling).
double predicted_success(Amplitude u_eff, std::int64_t eta);

}  // namespace qsearch
