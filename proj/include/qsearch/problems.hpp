#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qsearch/amplify.hpp"
#include "qsearch/record.hpp"

namespace qsearch {

// ---- problem instances ------------------------------------------------------

// Plain exhaustive search: find t among 2^n states through U = W.
struct Exhaustive {
  int n = 0;
  BasisIndex t = 0;
  BasisIndex s = 0;  // source state, arbitrary
};

// Search near a known word r: the target differs from r in exactly k bits.
struct Nearby {
  int n = 0;
  int k = 0;
  BasisIndex r = 0;
  BasisIndex t = 0;
};

// Arbitrary U with multiple sources and targets whose pairwise couplings all
// agree.
struct SymmetricMulti {
  UnitaryProgram u;
  BasisSet s;
  BasisSet t;
};

// beta targets under U = W, source fixed at the all-zeros state.
struct MultiTarget {
  int n = 0;
  BasisSet targets;
};

// alpha sources, all at Hamming distance exactly k from the single target.
struct MultiSource {
  int n = 0;
  int k = 0;
  BasisSet sources;
  BasisIndex t = 0;
};

// Composite V = (source preparation); U — handles unequal per-source
// amplitudes through the coherent sum.
struct CompositeV {
  int n = 0;
  BasisSet sources;  // |S| must be a power of two
  BasisIndex t = 0;
  UnitaryProgram u;
};

// Two-dimensional search: f(x,y) non-zero only at (t1,t2); helper g over x is
// non-zero on G (M values) including t1. Square: nx == ny.
struct TwoDim {
  int nx = 0;
  int ny = 0;
  BasisSet g;
  BasisIndex t1 = 0;
  BasisIndex t2 = 0;
};

// The nx != ny generalization.
struct Rectangular {
  int nx = 0;
  int ny = 0;
  BasisSet g;
  BasisIndex t1 = 0;
  BasisIndex t2 = 0;
};

// d-dimensional nested search, axis_qubits qubits per axis. levels[j] is the
// marked set over the joint space of the first j+1 axes (j = 0..d-2), each
// member's prefix lying in the level below, with a uniform per-prefix slice
// count; target is the full d-tuple, one coordinate per axis.
struct MultiDim {
  int d = 0;
  int axis_qubits = 0;
  std::vector<BasisSet> levels;
  std::vector<BasisIndex> target;
};

// beta joint targets with pairwise-distinct x coordinates, all inside G.
struct TwoDimMultiTarget {
  int nx = 0;
  int ny = 0;
  BasisSet g;
  std::vector<std::pair<BasisIndex, BasisIndex>> targets;
};

using ProblemInstance =
    std::variant<Exhaustive, Nearby, SymmetricMulti, MultiTarget, MultiSource,
                 CompositeV, TwoDim, Rectangular, MultiDim, TwoDimMultiTarget>;

// ---- drivers ----------------------------------------------------------------

ExperimentRecord solve_exhaustive(const Exhaustive& p);
ExperimentRecord solve_nearby(const Nearby& p);
ExperimentRecord solve_symmetric_multi(const SymmetricMulti& p);
ExperimentRecord solve_multi_target(const MultiTarget& p);
ExperimentRecord solve_multi_source(const MultiSource& p);
ExperimentRecord solve_composite(const CompositeV& p);
ExperimentRecord solve_two_dim(const TwoDim& p);
ExperimentRecord solve_two_dim_variants(const Rectangular& p);
ExperimentRecord solve_two_dim_variants(const MultiDim& p);
ExperimentRecord solve_two_dim_variants(const TwoDimMultiTarget& p);

// Dispatch on the variant.
ExperimentRecord solve(const ProblemInstance& p);

// Self-test identity: returns -W I_0 W x and asserts every component equals
// 2A - x_i (A the component mean) within 1e-10. Requires real amplitudes.
StateVector inversion_about_average_check(const StateVector& x);

// (C(n,k), the log-form estimate (n-k) log(n/(n-k)) + k log(n/k)).
// Guarded against overflow for n <= 62.
std::pair<std::int64_t, double> nearby_search_space(int n, int k);

// Deterministic worst-case classical query count for the variant.
std::int64_t classical_baseline(const ProblemInstance& p);

// The instance reduced to its amplification problem — shared by the drivers
// and the eta-sweep path.
struct BuiltProblem {
  AmplificationSpec spec;
  double coupling_predicted = 0.0;
  std::string problem_id;
  std::string parameters;
  std::string formula_name;
  double primitive_step_bound = 0.0;
  std::int64_t baseline = 0;
};
BuiltProblem build_problem(const ProblemInstance& p);

}  // namespace qsearch
