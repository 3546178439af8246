#include "qsearch/amplify.hpp"

#include <algorithm>
#include <cmath>

namespace qsearch {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

StateVector make_prepared(const UnitaryProgram& u, const BasisSet& source,
                          const std::optional<UnitaryProgram>& prep) {
  if (prep) {
    StateVector sv = basis_state(u.n_qubits(), 0);
    apply_program(sv, *prep);
    return sv;
  }
  return uniform_over(u.n_qubits(), source);
}

}  // namespace

AmplificationSpec::AmplificationSpec(UnitaryProgram u, BasisSet source,
                                     BasisSet target, bool allow_overlap)
    : u_(std::move(u)),
      source_(std::move(source)),
      target_(std::move(target)),
      prep_(),
      prepared_(basis_state(u_.n_qubits(), 0)) {
  if (source_.empty() || target_.empty())
    throw ArgumentError("source and target sets must be non-empty");
  source_.validate_for(u_.n_qubits());
  target_.validate_for(u_.n_qubits());
  if (!allow_overlap && source_.intersects(target_))
    throw DegenerateSpecError(
        "source and target sets overlap; pass allow_overlap to permit this "
        "degenerate spec");
  if (is_power_of_two(source_.size()))
    prep_ = prepare_uniform_source(source_, u_.n_qubits());
  prepared_ = make_prepared(u_, source_, prep_);
}

std::vector<std::int64_t> IterationPlan::candidates() const {
  std::vector<std::int64_t> c{eta_floor, eta_ceil};
  if (uts_mag > 0.5) {
    c.push_back(0);
    c.push_back(1);
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

UnitaryProgram build_q(const AmplificationSpec& spec) {
  std::vector<Primitive> prims = spec.u().primitives();
  prims.push_back(PhaseInvertOp{spec.target()});
  const UnitaryProgram u_inv = invert_program(spec.u());
  prims.insert(prims.end(), u_inv.primitives().begin(), u_inv.primitives().end());
  prims.push_back(PhaseInvertOp{spec.source()});
  prims.push_back(NegateOp{});
  return UnitaryProgram(spec.n_qubits(), std::move(prims));
}

TwoDimState two_dim_step(const TwoDimState& st, Amplitude uts) {
  const double m2 = std::norm(uts);
  return TwoDimState{(1.0 - 4.0 * m2) * st.a_s - 2.0 * std::conj(uts) * st.a_t,
                     2.0 * uts * st.a_s + st.a_t};
}

IterationPlan iteration_count(double uts_mag) {
  if (!(uts_mag > 0.0))
    throw NoCouplingError("coupling magnitude must be positive; the target is "
                          "unreachable through U");
  if (uts_mag > 1.0) uts_mag = 1.0;
  const double raw = M_PI / (4.0 * uts_mag);
  IterationPlan plan;
  plan.uts_mag = uts_mag;
  plan.eta = static_cast<std::int64_t>(std::llround(raw));
  plan.eta_floor = static_cast<std::int64_t>(std::floor(raw));
  plan.eta_ceil = static_cast<std::int64_t>(std::ceil(raw));
  return plan;
}

UnitaryProgram prepare_uniform_source(const BasisSet& s, int n_qubits) {
  if (s.empty() || !is_power_of_two(s.size()))
    throw UnsupportedCardinalityError(
        "source preparation requires |S| to be a power of two, got " +
        std::to_string(s.size()));
  s.validate_for(n_qubits);
  int a = 0;
  while ((std::size_t{1} << a) < s.size()) ++a;
  std::vector<Primitive> prims;
  const OneQubitUnitary m = OneQubitUnitary::hadamard();
  for (int q = 0; q < a; ++q) prims.push_back(OneQubitOp{m, q});
  std::vector<std::pair<BasisIndex, BasisIndex>> pairs;
  for (std::size_t j = 0; j < s.size(); ++j)
    pairs.emplace_back(static_cast<BasisIndex>(j), s.indices()[j]);
  auto perm = complete_permutation(std::int64_t{1} << n_qubits, pairs);
  bool identity = true;
  for (std::size_t i = 0; i < perm.size() && identity; ++i)
    identity = (perm[i] == i);
  if (!identity) prims.push_back(make_permutation(std::move(perm)));
  return UnitaryProgram(n_qubits, std::move(prims));
}

RunResult run_amplification(const AmplificationSpec& spec, std::int64_t eta) {
  if (eta < 0) throw ArgumentError("eta must be >= 0");
  StateVector sv = basis_state(spec.n_qubits(), 0);
  std::int64_t ops = 0;
  if (spec.prep_program()) {
    apply_program(sv, *spec.prep_program());
    ops += primitive_op_count(*spec.prep_program());
  } else {
    sv = spec.prepared_source();
  }
  const UnitaryProgram q = build_q(spec);
  const std::int64_t q_ops = primitive_op_count(q);
  for (std::int64_t i = 0; i < eta; ++i) apply_program(sv, q);
  ops += eta * q_ops;
  apply_program(sv, spec.u());
  ops += primitive_op_count(spec.u());
  const double success = probability_of(sv, spec.target());
  return RunResult{std::move(sv), success, ops};
}

BestRun run_candidates(const AmplificationSpec& spec, const IterationPlan& plan) {
  BestRun best;
  bool first = true;
  for (std::int64_t eta : plan.candidates()) {
    const RunResult r = run_amplification(spec, eta);
    if (eta == plan.eta) best.success_at_predicted = r.success;
    if (first || r.success > best.success_at_best) {
      best.eta_best = eta;
      best.success_at_best = r.success;
      best.primitive_ops_best = r.primitive_ops;
      first = false;
    }
  }
  return best;
}

double effective_coupling(const AmplificationSpec& spec) {
  StateVector sv = spec.prepared_source();
  apply_program(sv, spec.u());
  const double m = std::sqrt(probability_of(sv, spec.target()));
  if (m < 1e-12)
    throw NoCouplingError("effective coupling below 1e-12: target unreachable");
  return m;
}

CouplingReport coupling_report(const AmplificationSpec& spec) {
  CouplingReport rep;
  StateVector sv = spec.prepared_source();
  apply_program(sv, spec.u());
  rep.value = std::sqrt(probability_of(sv, spec.target()));
  rep.complex_value = inner_product(uniform_over(spec.n_qubits(), spec.target()), sv);
  for (BasisIndex s : spec.source())
    for (BasisIndex t : spec.target())
      rep.pair_amplitudes.push_back(amplitude_between(spec.u(), s, t));
  for (std::size_t i = 0; i < rep.pair_amplitudes.size(); ++i)
    for (std::size_t j = i + 1; j < rep.pair_amplitudes.size(); ++j)
      rep.max_pairwise_deviation =
          std::max(rep.max_pairwise_deviation,
                   std::abs(rep.pair_amplitudes[i] - rep.pair_amplitudes[j]));
  rep.pairwise_symmetric = rep.max_pairwise_deviation <= 1e-9;
  if (rep.value < 1e-12)
    throw NoCouplingError("effective coupling below 1e-12: target unreachable");
  return rep;
}

double predicted_success(Amplitude u_eff, std::int64_t eta) {
  TwoDimState st{1.0, 0.0};
  for (std::int64_t i = 0; i < eta; ++i) st = two_dim_step(st, u_eff);
  return std::norm(st.a_t + st.a_s * u_eff);
}

}  // namespace qsearch
