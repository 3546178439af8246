#include "qsearch/problems.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qsearch/errors.hpp"

namespace qsearch {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               t0)
      .count();
}

bool is_power_of_two(std::size_t v) { return v > 0 && (v & (v - 1)) == 0; }

int hamming(BasisIndex a, BasisIndex b) {
  return std::popcount(static_cast<std::uint64_t>(a ^ b));
}

std::string join_indices(const std::vector<BasisIndex>& v, char sep = '+') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string set_str(const BasisSet& s) { return join_indices(s.indices()); }

// Hadamard on each qubit of [q0, q0 + count): a register-local W.
std::vector<Primitive> local_w(int q0, int count) {
  std::vector<Primitive> prims;
  prims.reserve(static_cast<std::size_t>(count));
  for (int q = 0; q < count; ++q)
    prims.push_back(OneQubitOp{OneQubitUnitary::hadamard(), q0 + q});
  return prims;
}

void append(std::vector<Primitive>& dst, std::vector<Primitive> src) {
  for (auto& p : src) dst.push_back(std::move(p));
}

// One local amplification iterate acting on the register [q0, q0 + count) of an
// n-qubit joint space: -I_src W I_marked W with register-local W.
UnitaryProgram stage_iterate(int n, int q0, int count, const BasisSet& marked,
                             const BasisSet& src) {
  std::vector<Primitive> prims;
  append(prims, local_w(q0, count));
  prims.push_back(PhaseInvertOp{marked});
  append(prims, local_w(q0, count));
  prims.push_back(PhaseInvertOp{src});
  prims.push_back(NegateOp{});
  return UnitaryProgram(n, std::move(prims));
}

// Repeat(iterate, eta) followed by the register-local W.
UnitaryProgram stage_program(int n, const UnitaryProgram& iterate,
                             std::int64_t eta, int q0, int count) {
  std::vector<Primitive> prims;
  if (eta > 0) prims.push_back(make_repeat(iterate, eta));
  append(prims, local_w(q0, count));
  return UnitaryProgram(n, std::move(prims));
}

struct StageChoice {
  std::int64_t eta = 0;
  double measured = 0.0;  // probability over the stage's marked set
};

// Pick the repetition count for one inner stage by simulating
// prefix; Repeat(iterate, c); W over each candidate c and measuring the
// marked-set probability. Ties keep the smaller count.
StageChoice choose_stage_eta(const UnitaryProgram& prefix,
                             const UnitaryProgram& iterate, int q0, int count,
                             double coupling, const BasisSet& marked) {
  const int n = iterate.n_qubits();
  const IterationPlan plan = iteration_count(coupling);
  StageChoice best;
  double best_p = -1.0;
  for (const std::int64_t c : plan.candidates()) {
    StateVector sv = basis_state(n, 0);
    apply_program(sv, prefix);
    apply_program(sv, stage_program(n, iterate, c, q0, count));
    const double p = probability_of(sv, marked);
    if (p > best_p + 1e-12) {
      best_p = p;
      best = StageChoice{c, p};
    }
  }
  return best;
}

double stage_factor(double coupling, std::int64_t eta) {
  const double th = std::asin(std::min(coupling, 1.0));
  return std::sin((2.0 * static_cast<double>(eta) + 1.0) * th);
}

BasisSet range_set(BasisIndex count) {
  std::vector<BasisIndex> v(static_cast<std::size_t>(count));
  for (BasisIndex i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = i;
  return BasisSet(std::move(v));
}

// |U_{t r}| for the k-of-n rotation program, in closed form.
double rotation_coupling(int n, int k) {
  const double fn = static_cast<double>(n);
  const double fk = static_cast<double>(k);
  return std::pow(1.0 - fk / fn, (fn - fk) / 2.0) * std::pow(fk / fn, fk / 2.0);
}

// The driver-independent tail: measure the coupling, plan the iteration
// count, run every candidate count and fill the record.
ExperimentRecord finish(const BuiltProblem& bp, bool require_symmetric,
                        Clock::time_point t0) {
  const CouplingReport report = coupling_report(bp.spec);
  if (require_symmetric && !report.pairwise_symmetric)
    throw AsymmetricCouplingError(
        "pairwise couplings are not symmetric (max deviation " +
        std::to_string(report.max_pairwise_deviation) +
        "); unequal or mixed-sign amplitudes need the composite-V driver");
  const IterationPlan plan = iteration_count(report.value);
  const BestRun best = run_candidates(bp.spec, plan);

  ExperimentRecord rec;
  rec.problem_id = bp.problem_id;
  rec.parameters = bp.parameters;
  rec.formula_name = bp.formula_name;
  rec.coupling_predicted = bp.coupling_predicted;
  rec.coupling_measured = report.value;
  rec.eta_predicted = plan.eta;
  rec.eta_best = best.eta_best;
  rec.success_at_predicted = best.success_at_predicted;
  rec.success_at_best = best.success_at_best;
  rec.primitive_ops = best.primitive_ops_best;
  rec.primitive_step_bound = bp.primitive_step_bound;
  rec.classical_baseline = bp.baseline;
  rec.wall_time_ms = elapsed_ms(t0);
  return rec;
}

// ---- builders ---------------------------------------------------------------

BuiltProblem build_exhaustive(const Exhaustive& p) {
  if (p.n < 1) throw ArgumentError("exhaustive: n must be >= 1");
  const double dimension = std::ldexp(1.0, p.n);
  UnitaryProgram u(p.n, {WalshHadamardOp{}});
  BuiltProblem bp{
      AmplificationSpec(std::move(u), BasisSet::single(p.s),
                        BasisSet::single(p.t)),
      1.0 / std::sqrt(dimension),
      "exhaustive",
      "n=" + std::to_string(p.n) + ";s=" + std::to_string(p.s) +
          ";t=" + std::to_string(p.t),
      "sqrt_n",
      std::sqrt(dimension),
      static_cast<std::int64_t>(dimension)};
  return bp;
}

UnitaryProgram rotation_program(int n, int k) {
  std::vector<Primitive> prims;
  prims.reserve(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q)
    prims.push_back(OneQubitOp{rotation_gate(k, n), q});
  return UnitaryProgram(n, std::move(prims));
}

BuiltProblem build_nearby(const Nearby& p) {
  if (hamming(p.r, p.t) != p.k)
    throw ArgumentError(
        "nearby: target must differ from the reference word in exactly k "
        "bits");
  const auto [space, stirling_log] = nearby_search_space(p.n, p.k);
  UnitaryProgram u = rotation_program(p.n, p.k);
  const double coupling = rotation_coupling(p.n, p.k);

  // The rotation program must reproduce the closed form exactly.
  const Amplitude direct = amplitude_between(u, p.r, p.t);
  if (std::abs(std::abs(direct) - coupling) > 1e-12)
    throw FrameworkBugError("nearby: rotation coupling mismatch");

  BuiltProblem bp{
      AmplificationSpec(std::move(u), BasisSet::single(p.r),
                        BasisSet::single(p.t)),
      coupling,
      "nearby",
      "n=" + std::to_string(p.n) + ";k=" + std::to_string(p.k) +
          ";r=" + std::to_string(p.r) + ";t=" + std::to_string(p.t),
      "sqrt_binomial",
      std::exp(0.5 * stirling_log),
      space};
  return bp;
}

BuiltProblem build_symmetric_multi(const SymmetricMulti& p) {
  const int n = p.u.n_qubits();
  if (!is_power_of_two(p.s.size()))
    throw UnsupportedCardinalityError(
        "symmetric_multi: |S| must be a power of two for gate-level source "
        "preparation, got " +
        std::to_string(p.s.size()));
  const double alpha = static_cast<double>(p.s.size());
  const double beta = static_cast<double>(p.t.size());
  AmplificationSpec spec(p.u, p.s, p.t);

  // Predicted from one pair amplitude; finish() verifies the pairs agree.
  const Amplitude pair0 =
      amplitude_between(p.u, p.s.indices().front(), p.t.indices().front());
  const double coupling = std::sqrt(alpha * beta) * std::abs(pair0);
  const double dimension = std::ldexp(1.0, n);

  BuiltProblem bp{std::move(spec),
                  coupling,
                  "symmetric_multi",
                  "n=" + std::to_string(n) + ";s=" + set_str(p.s) +
                      ";t=" + set_str(p.t) +
                      ";u_ops=" + std::to_string(primitive_op_count(p.u)),
                  "sqrt_alpha_beta_pairs",
                  coupling > 0.0 ? 1.0 / coupling : 0.0,
                  static_cast<std::int64_t>(
                      std::ceil(dimension / beta))};
  return bp;
}

BuiltProblem build_multi_target(const MultiTarget& p) {
  if (p.n < 2) throw ArgumentError("multi_target: n must be >= 2");
  const double dimension = std::ldexp(1.0, p.n);
  const double beta = static_cast<double>(p.targets.size());
  if (p.targets.empty() || beta > dimension / 4.0)
    throw ArgumentError("multi_target: need 1 <= |T| <= N/4");
  UnitaryProgram u(p.n, {WalshHadamardOp{}});
  BuiltProblem bp{AmplificationSpec(std::move(u), BasisSet::single(0),
                                    p.targets),
                  std::sqrt(beta / dimension),
                  "multi_target",
                  "n=" + std::to_string(p.n) + ";t=" + set_str(p.targets),
                  "sqrt_n_over_beta",
                  std::sqrt(dimension / beta),
                  static_cast<std::int64_t>(std::ceil(dimension / beta))};
  return bp;
}

BuiltProblem build_multi_source(const MultiSource& p) {
  if (!is_power_of_two(p.sources.size()))
    throw UnsupportedCardinalityError(
        "multi_source: |S| must be a power of two for gate-level source "
        "preparation, got " +
        std::to_string(p.sources.size()));
  for (const BasisIndex s : p.sources)
    if (hamming(s, p.t) != p.k)
      throw ArgumentError(
          "multi_source: every source must differ from the target in exactly "
          "k bits (violated by " +
          std::to_string(s) + ")");
  const auto [space, stirling_log] = nearby_search_space(p.n, p.k);
  UnitaryProgram u = rotation_program(p.n, p.k);

  // The per-source amplitudes are real; mixed signs cancel in the coherent
  // sum and break the symmetric analysis.
  bool seen_pos = false;
  bool seen_neg = false;
  for (const BasisIndex s : p.sources) {
    const double a = amplitude_between(u, s, p.t).real();
    (a >= 0.0 ? seen_pos : seen_neg) = true;
  }
  if (seen_pos && seen_neg)
    throw AsymmetricCouplingError(
        "multi_source: sources couple to the target with mixed signs; the "
        "composite-V driver handles the coherent sum");

  const double alpha = static_cast<double>(p.sources.size());
  BuiltProblem bp{
      AmplificationSpec(std::move(u), p.sources, BasisSet::single(p.t)),
      std::sqrt(alpha) * rotation_coupling(p.n, p.k),
      "multi_source",
      "n=" + std::to_string(p.n) + ";k=" + std::to_string(p.k) +
          ";s=" + set_str(p.sources) + ";t=" + std::to_string(p.t),
      "sqrt_binomial_over_alpha",
      std::exp(0.5 * stirling_log) / std::sqrt(alpha),
      space};
  return bp;
}

BuiltProblem build_composite(const CompositeV& p) {
  const int n = p.u.n_qubits();
  if (!is_power_of_two(p.sources.size()))
    throw UnsupportedCardinalityError(
        "composite_v: |S| must be a power of two for gate-level source "
        "preparation, got " +
        std::to_string(p.sources.size()));
  p.sources.validate_for(n);
  const double alpha = static_cast<double>(p.sources.size());

  Amplitude sum{0.0, 0.0};
  for (const BasisIndex s : p.sources) sum += amplitude_between(p.u, s, p.t);
  if (std::abs(sum) < 1e-12)
    throw DestructiveInterferenceError(
        "composite_v: the coherent sum of source-target couplings vanishes; "
        "the target is unreachable from the uniform source state");

  UnitaryProgram v = compose(prepare_uniform_source(p.sources, n), p.u);

  // <t| V |0...0> must equal the coherent sum over sources divided by
  // sqrt(alpha); anything else is a preparation bug.
  const Amplitude direct = amplitude_between(v, 0, p.t);
  if (std::abs(direct - sum / std::sqrt(alpha)) > 1e-9)
    throw FrameworkBugError("composite_v: source preparation identity failed");

  BuiltProblem bp{
      AmplificationSpec(std::move(v), BasisSet::single(0),
                        BasisSet::single(p.t)),
      std::abs(sum) / std::sqrt(alpha),
      "composite_v",
      "n=" + std::to_string(n) + ";s=" + set_str(p.sources) +
          ";t=" + std::to_string(p.t) +
          ";u_ops=" + std::to_string(primitive_op_count(p.u)),
      "inv_u_sqrt_alpha",
      std::sqrt(alpha) / std::abs(sum),
      static_cast<std::int64_t>(std::ldexp(1.0, n))};
  return bp;
}

// Shared construction for the two-register family. Targets are joint
// (x, y) points with pairwise distinct x coordinates inside G.
struct TwoRegisterParts {
  UnitaryProgram u;
  double coupling_closed = 0.0;
};

TwoRegisterParts build_two_register(int nx, int ny, const BasisSet& g,
                                    const std::vector<std::pair<BasisIndex,
                                                                BasisIndex>>&
                                        targets,
                                    const char* who) {
  const std::string name(who);
  if (nx < 1 || ny < 1)
    throw ArgumentError(name + ": both registers need at least one qubit");
  const int n = nx + ny;
  const BasisIndex dim_x = BasisIndex{1} << nx;
  const BasisIndex dim_y = BasisIndex{1} << ny;
  g.validate_for(nx);
  if (g.empty()) throw ArgumentError(name + ": G must be non-empty");
  if (targets.empty()) throw ArgumentError(name + ": need at least one target");

  std::vector<BasisIndex> xs;
  std::vector<BasisIndex> joint;
  for (const auto& [tx, ty] : targets) {
    if (!g.contains(tx))
      throw ArgumentError(name + ": target x coordinate " +
                          std::to_string(tx) + " is not in G");
    if (ty >= dim_y)
      throw ArgumentError(name + ": target y coordinate out of range");
    xs.push_back(tx);
    joint.push_back(tx | (ty << nx));
  }
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw RefusalError(
        name +
        ": targets sharing an x column have no known nested construction; "
        "refusing rather than guessing");

  const double m = static_cast<double>(g.size());
  const double beta = static_cast<double>(targets.size());
  const BasisSet marked_x = g;  // y = 0 plane: joint index == x index
  const BasisSet marked_joint{std::move(joint)};

  // Stage 1: amplify the x register onto G.
  const UnitaryProgram q_x =
      stage_iterate(n, 0, nx, marked_x, BasisSet::single(0));
  const double coupling_x = std::sqrt(m / static_cast<double>(dim_x));
  const UnitaryProgram empty_prefix(n);
  const StageChoice cx =
      choose_stage_eta(empty_prefix, q_x, 0, nx, coupling_x, marked_x);
  const UnitaryProgram u1 = stage_program(n, q_x, cx.eta, 0, nx);

  // Stage 2: per-x-slice amplification of the y register onto the target
  // rows. The source inversion acts on the whole y = 0 plane so each slice
  // sees its own amplification iterate.
  const UnitaryProgram q_y =
      stage_iterate(n, nx, ny, marked_joint, range_set(dim_x));
  const double coupling_y = 1.0 / std::sqrt(static_cast<double>(dim_y));
  const StageChoice cy =
      choose_stage_eta(u1, q_y, nx, ny, coupling_y, marked_joint);
  const UnitaryProgram u2 = stage_program(n, q_y, cy.eta, nx, ny);

  TwoRegisterParts parts{compose(u1, u2), 0.0};
  parts.coupling_closed = std::sqrt(beta) * stage_factor(coupling_x, cx.eta) *
                          stage_factor(coupling_y, cy.eta) / std::sqrt(m);
  return parts;
}

BuiltProblem build_two_dim(const TwoDim& p) {
  if (p.nx != p.ny)
    throw ArgumentError(
        "two_dim: registers must be square (nx == ny); use the rectangular "
        "driver otherwise");
  TwoRegisterParts parts =
      build_two_register(p.nx, p.ny, p.g, {{p.t1, p.t2}}, "two_dim");
  const double dim_x = std::ldexp(1.0, p.nx);
  const double m = static_cast<double>(p.g.size());
  const BasisIndex t_joint = p.t1 | (p.t2 << p.nx);
  BuiltProblem bp{AmplificationSpec(std::move(parts.u), BasisSet::single(0),
                                    BasisSet::single(t_joint)),
                  parts.coupling_closed,
                  "two_dim",
                  "nx=" + std::to_string(p.nx) + ";ny=" + std::to_string(p.ny) +
                      ";g=" + set_str(p.g) + ";t1=" + std::to_string(p.t1) +
                      ";t2=" + std::to_string(p.t2),
                  "sqrt_nm",
                  std::sqrt(dim_x * m),
                  static_cast<std::int64_t>(dim_x * m)};
  return bp;
}

BuiltProblem build_rectangular(const Rectangular& p) {
  TwoRegisterParts parts =
      build_two_register(p.nx, p.ny, p.g, {{p.t1, p.t2}}, "rectangular");
  const double dim_x = std::ldexp(1.0, p.nx);
  const double dim_y = std::ldexp(1.0, p.ny);
  const double m = static_cast<double>(p.g.size());
  const BasisIndex t_joint = p.t1 | (p.t2 << p.nx);
  BuiltProblem bp{AmplificationSpec(std::move(parts.u), BasisSet::single(0),
                                    BasisSet::single(t_joint)),
                  parts.coupling_closed,
                  "rectangular",
                  "nx=" + std::to_string(p.nx) + ";ny=" + std::to_string(p.ny) +
                      ";g=" + set_str(p.g) + ";t1=" + std::to_string(p.t1) +
                      ";t2=" + std::to_string(p.t2),
                  "sqrt_n1_plus_sqrt_n2m",
                  std::sqrt(dim_x) + std::sqrt(dim_y * m),
                  static_cast<std::int64_t>(dim_x + dim_y * m)};
  return bp;
}

BuiltProblem build_two_dim_multi(const TwoDimMultiTarget& p) {
  if (p.nx != p.ny)
    throw ArgumentError(
        "two_dim_multi_target: registers must be square (nx == ny)");
  TwoRegisterParts parts = build_two_register(p.nx, p.ny, p.g, p.targets,
                                              "two_dim_multi_target");
  const double dim_x = std::ldexp(1.0, p.nx);
  const double m = static_cast<double>(p.g.size());
  const double beta = static_cast<double>(p.targets.size());

  auto sorted = p.targets;
  std::sort(sorted.begin(), sorted.end());
  std::string tstr;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) tstr += '+';
    tstr += std::to_string(sorted[i].first) + ':' +
            std::to_string(sorted[i].second);
  }
  std::vector<BasisIndex> joint;
  for (const auto& [tx, ty] : sorted) joint.push_back(tx | (ty << p.nx));

  BuiltProblem bp{
      AmplificationSpec(std::move(parts.u), BasisSet::single(0),
                        BasisSet(std::move(joint))),
      parts.coupling_closed,
      "two_dim_multi_target",
      "nx=" + std::to_string(p.nx) + ";ny=" + std::to_string(p.ny) +
          ";g=" + set_str(p.g) + ";targets=" + tstr,
      "sqrt_nm_over_beta",
      std::sqrt(dim_x * m / beta),
      static_cast<std::int64_t>(std::ceil(dim_x * m / beta))};
  return bp;
}

BuiltProblem build_multi_dim(const MultiDim& p) {
  if (p.d < 2) throw ArgumentError("multi_dim: need at least two axes");
  if (p.axis_qubits < 1)
    throw ArgumentError("multi_dim: axis_qubits must be >= 1");
  if (p.d * p.axis_qubits > 14)
    throw RefusalError(
        "multi_dim: d * axis_qubits > 14 exceeds the desk-scale simulation "
        "budget; refusing to allocate");
  if (static_cast<int>(p.levels.size()) != p.d - 1)
    throw ArgumentError("multi_dim: need exactly d - 1 level sets");
  if (static_cast<int>(p.target.size()) != p.d)
    throw ArgumentError("multi_dim: target needs one coordinate per axis");

  const int aq = p.axis_qubits;
  const int n = p.d * aq;
  const BasisIndex axis_dim = BasisIndex{1} << aq;
  for (const BasisIndex c : p.target)
    if (c >= axis_dim)
      throw ArgumentError("multi_dim: target coordinate out of range");

  // levels[j] lives on the joint space of the first j+1 axes. Validate the
  // prefix chain and the uniform per-prefix slice count m_{j+1}.
  std::vector<std::int64_t> slice_counts;  // m_1 .. m_{d-1}
  for (int j = 0; j < p.d - 1; ++j) {
    p.levels[static_cast<std::size_t>(j)].validate_for((j + 1) * aq);
    if (p.levels[static_cast<std::size_t>(j)].empty())
      throw ArgumentError("multi_dim: level sets must be non-empty");
    if (j == 0) {
      slice_counts.push_back(
          static_cast<std::int64_t>(p.levels[0].size()));
      continue;
    }
    const BasisIndex prefix_mask = (BasisIndex{1} << (j * aq)) - 1;
    const BasisSet& below = p.levels[static_cast<std::size_t>(j - 1)];
    std::vector<std::int64_t> counts(below.size(), 0);
    for (const BasisIndex member : p.levels[static_cast<std::size_t>(j)]) {
      const BasisIndex prefix = member & prefix_mask;
      const auto& idx = below.indices();
      const auto it = std::lower_bound(idx.begin(), idx.end(), prefix);
      if (it == idx.end() || *it != prefix)
        throw ArgumentError(
            "multi_dim: level member " + std::to_string(member) +
            " has a prefix outside the level below");
      ++counts[static_cast<std::size_t>(it - idx.begin())];
    }
    for (const std::int64_t c : counts)
      if (c != counts.front())
        throw UnsupportedCardinalityError(
            "multi_dim: per-prefix slice counts must be uniform, found " +
            std::to_string(counts.front()) + " and " + std::to_string(c));
    slice_counts.push_back(counts.front());
  }

  // The target's prefixes must sit in every level.
  BasisIndex t_joint = 0;
  for (int j = 0; j < p.d; ++j)
    t_joint |= p.target[static_cast<std::size_t>(j)] << (j * aq);
  for (int j = 0; j < p.d - 1; ++j) {
    const BasisIndex prefix = t_joint & ((BasisIndex{1} << ((j + 1) * aq)) - 1);
    if (!p.levels[static_cast<std::size_t>(j)].contains(prefix))
      throw ArgumentError(
          "multi_dim: the target's prefix is outside level " +
          std::to_string(j));
  }

  // Stage k amplifies axis k onto the level-k marked set, slice by slice
  // over the prefix plane.
  UnitaryProgram prefix_prog(n);
  double closed = 1.0;
  double m_product = 1.0;
  for (int k = 1; k <= p.d; ++k) {
    const bool last = k == p.d;
    const BasisSet marked = last ? BasisSet::single(t_joint)
                                 : p.levels[static_cast<std::size_t>(k - 1)];
    const std::int64_t per_slice =
        last ? 1 : slice_counts[static_cast<std::size_t>(k - 1)];
    const double coupling =
        std::sqrt(static_cast<double>(per_slice) /
                  static_cast<double>(axis_dim));
    const BasisSet src_plane = range_set(BasisIndex{1} << ((k - 1) * aq));
    const UnitaryProgram q_k =
        stage_iterate(n, (k - 1) * aq, aq, marked, src_plane);
    const StageChoice ck =
        choose_stage_eta(prefix_prog, q_k, (k - 1) * aq, aq, coupling, marked);
    prefix_prog =
        compose(prefix_prog, stage_program(n, q_k, ck.eta, (k - 1) * aq, aq));
    closed *= stage_factor(coupling, ck.eta);
    if (!last) m_product *= static_cast<double>(per_slice);
  }
  closed /= std::sqrt(m_product);

  std::string levels_str;
  for (std::size_t j = 0; j < p.levels.size(); ++j) {
    if (j) levels_str += '/';
    levels_str += set_str(p.levels[j]);
  }

  BuiltProblem bp{
      AmplificationSpec(std::move(prefix_prog), BasisSet::single(0),
                        BasisSet::single(t_joint)),
      closed,
      "multi_dim",
      "d=" + std::to_string(p.d) + ";axis_qubits=" + std::to_string(aq) +
          ";levels=" + levels_str + ";target=" + join_indices(p.target),
      "sqrt_n_m1_md",
      std::sqrt(static_cast<double>(axis_dim) * m_product),
      static_cast<std::int64_t>(static_cast<double>(axis_dim) * m_product)};
  return bp;
}

}  // namespace

// ---- public drivers ---------------------------------------------------------

ExperimentRecord solve_exhaustive(const Exhaustive& p) {
  const auto t0 = Clock::now();
  return finish(build_exhaustive(p), false, t0);
}

ExperimentRecord solve_nearby(const Nearby& p) {
  const auto t0 = Clock::now();
  return finish(build_nearby(p), false, t0);
}

ExperimentRecord solve_symmetric_multi(const SymmetricMulti& p) {
  const auto t0 = Clock::now();
  return finish(build_symmetric_multi(p), true, t0);
}

ExperimentRecord solve_multi_target(const MultiTarget& p) {
  const auto t0 = Clock::now();
  return finish(build_multi_target(p), false, t0);
}

ExperimentRecord solve_multi_source(const MultiSource& p) {
  const auto t0 = Clock::now();
  return finish(build_multi_source(p), false, t0);
}

ExperimentRecord solve_composite(const CompositeV& p) {
  const auto t0 = Clock::now();
  return finish(build_composite(p), false, t0);
}

ExperimentRecord solve_two_dim(const TwoDim& p) {
  const auto t0 = Clock::now();
  return finish(build_two_dim(p), false, t0);
}

ExperimentRecord solve_two_dim_variants(const Rectangular& p) {
  const auto t0 = Clock::now();
  return finish(build_rectangular(p), false, t0);
}

ExperimentRecord solve_two_dim_variants(const MultiDim& p) {
  const auto t0 = Clock::now();
  return finish(build_multi_dim(p), false, t0);
}

ExperimentRecord solve_two_dim_variants(const TwoDimMultiTarget& p) {
  const auto t0 = Clock::now();
  return finish(build_two_dim_multi(p), false, t0);
}

ExperimentRecord solve(const ProblemInstance& p) {
  return std::visit(
      [](const auto& inst) -> ExperimentRecord {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, Exhaustive>)
          return solve_exhaustive(inst);
        else if constexpr (std::is_same_v<T, Nearby>)
          return solve_nearby(inst);
        else if constexpr (std::is_same_v<T, SymmetricMulti>)
          return solve_symmetric_multi(inst);
        else if constexpr (std::is_same_v<T, MultiTarget>)
          return solve_multi_target(inst);
        else if constexpr (std::is_same_v<T, MultiSource>)
          return solve_multi_source(inst);
        else if constexpr (std::is_same_v<T, CompositeV>)
          return solve_composite(inst);
        else if constexpr (std::is_same_v<T, TwoDim>)
          return solve_two_dim(inst);
        else
          return solve_two_dim_variants(inst);
      },
      p);
}

StateVector inversion_about_average_check(const StateVector& x) {
  const int n = x.n_qubits();
  for (Eigen::Index i = 0; i < x.amps().size(); ++i)
    if (std::abs(x.amps()(i).imag()) > 1e-12)
      throw ArgumentError(
          "inversion_about_average_check requires real amplitudes");

  StateVector y = x;
  apply_program(y, UnitaryProgram(n, {WalshHadamardOp{},
                                      PhaseInvertOp{BasisSet::single(0)},
                                      WalshHadamardOp{}, NegateOp{}}));

  const double mean = x.amps().real().mean();
  for (Eigen::Index i = 0; i < y.amps().size(); ++i) {
    const double expect = 2.0 * mean - x.amps()(i).real();
    if (std::abs(y.amps()(i).real() - expect) > 1e-10 ||
        std::abs(y.amps()(i).imag()) > 1e-10)
      throw FrameworkBugError(
          "inversion about average deviates from 2A - x_i");
  }
  return y;
}

std::pair<std::int64_t, double> nearby_search_space(int n, int k) {
  if (k <= 0 || k >= n)
    throw ArgumentError("nearby_search_space: need 0 < k < n");
  if (n > 62)
    throw ArgumentError(
        "nearby_search_space: n > 62 overflows the exact binomial count");
  const int kk = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 1; i <= kk; ++i) {
    c = c * static_cast<unsigned>(n - kk + i) / static_cast<unsigned>(i);
  }
  const double fn = n;
  const double fk = k;
  const double stirling_log =
      (fn - fk) * std::log(fn / (fn - fk)) + fk * std::log(fn / fk);
  return {static_cast<std::int64_t>(c), stirling_log};
}

std::int64_t classical_baseline(const ProblemInstance& p) {
  return std::visit(
      [](const auto& inst) -> std::int64_t {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, Exhaustive>) {
          return std::int64_t{1} << inst.n;
        } else if constexpr (std::is_same_v<T, Nearby>) {
          return nearby_search_space(inst.n, inst.k).first;
        } else if constexpr (std::is_same_v<T, SymmetricMulti>) {
          const double dim = std::ldexp(1.0, inst.u.n_qubits());
          return static_cast<std::int64_t>(
              std::ceil(dim / static_cast<double>(inst.t.size())));
        } else if constexpr (std::is_same_v<T, MultiTarget>) {
          const double dim = std::ldexp(1.0, inst.n);
          return static_cast<std::int64_t>(
              std::ceil(dim / static_cast<double>(inst.targets.size())));
        } else if constexpr (std::is_same_v<T, MultiSource>) {
          return nearby_search_space(inst.n, inst.k).first;
        } else if constexpr (std::is_same_v<T, CompositeV>) {
          return std::int64_t{1} << inst.u.n_qubits();
        } else if constexpr (std::is_same_v<T, TwoDim>) {
          return (std::int64_t{1} << inst.nx) *
                 static_cast<std::int64_t>(inst.g.size());
        } else if constexpr (std::is_same_v<T, Rectangular>) {
          return (std::int64_t{1} << inst.nx) +
                 (std::int64_t{1} << inst.ny) *
                     static_cast<std::int64_t>(inst.g.size());
        } else if constexpr (std::is_same_v<T, MultiDim>) {
          // m_1 * ... * m_{d-1} telescopes to the size of the last level.
          const std::int64_t m_product =
              inst.levels.empty()
                  ? 1
                  : static_cast<std::int64_t>(inst.levels.back().size());
          return m_product << inst.axis_qubits;
        } else {
          static_assert(std::is_same_v<T, TwoDimMultiTarget>);
          const double nm = std::ldexp(static_cast<double>(inst.g.size()),
                                       inst.nx);
          return static_cast<std::int64_t>(
              std::ceil(nm / static_cast<double>(inst.targets.size())));
        }
      },
      p);
}

BuiltProblem build_problem(const ProblemInstance& p) {
  return std::visit(
      [](const auto& inst) -> BuiltProblem {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, Exhaustive>)
          return build_exhaustive(inst);
        else if constexpr (std::is_same_v<T, Nearby>)
          return build_nearby(inst);
        else if constexpr (std::is_same_v<T, SymmetricMulti>)
          return build_symmetric_multi(inst);
        else if constexpr (std::is_same_v<T, MultiTarget>)
          return build_multi_target(inst);
        else if constexpr (std::is_same_v<T, MultiSource>)
          return build_multi_source(inst);
        else if constexpr (std::is_same_v<T, CompositeV>)
          return build_composite(inst);
        else if constexpr (std::is_same_v<T, TwoDim>)
          return build_two_dim(inst);
        else if constexpr (std::is_same_v<T, Rectangular>)
          return build_rectangular(inst);
        else if constexpr (std::is_same_v<T, MultiDim>)
          return build_multi_dim(inst);
        else
          return build_two_dim_multi(inst);
      },
      p);
}

}  // namespace qsearch
