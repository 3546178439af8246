#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/problems.hpp"

using namespace qsearch;

namespace {

UnitaryProgram walsh(int n) { return UnitaryProgram(n, {WalshHadamardOp{}}); }

void check_invariants(const ExperimentRecord& r) {
  CHECK(!r.problem_id.empty());
  CHECK(!r.parameters.empty());
  CHECK(!r.formula_name.empty());
  CHECK(r.success_at_best >= 0.0);
  CHECK(r.success_at_best <= 1.0);
  CHECK(r.success_at_predicted >= 0.0);
  CHECK(r.success_at_predicted <= 1.0);
  CHECK(std::abs(r.coupling_predicted - r.coupling_measured) <= 1e-9);
  CHECK(r.eta_best >= 0);
  CHECK(r.eta_predicted >= 1);
  CHECK(r.primitive_ops > 0);
  CHECK(r.primitive_step_bound > 0.0);
  CHECK(r.classical_baseline >= 1);
  CHECK(r.wall_time_ms >= 0);
}

bool numerically_identical(const ExperimentRecord& a, const ExperimentRecord& b) {
  return a.coupling_predicted == b.coupling_predicted &&
         a.coupling_measured == b.coupling_measured &&
         a.eta_predicted == b.eta_predicted && a.eta_best == b.eta_best &&
         a.success_at_predicted == b.success_at_predicted &&
         a.success_at_best == b.success_at_best &&
         a.primitive_ops == b.primitive_ops &&
         a.primitive_step_bound == b.primitive_step_bound &&
         a.classical_baseline == b.classical_baseline;
}

}  // namespace

TEST_CASE("exhaustive driver: frozen n=10 instance") {
  const ExperimentRecord r = solve_exhaustive({10, 777, 0});
  check_invariants(r);
  CHECK(r.problem_id == "exhaustive");
  CHECK(r.parameters == "n=10;s=0;t=777");
  CHECK(r.formula_name == "sqrt_n");
  CHECK(r.coupling_predicted == 0.03125);
  CHECK(std::abs(r.coupling_measured - 0.03125) < 1e-12);
  CHECK(r.eta_predicted == 25);
  CHECK(r.eta_best == 25);
  CHECK(std::abs(r.success_at_best - 0.9994612447443189) < 1e-12);
  CHECK(r.primitive_ops == 585);
  CHECK(r.primitive_step_bound == 32.0);
  CHECK(r.classical_baseline == 1024);

  CHECK_THROWS_AS(solve_exhaustive({0, 0, 0}), ArgumentError);
  CHECK_THROWS_AS(solve_exhaustive({2, 3, 3}), DegenerateSpecError);
}

TEST_CASE("exhaustive driver: tiny instance peaks exactly") {
  const ExperimentRecord r = solve_exhaustive({2, 3, 0});
  CHECK(r.eta_predicted == 2);
  CHECK(r.eta_best == 1);
  CHECK(r.success_at_best == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.success_at_predicted == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("nearby driver: frozen n=12 k=2 instance") {
  const ExperimentRecord r = solve_nearby({12, 2, 0, 3});
  check_invariants(r);
  CHECK(r.problem_id == "nearby");
  CHECK(r.parameters == "n=12;k=2;r=0;t=3");
  CHECK(r.formula_name == "sqrt_binomial");
  const double closed =
      std::pow(10.0 / 12.0, 5.0) * std::pow(2.0 / 12.0, 1.0);
  CHECK(std::abs(r.coupling_predicted - closed) < 1e-12);
  CHECK(std::abs(r.coupling_measured - 0.06697959533607685) < 1e-12);
  CHECK(r.eta_predicted == 12);
  CHECK(r.eta_best == 11);
  CHECK(std::abs(r.success_at_best - 0.9991527639850294) < 1e-12);
  CHECK(r.primitive_ops == 309);
  const double stirling = 10.0 * std::log(12.0 / 10.0) + 2.0 * std::log(6.0);
  CHECK(std::abs(r.primitive_step_bound - std::exp(0.5 * stirling)) < 1e-9);
  CHECK(r.classical_baseline == 66);

  // The target must sit at Hamming distance exactly k from the reference.
  CHECK_THROWS_AS(solve_nearby({4, 2, 0, 7}), ArgumentError);
}

TEST_CASE("nearby_search_space guards and counts") {
  const auto [space, log_form] = nearby_search_space(12, 2);
  CHECK(space == 66);
  CHECK(log_form ==
        doctest::Approx(10.0 * std::log(1.2) + 2.0 * std::log(6.0))
            .epsilon(1e-12));
  CHECK(nearby_search_space(62, 31).first == 465428353255261088LL);
  CHECK_THROWS_AS(nearby_search_space(12, 0), ArgumentError);
  CHECK_THROWS_AS(nearby_search_space(12, 12), ArgumentError);
  CHECK_THROWS_AS(nearby_search_space(63, 31), ArgumentError);
}

TEST_CASE("symmetric multi driver: frozen 2x3 pair instance") {
  const ExperimentRecord r =
      solve_symmetric_multi({walsh(4), BasisSet({0, 8}), BasisSet({1, 2, 4})});
  check_invariants(r);
  CHECK(r.problem_id == "symmetric_multi");
  CHECK(r.parameters == "n=4;s=0+8;t=1+2+4;u_ops=4");
  CHECK(r.formula_name == "sqrt_alpha_beta_pairs");
  CHECK(std::abs(r.coupling_predicted - std::sqrt(6.0) / 4.0) < 1e-12);
  CHECK(std::abs(r.coupling_measured - r.coupling_predicted) < 1e-12);
  CHECK(r.eta_predicted == 1);
  CHECK(r.eta_best == 1);
  CHECK(std::abs(r.success_at_best - 0.84375) < 1e-12);
  CHECK(r.primitive_ops == 17);
  CHECK(std::abs(r.primitive_step_bound - 4.0 / std::sqrt(6.0)) < 1e-12);
  CHECK(r.classical_baseline == 6);

  CHECK_THROWS_AS(
      solve_symmetric_multi({walsh(4), BasisSet({0, 2, 8}), BasisSet({1})}),
      UnsupportedCardinalityError);

  // A phase flip on one target makes the pairwise couplings disagree.
  const UnitaryProgram flipped(
      2, {WalshHadamardOp{}, PhaseInvertOp{BasisSet({3})}});
  CHECK_THROWS_AS(
      solve_symmetric_multi({flipped, BasisSet({0}), BasisSet({1, 3})}),
      AsymmetricCouplingError);
}

TEST_CASE("multi target driver: frozen beta=4 instance") {
  const ExperimentRecord r = solve_multi_target({10, BasisSet({5, 9, 17, 33})});
  check_invariants(r);
  CHECK(r.problem_id == "multi_target");
  CHECK(r.parameters == "n=10;t=5+9+17+33");
  CHECK(r.formula_name == "sqrt_n_over_beta");
  CHECK(r.coupling_predicted == 0.0625);
  CHECK(std::abs(r.coupling_measured - 0.0625) < 1e-12);
  CHECK(r.eta_predicted == 13);
  CHECK(r.eta_best == 12);
  CHECK(std::abs(r.success_at_best - 0.9999470421032299) < 1e-12);
  CHECK(r.primitive_ops == 286);
  CHECK(r.primitive_step_bound == 16.0);
  CHECK(r.classical_baseline == 256);

  CHECK_THROWS_AS(solve_multi_target({1, BasisSet({1})}), ArgumentError);
  CHECK_THROWS_AS(solve_multi_target({4, BasisSet(std::vector<BasisIndex>{})}), ArgumentError);
  CHECK_THROWS_AS(solve_multi_target({4, BasisSet({1, 2, 3, 5, 6})}),
                  ArgumentError);
  CHECK_THROWS_AS(solve_multi_target({4, BasisSet({0, 5})}),
                  DegenerateSpecError);
}

TEST_CASE("multi target beta=1 reduces to exhaustive search") {
  const ExperimentRecord one = solve_multi_target({10, BasisSet({777})});
  const ExperimentRecord ref = solve_exhaustive({10, 777, 0});
  CHECK(numerically_identical(one, ref));
}

TEST_CASE("multi source driver: frozen alpha=4 instance") {
  const ExperimentRecord r =
      solve_multi_source({12, 2, BasisSet({3, 5, 6, 9}), 0});
  check_invariants(r);
  CHECK(r.problem_id == "multi_source");
  CHECK(r.parameters == "n=12;k=2;s=3+5+6+9;t=0");
  CHECK(r.formula_name == "sqrt_binomial_over_alpha");
  CHECK(std::abs(r.coupling_predicted - 0.13395919067215367) < 1e-12);
  CHECK(std::abs(r.coupling_measured - r.coupling_predicted) < 1e-12);
  CHECK(r.eta_predicted == 6);
  CHECK(r.eta_best == 5);
  CHECK(std::abs(r.success_at_best - 0.9914124665000508) < 1e-12);
  CHECK(r.primitive_ops == 150);
  CHECK(r.classical_baseline == 66);

  // Effective coupling scales as sqrt(alpha) times the single-pair value.
  const ExperimentRecord single = solve_multi_source({12, 2, BasisSet({3}), 0});
  CHECK(std::abs(r.coupling_measured - 2.0 * single.coupling_measured) < 1e-9);

  CHECK_THROWS_AS(solve_multi_source({4, 1, BasisSet({1, 2, 4}), 0}),
                  UnsupportedCardinalityError);
  CHECK_THROWS_AS(solve_multi_source({4, 2, BasisSet({3, 7}), 0}),
                  ArgumentError);
  CHECK_THROWS_AS(solve_multi_source({4, 2, BasisSet({0, 5}), 3}),
                  AsymmetricCouplingError);
}

TEST_CASE("multi source alpha=1 matches the nearby driver") {
  const ExperimentRecord ms = solve_multi_source({12, 2, BasisSet({3}), 0});
  const ExperimentRecord nb = solve_nearby({12, 2, 0, 3});
  CHECK(ms.coupling_predicted == nb.coupling_predicted);
  CHECK(std::abs(ms.coupling_measured - nb.coupling_measured) < 1e-12);
  CHECK(ms.eta_predicted == nb.eta_predicted);
  CHECK(ms.eta_best == nb.eta_best);
  CHECK(std::abs(ms.success_at_best - nb.success_at_best) < 1e-12);
  CHECK(ms.classical_baseline == nb.classical_baseline);
}

TEST_CASE("composite driver: frozen uniform-sign instance") {
  const ExperimentRecord r = solve_composite({6, BasisSet({3, 5, 6, 9}), 63,
                                              walsh(6)});
  check_invariants(r);
  CHECK(r.problem_id == "composite_v");
  CHECK(r.parameters == "n=6;s=3+5+6+9;t=63;u_ops=6");
  CHECK(r.formula_name == "inv_u_sqrt_alpha");
  CHECK(std::abs(r.coupling_predicted - 0.25) < 1e-12);
  CHECK(std::abs(r.coupling_measured - 0.25) < 1e-12);
  CHECK(r.eta_predicted == 3);
  CHECK(r.eta_best == 3);
  CHECK(std::abs(r.success_at_best - 0.9613189697265538) < 1e-12);
  CHECK(r.primitive_ops == 72);
  CHECK(std::abs(r.primitive_step_bound - 4.0) < 1e-12);
  CHECK(r.classical_baseline == 64);

  CHECK_THROWS_AS(solve_composite({4, BasisSet({1, 2, 4}), 0, walsh(4)}),
                  UnsupportedCardinalityError);
  // <1|W|0> and <1|W|3> cancel exactly.
  CHECK_THROWS_AS(solve_composite({2, BasisSet({0, 3}), 1, walsh(2)}),
                  DestructiveInterferenceError);
  // The composite run starts at |0>, so 0 cannot be the target.
  CHECK_THROWS_AS(solve_composite({4, BasisSet({3, 5}), 0, walsh(4)}),
                  DegenerateSpecError);
}

TEST_CASE("composite with equal couplings matches the multi-target dynamics") {
  // All four W couplings onto 16 equal +1/32, so the coherent sum gives the
  // same effective coupling as four targets seen from one source.
  const ExperimentRecord cv =
      solve_composite({10, BasisSet({3, 5, 6, 9}), 16, walsh(10)});
  const ExperimentRecord mt = solve_multi_target({10, BasisSet({5, 9, 17, 33})});
  CHECK(std::abs(cv.coupling_measured - 0.0625) < 1e-12);
  CHECK(cv.eta_predicted == mt.eta_predicted);
  CHECK(cv.eta_best == mt.eta_best);
  CHECK(std::abs(cv.success_at_best - mt.success_at_best) < 1e-12);
}

TEST_CASE("two-register driver: frozen square instance") {
  const ExperimentRecord r =
      solve_two_dim({6, 6, BasisSet({5, 9, 17, 33}), 5, 40});
  check_invariants(r);
  CHECK(r.problem_id == "two_dim");
  CHECK(r.parameters == "nx=6;ny=6;g=5+9+17+33;t1=5;t2=40");
  CHECK(r.formula_name == "sqrt_nm");
  CHECK(std::abs(r.coupling_predicted - 0.4893967510870425) < 1e-12);
  CHECK(std::abs(r.coupling_measured - 0.4893967510870375) < 1e-12);
  CHECK(r.eta_predicted == 2);
  CHECK(r.eta_best == 1);
  CHECK(std::abs(r.success_at_predicted - 0.3045589703476143) < 1e-12);
  CHECK(std::abs(r.success_at_best - 0.998660838880225) < 1e-12);
  CHECK(r.primitive_ops == 444);
  CHECK(r.primitive_step_bound == 16.0);
  CHECK(r.classical_baseline == 256);

  // The closed form behind the prediction: stage factors over sqrt(M).
  const double fx = std::sin(7.0 * std::asin(0.25));
  const double fy = std::sin(13.0 * std::asin(0.125));
  CHECK(std::abs(r.coupling_predicted - fx * fy / 2.0) < 1e-12);

  CHECK_THROWS_AS(solve_two_dim({6, 5, BasisSet({5}), 5, 0}), ArgumentError);
  CHECK_THROWS_AS(solve_two_dim({2, 2, BasisSet({0, 1}), 2, 0}), ArgumentError);
  CHECK_THROWS_AS(solve_two_dim({2, 2, BasisSet({0, 1}), 0, 4}), ArgumentError);
  CHECK_THROWS_AS(solve_two_dim({2, 2, BasisSet(std::vector<BasisIndex>{}), 0, 0}), ArgumentError);
  CHECK_THROWS_AS(solve_two_dim({2, 2, BasisSet({0, 7}), 0, 0}), ArgumentError);
}

TEST_CASE("two-register driver: M=N degenerates to plain search over y") {
  const ExperimentRecord r = solve_two_dim({2, 2, BasisSet({0, 1, 2, 3}), 1, 3});
  check_invariants(r);
  CHECK(r.parameters == "nx=2;ny=2;g=0+1+2+3;t1=1;t2=3");
  CHECK(r.coupling_predicted == 0.5);
  CHECK(std::abs(r.coupling_measured - 0.5) < 1e-12);
  CHECK(r.eta_predicted == 2);
  CHECK(r.eta_best == 1);
  CHECK(std::abs(r.success_at_best - 1.0) < 1e-12);
  // The x stage collapses to the bare transform: U costs 2 + (7*1 + 2) = 11,
  // so eta=1 runs at 3*11 + 3 = 36 elementary operations.
  CHECK(r.primitive_ops == 36);
  CHECK(r.classical_baseline == 16);
}

TEST_CASE("rectangular driver: frozen 4x6 instance") {
  const ExperimentRecord r =
      solve_two_dim_variants(Rectangular{4, 6, BasisSet({5, 9, 11, 14}), 5, 40});
  check_invariants(r);
  CHECK(r.problem_id == "rectangular");
  CHECK(r.parameters == "nx=4;ny=6;g=5+9+11+14;t1=5;t2=40");
  CHECK(r.formula_name == "sqrt_n1_plus_sqrt_n2m");
  CHECK(std::abs(r.coupling_predicted - 0.4991456903517246) < 1e-12);
  CHECK(std::abs(r.coupling_measured - 0.49914569035172085) < 1e-12);
  CHECK(r.eta_predicted == 2);
  CHECK(r.eta_best == 1);
  CHECK(std::abs(r.success_at_best - 0.999991246867517) < 1e-12);
  CHECK(r.primitive_ops == 336);
  CHECK(r.primitive_step_bound == 20.0);  // sqrt(16) + sqrt(64 * 4)
  CHECK(r.classical_baseline == 272);     // 16 + 64 * 4
}

TEST_CASE("multi-target two-register driver: frozen beta=2 instance") {
  const ExperimentRecord r = solve_two_dim_variants(TwoDimMultiTarget{
      6, 6, BasisSet({0, 1, 2, 3, 4, 5, 6, 7}), {{1, 9}, {3, 40}}});
  check_invariants(r);
  CHECK(r.problem_id == "two_dim_multi_target");
  CHECK(r.parameters == "nx=6;ny=6;g=0+1+2+3+4+5+6+7;targets=1:9+3:40");
  CHECK(r.formula_name == "sqrt_nm_over_beta");
  CHECK(std::abs(r.coupling_predicted - 0.48530529086564955) < 1e-12);
  CHECK(std::abs(r.coupling_measured - 0.48530529086564506) < 1e-12);
  CHECK(r.eta_predicted == 2);
  CHECK(r.eta_best == 1);
  CHECK(std::abs(r.success_at_best - 0.9974358169055929) < 1e-12);
  CHECK(r.primitive_ops == 399);
  CHECK(r.primitive_step_bound == 16.0);
  CHECK(r.classical_baseline == 256);

  // One target per marked column drives the coupling to its maximum.
  const ExperimentRecord full = solve_two_dim_variants(TwoDimMultiTarget{
      6, 6, BasisSet({0, 1, 2, 3, 4, 5, 6, 7}),
      {{0, 9}, {1, 2}, {2, 40}, {3, 5}, {4, 11}, {5, 0}, {6, 63}, {7, 31}}});
  CHECK(std::abs(full.coupling_measured - 0.97061058173129011) < 1e-12);
  CHECK(full.eta_best == 0);
  CHECK(std::abs(full.success_at_best - 0.94208490136875334) < 1e-12);

  // Two targets sharing an x column cannot be nested through g.
  CHECK_THROWS_AS(solve_two_dim_variants(TwoDimMultiTarget{
                      2, 2, BasisSet({0, 1}), {{0, 1}, {0, 2}}}),
                  RefusalError);
  CHECK_THROWS_AS(solve_two_dim_variants(
                      TwoDimMultiTarget{2, 2, BasisSet({0, 1}), {{3, 1}}}),
                  ArgumentError);
  CHECK_THROWS_AS(
      solve_two_dim_variants(TwoDimMultiTarget{2, 2, BasisSet({0, 1}), {}}),
      ArgumentError);
}

TEST_CASE("multi-dim driver: frozen d=3 instance") {
  const ExperimentRecord r = solve_two_dim_variants(
      MultiDim{3, 4, {BasisSet({3, 5}), BasisSet({19, 37, 147, 181})},
               {3, 9, 7}});
  check_invariants(r);
  CHECK(r.problem_id == "multi_dim");
  CHECK(r.parameters ==
        "d=3;axis_qubits=4;levels=3+5/19+37+147+181;target=3+9+7");
  CHECK(r.formula_name == "sqrt_n_m1_md");
  CHECK(std::abs(r.coupling_predicted - 0.46342468261718744) < 1e-12);
  CHECK(std::abs(r.coupling_measured - 0.4634246826171846) < 1e-12);
  CHECK(r.eta_predicted == 2);
  CHECK(r.eta_best == 1);
  CHECK(std::abs(r.success_at_best - 0.9843997056242095) < 1e-12);
  CHECK(r.primitive_ops == 270);
  CHECK(r.primitive_step_bound == 8.0);
  CHECK(r.classical_baseline == 64);
}

TEST_CASE("multi-dim driver: validation and refusal") {
  using MD = MultiDim;
  CHECK_THROWS_AS(
      solve_two_dim_variants(MD{1, 4, {}, {0}}), ArgumentError);
  CHECK_THROWS_AS(
      solve_two_dim_variants(MD{2, 0, {BasisSet({0})}, {0, 0}}), ArgumentError);
  CHECK_THROWS_AS(solve_two_dim_variants(
                      MD{3, 5, {BasisSet({0}), BasisSet({0})}, {0, 0, 0}}),
                  RefusalError);
  CHECK_THROWS_AS(
      solve_two_dim_variants(MD{3, 2, {BasisSet({1})}, {1, 0, 0}}),
      ArgumentError);
  CHECK_THROWS_AS(
      solve_two_dim_variants(MD{2, 2, {BasisSet({1})}, {1, 0, 0}}),
      ArgumentError);
  CHECK_THROWS_AS(solve_two_dim_variants(MD{2, 2, {BasisSet({1})}, {1, 4}}),
                  ArgumentError);
  // Level-2 member 2 has prefix 2, absent from the level below.
  CHECK_THROWS_AS(solve_two_dim_variants(
                      MD{3, 2, {BasisSet({1}), BasisSet({2})}, {1, 0, 0}}),
                  ArgumentError);
  // Prefix 1 carries two level-2 slices while prefix 2 carries one.
  CHECK_THROWS_AS(
      solve_two_dim_variants(
          MD{3, 2, {BasisSet({1, 2}), BasisSet({1, 5, 2})}, {1, 0, 0}}),
      UnsupportedCardinalityError);
  // Target prefix outside the last level set.
  CHECK_THROWS_AS(
      solve_two_dim_variants(MD{2, 2, {BasisSet({1})}, {2, 0}}),
      ArgumentError);
}

TEST_CASE("multi-dim d=2 coincides with the square two-register driver") {
  const ExperimentRecord md = solve_two_dim_variants(
      MultiDim{2, 2, {BasisSet({0, 1, 2, 3})}, {1, 3}});
  const ExperimentRecord td = solve_two_dim({2, 2, BasisSet({0, 1, 2, 3}), 1, 3});
  CHECK(std::abs(md.coupling_predicted - td.coupling_predicted) < 1e-12);
  CHECK(md.coupling_measured == td.coupling_measured);
  CHECK(md.eta_predicted == td.eta_predicted);
  CHECK(md.eta_best == td.eta_best);
  CHECK(md.success_at_best == td.success_at_best);
  CHECK(md.primitive_ops == td.primitive_ops);
}

TEST_CASE("variant dispatch routes to the matching driver") {
  const ExperimentRecord direct = solve_exhaustive({6, 5, 0});
  const ExperimentRecord routed = solve(ProblemInstance{Exhaustive{6, 5, 0}});
  CHECK(routed.problem_id == direct.problem_id);
  CHECK(numerically_identical(routed, direct));

  CHECK(classical_baseline(ProblemInstance{Exhaustive{10, 777, 0}}) == 1024);
  CHECK(classical_baseline(ProblemInstance{Nearby{12, 2, 0, 3}}) == 66);
  CHECK(classical_baseline(ProblemInstance{
            TwoDim{6, 6, BasisSet({5, 9, 17, 33}), 5, 40}}) == 256);

  const BuiltProblem bp = build_problem(ProblemInstance{Exhaustive{4, 11, 0}});
  CHECK(bp.problem_id == "exhaustive");
  CHECK(bp.coupling_predicted == 0.25);
  CHECK(bp.spec.target().contains(11));
}

TEST_CASE("inversion about average identity") {
  std::mt19937_64 rng(53);
  for (int n = 2; n <= 6; ++n) {
    StateVector x = testoracle::random_real_state(rng, n);
    const StateVector out = inversion_about_average_check(x);
    const double avg = x.amps().real().mean();
    for (Eigen::Index i = 0; i < x.dim(); ++i)
      CHECK(std::abs(out.amps()(i).real() - (2.0 * avg - x.amps()(i).real())) <
            1e-10);
  }

  StateVector complex_in = uniform_over(2, BasisSet({0, 1, 2, 3}));
  complex_in.amps()(1) = Amplitude{0.0, 0.5};
  CHECK_THROWS_AS(inversion_about_average_check(complex_in), ArgumentError);
}

TEST_CASE("every driver record satisfies the shared invariants") {
  const std::vector<ExperimentRecord> records = {
      solve_exhaustive({6, 19, 0}),
      solve_nearby({8, 4, 1, 14}),
      solve_symmetric_multi({walsh(3), BasisSet({0, 2}), BasisSet({1, 4})}),
      solve_multi_target({8, BasisSet({7, 99})}),
      solve_multi_source({8, 2, BasisSet({3, 5}), 0}),
      solve_composite({5, BasisSet({3, 5}), 30, walsh(5)}),
      solve_two_dim({3, 3, BasisSet({1, 5}), 1, 6}),
      solve_two_dim_variants(Rectangular{2, 4, BasisSet({1, 2}), 1, 9}),
      solve_two_dim_variants(MultiDim{2, 3, {BasisSet({1, 4})}, {4, 6}}),
      solve_two_dim_variants(
          TwoDimMultiTarget{3, 3, BasisSet({1, 5}), {{1, 6}, {5, 2}}}),
  };
  for (const ExperimentRecord& r : records) check_invariants(r);
}
