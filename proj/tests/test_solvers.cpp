#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "junction/entropy.hpp"
#include "junction/errors.hpp"
#include "junction/solvers.hpp"
#include "oracles.hpp"

using namespace junction;

namespace {

const FluxModel kQuad = FluxModel::quadratic();

RiemannState random_state(std::mt19937_64& rng, NodeTopology t) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> rho(t.arcs());
  for (double& r : rho) r = u(rng);
  return RiemannState(t, rho);
}

void check_solution(const RiemannSolver& solver, const RiemannState& init) {
  const TraceSolution out = solver(init);
  CHECK(out.balanced);
  CHECK(out.admissible);
  for (std::size_t l = 0; l < out.state.size(); ++l)
    CHECK(out.gamma[l] == doctest::Approx(oracle::quad(out.state[l])).epsilon(1e-14));
  CHECK(max_abs_difference(solver(out.state).state, out.state) <= 1e-10);
}

}  // namespace

TEST_CASE("theta and capacity validation") {
  CHECK_NOTHROW(ThetaWeights({2, 2}, {0.5, 0.5, 0.5, 0.5}));
  CHECK_THROWS_AS(ThetaWeights({2, 2}, {0.5, 0.5, 0.5}), InputError);
  CHECK_THROWS_AS(ThetaWeights({2, 2}, {1.0, 0.0, 0.5, 0.5}), InputError);
  CHECK_THROWS_AS(ThetaWeights({2, 2}, {0.6, 0.5, 0.5, 0.5}), InputError);
  CHECK_THROWS_AS(CrossingCapacity(0.0), InputError);
}

TEST_CASE("rs1 pinned example") {
  const DistributionMatrix A({{1.0 / 3, 0.5}, {2.0 / 3, 0.5}});
  const double r3 = (8 + std::sqrt(34.0)) / 16;
  const TraceSolution out = rs1_solve(kQuad, A, RiemannState({2, 2}, {0.75, 0.125, r3, 0.1}));
  const std::vector<double> want{1.0, 13.0 / 48, 15.0 / 32, 77.0 / 96};
  for (std::size_t l = 0; l < 4; ++l) CHECK(std::abs(out.gamma[l] - want[l]) <= 1e-10);
  CHECK(out.state[0] == 0.5);
  CHECK(out.state[1] > 0.5);
  CHECK(out.state[2] == r3);
  CHECK(out.state[3] < 0.5);
  CHECK(out.balanced);

  const TraceSolution zero = rs1_solve(kQuad, A, RiemannState({2, 2}, {0, 0, 0.3, 0.9}));
  for (double g : zero.gamma) CHECK(g == 0.0);
  CHECK(zero.state[0] == 0.0);
  CHECK(zero.state[1] == 0.0);
}

TEST_CASE("rs1 rejects matrices outside N") {
  CHECK_THROWS_AS(Rs1Solver(kQuad, DistributionMatrix({{0.5, 0.5}, {0.5, 0.5}})),
                  InvalidMatrixError);
  CHECK_THROWS_AS(Rs1Solver(kQuad, DistributionMatrix({{0.5, 0.2, 0.3}, {0.5, 0.8, 0.7}})),
                  InvalidMatrixError);
}

TEST_CASE("rs2 examples") {
  const Rs2Solver rs2(kQuad, ThetaWeights({2, 2}, {0.5, 0.5, 5.0 / 12, 7.0 / 12}));
  const RiemannState eq({2, 2}, {0.25, 0.25, 0.5 - std::sqrt(3.0) / (4 * std::sqrt(2.0)),
                                 0.5 - 1 / (4 * std::sqrt(2.0))});
  CHECK(max_abs_difference(rs2(eq).state, eq) <= 1e-10);

  const Rs2Solver uniform(kQuad, ThetaWeights({2, 2}, {0.5, 0.5, 0.5, 0.5}));
  const RiemannState sonic({2, 2}, {0.5, 0.5, 0.5, 0.5});
  CHECK(max_abs_difference(uniform(sonic).state, sonic) == 0.0);

  const Rs2Solver one(kQuad, ThetaWeights({1, 1}, {1.0, 1.0}));
  const auto out = one(RiemannState({1, 1}, {0.25, 0.75}));
  CHECK(out.state[0] == 0.25);
  CHECK(out.state[1] == 0.75);
  const auto ref = rs_1x1_solve(kQuad, RiemannState({1, 1}, {0.25, 0.75}));
  CHECK(max_abs_difference(out.state, ref.state) == 0.0);
}

TEST_CASE("rs3 examples") {
  const double r = std::sqrt(59.0 / 3) / 10;
  const RiemannState first({2, 2}, {0.2, 0.5 + r, 0.8, 0.5 - r});
  const auto a = rs3_solve(kQuad, ThetaWeights({2, 2}, {0.75, 0.25, 0.75, 0.25}),
                           CrossingCapacity(64.0 / 75), first);
  CHECK(max_abs_difference(a.state, first) <= 1e-10);
  CHECK(a.gamma[0] == doctest::Approx(16.0 / 25));
  CHECK(a.gamma[1] == doctest::Approx(16.0 / 75));

  const RiemannState second({2, 2}, {0.5 + std::sqrt(0.5) / 2, 0.5 + std::sqrt(1.0 / 3) / 2,
                                     0.5 + std::sqrt(0.5) / 2, 0.5 - std::sqrt(1.0 / 3) / 2});
  const auto b = rs3_solve(kQuad, ThetaWeights({2, 2}, {0.5, 0.5, 0.5, 0.5}),
                           CrossingCapacity(7.0 / 6), second);
  CHECK(max_abs_difference(b.state, second) <= 1e-10);

  const RiemannState sonic({2, 2}, {0.5, 0.5, 0.5, 0.5});
  const auto c = rs3_solve(kQuad, ThetaWeights({2, 2}, {0.3, 0.7, 0.4, 0.6}),
                           CrossingCapacity(2.0), sonic);
  CHECK(max_abs_difference(c.state, sonic) == 0.0);

  CHECK_THROWS_AS(Rs3Solver(kQuad, ThetaWeights({2, 1}, {0.5, 0.5, 1.0}), CrossingCapacity(1.0)),
                  TopologyError);
}

TEST_CASE("1x1 entropy solver cases") {
  const Rs1x1Solver s(kQuad);
  auto solve = [&](double a, double b) { return s(RiemannState({1, 1}, {a, b})).state.rho(); };
  CHECK(solve(0.3, 0.3) == std::vector<double>{0.3, 0.3});
  CHECK(solve(0.7, 0.2) == std::vector<double>{0.5, 0.5});
  CHECK(solve(0.25, 0.75) == std::vector<double>{0.25, 0.75});
  CHECK(solve(0.1, 0.3) == std::vector<double>{0.1, 0.1});
  CHECK(solve(0.6, 0.9) == std::vector<double>{0.9, 0.9});
  CHECK(solve(0.3, 0.9) == std::vector<double>{0.9, 0.9});
  CHECK(solve(0.1, 0.7) == std::vector<double>{0.1, 0.1});
  CHECK_THROWS_AS(s(RiemannState({2, 1}, {0.1, 0.1, 0.1})), TopologyError);
}

TEST_CASE("1x1 solver is the only entropy solution") {
  // Any balanced admissible pair other than the solver output violates E1.
  std::mt19937_64 rng(21);
  const Rs1x1Solver s(kQuad);
  for (int it = 0; it < 500; ++it) {
    const RiemannState init = random_state(rng, {1, 1});
    const auto out = s(init);
    CHECK(check_e1(kQuad, out.state).satisfied_e1);
    const double d = kQuad.demand(init[0]).upper;
    const double sup = kQuad.supply(init[1]).upper;
    for (double level : {d, sup}) {
      if (level > std::min(d, sup)) continue;
      for (double rin : {init[0], kQuad.invert(level, Branch::decreasing)}) {
        for (double rout : {init[1], kQuad.invert(level, Branch::increasing)}) {
          if (std::abs(oracle::quad(rin) - level) > 1e-12 || std::abs(oracle::quad(rout) - level) > 1e-12)
            continue;
          const RiemannState alt({1, 1}, {rin, rout});
          const auto sol = make_trace_solution(kQuad, init, alt);
          if (!sol.admissible || max_abs_difference(alt, out.state) <= 1e-12) continue;
          CHECK_FALSE(check_e1(kQuad, alt).satisfied_e1);
        }
      }
    }
  }
}

TEST_CASE("2x2 entropy solver pinned values") {
  const auto a = rs_e1_2x2_solve(kQuad, RiemannState({2, 2}, {0.25, 0.75, 0.25, 0.25}));
  CHECK(a.state.rho() == std::vector<double>{0.25, 0.5, 0.25, 0.5});
  const auto b = rs_e1_2x2_solve(kQuad, RiemannState({2, 2}, {0.75, 0.25, 0.25, 0.25}));
  CHECK(b.state.rho() == std::vector<double>{0.5, 0.25, 0.5, 0.25});
  const auto c = rs_e1_2x2_solve(kQuad, RiemannState({2, 2}, {0.6, 0.9, 0.1, 0.4}));
  CHECK(c.state.rho() == std::vector<double>{0.5, 0.5, 0.5, 0.5});
}

TEST_CASE("2x2 entropy solver covers every branch") {
  const RsE1TwoByTwoSolver s(kQuad);
  std::mt19937_64 rng(22);
  std::map<std::string, int> seen;
  for (int it = 0; it < 20000; ++it) {
    const RiemannState init = random_state(rng, {2, 2});
    const auto out = s.solve_detailed(init);
    ++seen[out.subcase];
    CHECK(out.solution.balanced);
    CHECK(out.solution.admissible);
    CHECK(check_e1(kQuad, out.solution.state).satisfied_e1);
    CHECK(classify_2x2(kQuad, out.solution.state).admissible);
    CHECK(max_abs_difference(s(out.solution.state).state, out.solution.state) <= 1e-10);
  }
  // Every branch but the measure-zero balanced one.
  CHECK(seen.size() == 18);
  CHECK(seen.count("four bad, balanced") == 0);
}

TEST_CASE("2x2 entropy solver copies incoming data onto outgoing arcs in label order") {
  const RsE1TwoByTwoSolver s(kQuad);
  // Equal outgoing fluxes with four bad data.
  const auto a = s(RiemannState({2, 2}, {0.1, 0.2, 0.7, 0.7}));
  const auto b = s(RiemannState({2, 2}, {0.2, 0.1, 0.7, 0.7}));
  CHECK(a.state.rho() == std::vector<double>{0.1, 0.2, 0.1, 0.2});
  CHECK(b.state.rho() == std::vector<double>{0.2, 0.1, 0.2, 0.1});
  CHECK(a.gamma[2] + a.gamma[3] == doctest::Approx(b.gamma[2] + b.gamma[3]));
}

TEST_CASE("2x2 entropy solver records the identity order on flux ties") {
  const RsE1TwoByTwoSolver s(kQuad);
  const auto a = s.solve_detailed(RiemannState({2, 2}, {0.3, 0.45, 0.6, 0.6}));
  const auto b = s.solve_detailed(RiemannState({2, 2}, {0.45, 0.3, 0.6, 0.6}));
  CHECK(a.subcase == "four bad, outgoing excess, adjust outgoing");
  CHECK(a.permutation[2] == 2);
  CHECK(a.permutation[3] == 3);
  CHECK(a.solution.gamma[2] == doctest::Approx(0.84 + 0.99 - 0.96));
  CHECK(a.solution.gamma[3] == doctest::Approx(0.96));
  CHECK(b.solution.gamma[2] == doctest::Approx(a.solution.gamma[2]));
  CHECK(b.solution.gamma[3] == doctest::Approx(a.solution.gamma[3]));
}

TEST_CASE("2x2 entropy solver keeps balanced four bad data") {
  const RsE1TwoByTwoSolver s(kQuad);
  const double r = (1.0 + std::sqrt(0.5)) / 2;
  const RiemannState init({2, 2}, {0.1, 0.2, r, r});
  const auto out = s.solve_detailed(init);
  CHECK(out.subcase == "four bad, balanced");
  CHECK(out.solution.state.rho() == init.rho());
  CHECK(check_e1(kQuad, out.solution.state).satisfied_e1);
}

TEST_CASE("all solvers: balance, admissibility and fixed points") {
  std::mt19937_64 rng(23);
  const Rs1x1Solver one(kQuad);
  const RsE1TwoByTwoSolver e1(kQuad);
  const Rs2Solver rs2_21(kQuad, ThetaWeights({2, 1}, {0.4, 0.6, 1.0}));
  const Rs2Solver rs2_23(kQuad, ThetaWeights({2, 3}, {0.4, 0.6, 0.2, 0.3, 0.5}));
  const Rs2Solver rs2_32(kQuad, ThetaWeights({3, 2}, {0.2, 0.3, 0.5, 0.4, 0.6}));
  const Rs3Solver rs3(kQuad, ThetaWeights({2, 2}, {0.3, 0.7, 0.5, 0.5}), CrossingCapacity(1.2));
  const Rs1Solver rs1_22(kQuad, DistributionMatrix({{1.0 / 3, 0.5}, {2.0 / 3, 0.5}}));
  const Rs1Solver rs1_23(kQuad, DistributionMatrix({{0.2, 0.5}, {0.3, 0.1}, {0.5, 0.4}}));
  for (int it = 0; it < 500; ++it) {
    check_solution(one, random_state(rng, {1, 1}));
    check_solution(e1, random_state(rng, {2, 2}));
    check_solution(rs2_21, random_state(rng, {2, 1}));
    check_solution(rs2_23, random_state(rng, {2, 3}));
    check_solution(rs2_32, random_state(rng, {3, 2}));
    check_solution(rs3, random_state(rng, {2, 2}));
    check_solution(rs1_22, random_state(rng, {2, 2}));
    check_solution(rs1_23, random_state(rng, {2, 3}));
  }
}

TEST_CASE("solver factory") {
  SolverConfig c{"rs3", std::nullopt, std::vector<double>{0.5, 0.5, 0.5, 0.5}, 1.0};
  CHECK(make_solver(kQuad, c, {2, 2})->name() == "rs3");
  CHECK_THROWS_AS(make_solver(kQuad, c, {2, 1}), TopologyError);
  c.gamma_j.reset();
  CHECK_THROWS_AS(make_solver(kQuad, c, {2, 2}), InputError);
  CHECK_THROWS_AS(make_solver(kQuad, SolverConfig{"rs9", {}, {}, {}}, {2, 2}), InputError);
  CHECK(make_solver(kQuad, SolverConfig{"rs_1x1", {}, {}, {}}, {1, 1})->name() == "rs_1x1");
  CHECK_THROWS_AS(make_solver(kQuad, SolverConfig{"rs_e1_2x2", {}, {}, {}}, {1, 1}),
                  TopologyError);
}
