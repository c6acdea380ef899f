#include "junction/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "junction/entropy.hpp"
#include "junction/io.hpp"
#include "junction/solvers.hpp"

namespace junction {

namespace {

std::string join(const std::vector<double>& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << io::format_number(v[k]);
  out << ")";
  return out.str();
}

double max_error(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
  return e;
}

ReproRow scalar_row(std::string id, std::string description, std::string expected_text,
                    double expected, double computed, double tolerance) {
  const double err = std::abs(computed - expected);
  return {std::move(id), std::move(description), std::move(expected_text) + " = " +
                                                     io::format_number(expected),
          io::format_number(computed), err, tolerance, err <= tolerance};
}

}  // namespace

std::vector<ReproRow> reproduce_rows() {
  const FluxModel f = FluxModel::quadratic();
  std::vector<ReproRow> rows;

  const DistributionMatrix A({{1.0 / 3.0, 0.5}, {2.0 / 3.0, 0.5}});
  const RiemannState rs1_data({2, 2}, {0.75, 0.125, (8.0 + std::sqrt(34.0)) / 16.0, 0.1});
  const TraceSolution rs1 = rs1_solve(f, A, rs1_data);
  const std::vector<double> rs1_gamma{1.0, 13.0 / 48.0, 15.0 / 32.0, 77.0 / 96.0};
  const double rs1_err = max_error(rs1.gamma, rs1_gamma);
  rows.push_back({"rs1-fluxes", "RS1 fluxes, A = [[1/3,1/2],[2/3,1/2]]",
                  "(1, 13/48, 15/32, 77/96)", join(rs1.gamma), rs1_err, 1e-10, rs1_err <= 1e-10});
  rows.push_back(scalar_row("rs1-e2", "RS1 traces, F(., sigma)", "-19/48", -19.0 / 48.0,
                            check_e2(f, rs1.state).value_at_sigma, 1e-10));

  const ThetaWeights theta2({2, 2}, {0.5, 0.5, 5.0 / 12.0, 7.0 / 12.0});
  const RiemannState rs2_state(
      {2, 2}, {0.25, 0.25, 0.5 - std::sqrt(3.0) / (4.0 * std::sqrt(2.0)),
               0.5 - 1.0 / (4.0 * std::sqrt(2.0))});
  const TraceSolution rs2 = rs2_solve(f, theta2, rs2_state);
  const double rs2_value = entropy_flux(f, rs2.state, 0.25);
  ReproRow r2 = scalar_row("rs2-e1", "RS2 equilibrium, F(., 1/4)", "-1/4", -0.25, rs2_value, 1e-12);
  if (max_abs_difference(rs2.state, rs2_state) > 1e-10) r2.pass = false;
  rows.push_back(r2);

  const double r59 = std::sqrt(59.0 / 3.0) / 10.0;
  const RiemannState rs3a({2, 2}, {0.2, 0.5 + r59, 0.8, 0.5 - r59});
  const TraceSolution s3a = rs3_solve(f, ThetaWeights({2, 2}, {0.75, 0.25, 0.75, 0.25}),
                                      CrossingCapacity(64.0 / 75.0), rs3a);
  ReproRow r3a = scalar_row("rs3-e2-first", "RS3 first equilibrium, F(., sigma)", "-64/75",
                            -64.0 / 75.0, check_e2(f, s3a.state).value_at_sigma, 1e-10);
  if (max_abs_difference(s3a.state, rs3a) > 1e-10) r3a.pass = false;
  rows.push_back(r3a);

  const RiemannState rs3b({2, 2}, {0.5 + std::sqrt(0.5) / 2.0, 0.5 + std::sqrt(1.0 / 3.0) / 2.0,
                                   0.5 + std::sqrt(0.5) / 2.0, 0.5 - std::sqrt(1.0 / 3.0) / 2.0});
  const TraceSolution s3b = rs3_solve(f, ThetaWeights({2, 2}, {0.5, 0.5, 0.5, 0.5}),
                                      CrossingCapacity(7.0 / 6.0), rs3b);
  ReproRow r3b = scalar_row("rs3-e2-second", "RS3 second equilibrium, F(., sigma)", "-2/3",
                            -2.0 / 3.0, check_e2(f, s3b.state).value_at_sigma, 1e-10);
  if (max_abs_difference(s3b.state, rs3b) > 1e-10) r3b.pass = false;
  rows.push_back(r3b);

  const auto e1a = rs_e1_2x2_solve(f, RiemannState({2, 2}, {0.25, 0.75, 0.25, 0.25}));
  const auto e1b = rs_e1_2x2_solve(f, RiemannState({2, 2}, {0.75, 0.25, 0.25, 0.25}));
  const double e1_err = std::max(max_error(e1a.state.rho(), {0.25, 0.5, 0.25, 0.5}),
                                 max_error(e1b.state.rho(), {0.5, 0.25, 0.5, 0.25}));
  rows.push_back({"e1-2x2", "2x2 entropy solver on (1/4,3/4,1/4,1/4) and (3/4,1/4,1/4,1/4)",
                  "(1/4, 1/2, 1/4, 1/2) and (1/2, 1/4, 1/2, 1/4)",
                  join(e1a.state.rho()) + " and " + join(e1b.state.rho()), e1_err, 0.0,
                  e1_err == 0.0});
  return rows;
}

std::vector<SweepSummary> property_sweep(std::size_t samples, std::uint64_t seed) {
  const FluxModel f = FluxModel::quadratic();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&](NodeTopology t) {
    std::vector<double> rho(t.arcs());
    for (double& r : rho) r = u(rng);
    return RiemannState(t, std::move(rho));
  };

  SweepSummary rs2_e2{"rs2 satisfies E2 (2x2, random theta)", samples, 0};
  SweepSummary e1{"rs_e1_2x2 output satisfies E1 and is a fixed point", samples, 0};
  SweepSummary rs2_half{"rs2 with theta = 1/2 satisfies E1", samples, 0};
  const RsE1TwoByTwoSolver e1_solver(f);
  const Rs2Solver half(f, ThetaWeights({2, 2}, {0.5, 0.5, 0.5, 0.5}));
  for (std::size_t s = 0; s < samples; ++s) {
    const double a = 0.05 + 0.9 * u(rng);
    const double b = 0.05 + 0.9 * u(rng);
    const Rs2Solver rs2(f, ThetaWeights({2, 2}, {a, 1.0 - a, b, 1.0 - b}));
    if (!check_e2(f, rs2(draw({2, 2})).state).satisfied_e2) ++rs2_e2.failures;
    const TraceSolution out = e1_solver(draw({2, 2}));
    if (!check_e1(f, out.state).satisfied_e1 || !is_equilibrium(e1_solver, out.state))
      ++e1.failures;
    if (!check_e1(f, half(draw({2, 2})).state).satisfied_e1) ++rs2_half.failures;
  }
  return {rs2_e2, e1, rs2_half};
}

}  // namespace junction
