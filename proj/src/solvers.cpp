#include "junction/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "junction/errors.hpp"
#include "junction/projection.hpp"

namespace junction {

namespace {

constexpr double kWeightSum = 1e-12;

void require_topology(const RiemannState& initial, const NodeTopology& expected,
                      const std::string& who) {
  if (initial.topology() == expected) return;
  std::ostringstream msg;
  msg << who << ": topology mismatch, solver is " << expected.n << "x" << expected.m
      << " but data is " << initial.n() << "x" << initial.m();
  throw TopologyError(msg.str());
}

std::vector<double> demand_caps(const FluxModel& model, const RiemannState& s) {
  std::vector<double> caps;
  for (double r : s.incoming()) caps.push_back(model.demand(r).upper);
  return caps;
}

std::vector<double> supply_caps(const FluxModel& model, const RiemannState& s) {
  std::vector<double> caps;
  for (double r : s.outgoing()) caps.push_back(model.supply(r).upper);
  return caps;
}

}  // namespace

ThetaWeights::ThetaWeights(NodeTopology topology, std::vector<double> theta)
    : topology_(topology), theta_(std::move(theta)) {
  if (theta_.size() != topology_.arcs()) {
    std::ostringstream msg;
    msg << "theta: expected " << topology_.arcs() << " weights, got " << theta_.size();
    throw InputError(msg.str());
  }
  double in = 0.0;
  double out = 0.0;
  for (std::size_t l = 0; l < theta_.size(); ++l) {
    if (!(theta_[l] > 0.0)) throw InputError("theta: weights must be strictly positive");
    (topology_.incoming(l) ? in : out) += theta_[l];
  }
  if (std::abs(in - 1.0) > kWeightSum || std::abs(out - 1.0) > kWeightSum)
    throw InputError("theta: incoming and outgoing weights must each sum to 1");
}

CrossingCapacity::CrossingCapacity(double gamma_j) : gamma_j_(gamma_j) {
  if (!(gamma_j > 0.0) || !std::isfinite(gamma_j))
    throw InputError("gamma_j: node capacity must be positive");
}

// ---------------------------------------------------------------- RS1

Rs1Solver::Rs1Solver(FluxModel model, DistributionMatrix A, LpMethod method)
    : model_(std::move(model)), A_(std::move(A)), method_(method) {
  if (A_.cols() > A_.rows())
    throw InvalidMatrixError("rs1: the set N is empty when n > m");
  if (!matrix_in_N(A_, topology()))
    throw InvalidMatrixError("rs1: distribution matrix is not in N");
}

std::vector<double> Rs1Solver::incoming_fluxes(const RiemannState& initial) const {
  require_topology(initial, topology(), "rs1");
  const auto caps_in = demand_caps(model_, initial);
  const auto caps_out = supply_caps(model_, initial);
  return lp_maximize_box_polytope(caps_in, caps_out, A_, method_);
}

TraceSolution Rs1Solver::solve(const RiemannState& initial) const {
  const auto gamma_in = incoming_fluxes(initial);
  const auto caps_out = supply_caps(model_, initial);
  auto gamma_out = A_.apply(gamma_in);
  std::vector<double> gamma(gamma_in);
  for (std::size_t j = 0; j < gamma_out.size(); ++j)
    gamma.push_back(std::clamp(gamma_out[j], 0.0, caps_out[j]));
  return traces_from_fluxes(model_, initial, gamma);
}

// ---------------------------------------------------------------- RS2

Rs2Solver::Rs2Solver(FluxModel model, ThetaWeights theta)
    : model_(std::move(model)), theta_(std::move(theta)) {}

TraceSolution Rs2Solver::solve(const RiemannState& initial) const {
  require_topology(initial, theta_.topology(), "rs2");
  const std::size_t n = initial.n();
  const auto caps_in = demand_caps(model_, initial);
  const auto caps_out = supply_caps(model_, initial);
  const double total = std::min(std::accumulate(caps_in.begin(), caps_in.end(), 0.0),
                                std::accumulate(caps_out.begin(), caps_out.end(), 0.0));
  std::vector<double> target_in;
  std::vector<double> target_out;
  for (std::size_t l = 0; l < initial.size(); ++l)
    (l < n ? target_in : target_out).push_back(total * theta_[l]);
  auto gamma = project_capped_simplex(target_in, caps_in, total);
  const auto gamma_out = project_capped_simplex(target_out, caps_out, total);
  gamma.insert(gamma.end(), gamma_out.begin(), gamma_out.end());
  return traces_from_fluxes(model_, initial, gamma);
}

// ---------------------------------------------------------------- RS3

Rs3Solver::Rs3Solver(FluxModel model, ThetaWeights theta, CrossingCapacity capacity)
    : model_(std::move(model)), theta_(std::move(theta)), capacity_(capacity) {
  if (theta_.topology().n != theta_.topology().m)
    throw TopologyError("rs3: topology needs as many outgoing as incoming arcs");
}

TraceSolution Rs3Solver::solve(const RiemannState& initial) const {
  if (initial.n() != initial.m())
    throw TopologyError("rs3: topology needs as many outgoing as incoming arcs");
  require_topology(initial, theta_.topology(), "rs3");
  const std::size_t n = initial.n();
  const auto caps_in = demand_caps(model_, initial);
  const auto caps_out = supply_caps(model_, initial);
  std::vector<double> lane(n);
  for (std::size_t i = 0; i < n; ++i) lane[i] = std::min(caps_in[i], caps_out[i]);
  const double total =
      std::min(std::accumulate(lane.begin(), lane.end(), 0.0), capacity_.value());
  std::vector<double> target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = total * theta_[i];
  auto gamma = project_capped_simplex(target, lane, total);
  gamma.insert(gamma.end(), gamma.begin(), gamma.begin() + static_cast<long>(n));
  return traces_from_fluxes(model_, initial, gamma);
}

// ---------------------------------------------------------------- 1x1

TraceSolution Rs1x1Solver::solve(const RiemannState& initial) const {
  require_topology(initial, {1, 1}, "rs_1x1");
  const double s = model_.sigma();
  const double r1 = initial[0];
  const double r2 = initial[1];
  double t1 = r1;
  double t2 = r2;
  if (r1 == r2) {
    // both kept
  } else if (std::max(r1, r2) <= s) {
    t2 = r1;
  } else if (std::min(r1, r2) >= s) {
    t1 = r2;
  } else if (r1 < s && s < r2) {
    const double f1 = model_(r1);
    const double f2 = model_(r2);
    if (std::abs(f1 - f2) <= tol::kFluxMatch) {
      // both kept
    } else if (f1 > f2) {
      t1 = r2;
    } else {
      t2 = r1;
    }
  } else {
    t1 = s;
    t2 = s;
  }
  return make_trace_solution(model_, initial, RiemannState({1, 1}, {t1, t2}));
}

// ---------------------------------------------------------------- 2x2 (E1)

E1Construction RsE1TwoByTwoSolver::solve_detailed(const RiemannState& initial) const {
  require_topology(initial, {2, 2}, "rs_e1_2x2");
  const FluxModel& f = model_;
  const double s = f.sigma();
  const double fs = f.f_max();
  const auto& x = initial.rho();
  std::vector<double> y(x);
  E1Construction out;

  std::vector<std::size_t> bad;
  for (std::size_t l = 0; l < 4; ++l)
    if (l < 2 ? x[l] < s : x[l] > s) bad.push_back(l);
  const int h = static_cast<int>(bad.size());
  out.bad_count = h;

  switch (h) {
    case 0:
      std::fill(y.begin(), y.end(), s);
      out.subcase = "all good";
      break;
    case 1: {
      const std::size_t b = bad[0];
      if (b < 2) {
        y[1 - b] = s;
        y[2] = y[0];
        y[3] = y[1];
        out.subcase = "one bad incoming";
      } else {
        y[5 - b] = s;
        y[0] = y[2];
        y[1] = y[3];
        out.subcase = "one bad outgoing";
      }
      break;
    }
    case 2: {
      const std::size_t i = bad[0];
      const std::size_t j = bad[1];
      if (j < 2) {
        y[2] = x[0];
        y[3] = x[1];
        out.subcase = "two bad incoming";
      } else if (i >= 2) {
        y[0] = x[2];
        y[1] = x[3];
        out.subcase = "two bad outgoing";
      } else {
        y[1 - i] = x[j];
        y[5 - j] = x[i];
        out.subcase = "one bad on each side";
      }
      break;
    }
    case 3: {
      std::size_t good = 0;
      while (std::find(bad.begin(), bad.end(), good) != bad.end()) ++good;
      // Swap both pairs so the good datum sits on arc 2 or arc 3.
      std::array<std::size_t, 4> p{0, 1, 2, 3};
      if (good == 0 || good == 3) p = {1, 0, 3, 2};
      std::array<double, 4> c{};
      for (std::size_t k = 0; k < 4; ++k) c[k] = x[p[k]];
      std::array<double, 4> r = c;
      const double f1 = f(c[0]);
      const double f2 = f(c[1]);
      const double f3 = f(c[2]);
      const double f4 = f(c[3]);
      if (good < 2) {
        const double target = f3 + f4 - f1;
        if (target >= std::min(f3, f4) && target <= fs) {
          r[1] = trace_in_from_flux(f, c[1], target);
          out.subcase = "three bad, good incoming, interior flux";
        } else if (target > fs && f3 >= f4) {
          r = {c[0], c[3], c[0], c[3]};
          out.subcase = "three bad, good incoming, excess flux, f3 >= f4";
        } else if (target > fs) {
          r = {c[0], c[2], c[2], c[0]};
          out.subcase = "three bad, good incoming, excess flux, f3 < f4";
        } else {
          r = {c[2], c[3], c[2], c[3]};
          out.subcase = "three bad, good incoming, deficit flux";
        }
      } else {
        const double target = f1 + f2 - f4;
        if (target >= std::min(f1, f2) && target <= fs) {
          r[2] = trace_out_from_flux(f, c[2], target);
          out.subcase = "three bad, good outgoing, interior flux";
        } else if (target > fs && f1 >= f2) {
          r = {c[3], c[1], c[1], c[3]};
          out.subcase = "three bad, good outgoing, excess flux, f1 >= f2";
        } else if (target > fs) {
          r = {c[0], c[3], c[0], c[3]};
          out.subcase = "three bad, good outgoing, excess flux, f1 < f2";
        } else {
          r = {c[0], c[1], c[0], c[1]};
          out.subcase = "three bad, good outgoing, deficit flux";
        }
      }
      for (std::size_t k = 0; k < 4; ++k) y[p[k]] = r[k];
      out.permutation = p;
      break;
    }
    default: {
      // Incoming sorted by increasing flux, outgoing by decreasing flux.
      const std::array<std::size_t, 4> p{
          f(x[0]) <= f(x[1]) ? 0u : 1u, f(x[0]) <= f(x[1]) ? 1u : 0u,
          f(x[2]) >= f(x[3]) ? 2u : 3u, f(x[2]) >= f(x[3]) ? 3u : 2u};
      out.permutation = p;
      const double f1 = f(x[p[0]]);
      const double f2 = f(x[p[1]]);
      const double f3 = f(x[p[2]]);
      const double f4 = f(x[p[3]]);
      if (std::abs(f1 + f2 - f3 - f4) <= tol::kFluxMatch) {
        out.subcase = "four bad, balanced";
      } else if (f1 + f2 < f3 + f4) {
        if (f4 > f2) {
          y[2] = x[0];
          y[3] = x[1];
          out.subcase = "four bad, outgoing excess, copy incoming";
        } else {
          y[p[2]] = trace_out_from_flux(f, x[p[2]], f1 + f2 - f4);
          out.subcase = "four bad, outgoing excess, adjust outgoing";
        }
      } else {
        if (f1 > f3) {
          y[0] = x[2];
          y[1] = x[3];
          out.subcase = "four bad, incoming excess, copy outgoing";
        } else {
          y[p[1]] = trace_in_from_flux(f, x[p[1]], f3 + f4 - f1);
          out.subcase = "four bad, incoming excess, adjust incoming";
        }
      }
      break;
    }
  }
  out.solution = make_trace_solution(f, initial, RiemannState({2, 2}, std::move(y)));
  return out;
}

TraceSolution RsE1TwoByTwoSolver::solve(const RiemannState& initial) const {
  return solve_detailed(initial).solution;
}

// ---------------------------------------------------------------- wrappers

TraceSolution rs1_solve(const FluxModel& model, const DistributionMatrix& A,
                        const RiemannState& initial) {
  return Rs1Solver(model, A).solve(initial);
}

TraceSolution rs2_solve(const FluxModel& model, const ThetaWeights& theta,
                        const RiemannState& initial) {
  return Rs2Solver(model, theta).solve(initial);
}

TraceSolution rs3_solve(const FluxModel& model, const ThetaWeights& theta,
                        const CrossingCapacity& capacity, const RiemannState& initial) {
  return Rs3Solver(model, theta, capacity).solve(initial);
}

TraceSolution rs_1x1_solve(const FluxModel& model, const RiemannState& initial) {
  return Rs1x1Solver(model).solve(initial);
}

TraceSolution rs_e1_2x2_solve(const FluxModel& model, const RiemannState& initial) {
  return RsE1TwoByTwoSolver(model).solve(initial);
}

std::unique_ptr<RiemannSolver> make_solver(const FluxModel& model, const SolverConfig& config,
                                           const NodeTopology& topology) {
  const std::string& name = config.solver;
  if (name == "rs1") {
    if (!config.A) throw InputError("solver rs1 needs \"A\"");
    DistributionMatrix A(*config.A);
    if (A.cols() != topology.n || A.rows() != topology.m)
      throw TopologyError("rs1: matrix A does not fit the node");
    return std::make_unique<Rs1Solver>(model, std::move(A));
  }
  if (name == "rs2" || name == "rs3") {
    if (!config.theta) throw InputError("solver " + name + " needs \"theta\"");
    if (name == "rs3" && topology.n != topology.m)
      throw TopologyError("rs3: topology needs as many outgoing as incoming arcs");
    ThetaWeights theta(topology, *config.theta);
    if (name == "rs2") return std::make_unique<Rs2Solver>(model, std::move(theta));
    if (!config.gamma_j) throw InputError("solver rs3 needs \"gamma_j\"");
    return std::make_unique<Rs3Solver>(model, std::move(theta), CrossingCapacity(*config.gamma_j));
  }
  if (name == "rs_1x1") {
    if (!(topology == NodeTopology{1, 1})) throw TopologyError("rs_1x1: node must be 1x1");
    return std::make_unique<Rs1x1Solver>(model);
  }
  if (name == "rs_e1_2x2") {
    if (!(topology == NodeTopology{2, 2})) throw TopologyError("rs_e1_2x2: node must be 2x2");
    return std::make_unique<RsE1TwoByTwoSolver>(model);
  }
  throw InputError("unknown solver \"" + name + "\"");
}

}  // namespace junction
