#include "junction/junction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "junction/errors.hpp"

namespace junction {

RiemannState::RiemannState(NodeTopology topology, std::vector<double> rho)
    : topology_(topology), rho_(std::move(rho)) {
  if (topology_.n < 1 || topology_.m < 1)
    throw InputError("node needs at least one incoming and one outgoing arc");
  if (rho_.size() != topology_.arcs()) {
    std::ostringstream msg;
    msg << "expected " << topology_.arcs() << " densities for a " << topology_.n
        << "x" << topology_.m << " node, got " << rho_.size();
    throw InputError(msg.str());
  }
  for (std::size_t l = 0; l < rho_.size(); ++l) {
    if (!(rho_[l] >= 0.0 && rho_[l] <= 1.0)) {
      std::ostringstream msg;
      msg << "density on arc " << l + 1 << " is " << rho_[l] << ", outside [0, 1]";
      throw InputError(msg.str());
    }
  }
}

double trace_in_from_flux(const FluxModel& model, double rho0, double gamma) {
  const FluxInterval omega = model.demand(rho0);
  if (!omega.contains(gamma, tol::kFluxMatch)) {
    std::ostringstream msg;
    msg << "incoming flux " << gamma << " outside demand [0, " << omega.upper << "]";
    throw InadmissibleFluxError(msg.str());
  }
  if (std::abs(model(rho0) - gamma) <= tol::kFluxMatch) return rho0;
  return model.invert(std::clamp(gamma, 0.0, omega.upper), Branch::decreasing);
}

double trace_out_from_flux(const FluxModel& model, double rho0, double gamma) {
  const FluxInterval omega = model.supply(rho0);
  if (!omega.contains(gamma, tol::kFluxMatch)) {
    std::ostringstream msg;
    msg << "outgoing flux " << gamma << " outside supply [0, " << omega.upper << "]";
    throw InadmissibleFluxError(msg.str());
  }
  if (std::abs(model(rho0) - gamma) <= tol::kFluxMatch) return rho0;
  return model.invert(std::clamp(gamma, 0.0, omega.upper), Branch::increasing);
}

double flux_imbalance(const RiemannState& topology_only,
                      std::span<const double> gamma) {
  double in = 0.0;
  double out = 0.0;
  for (std::size_t l = 0; l < gamma.size(); ++l)
    (topology_only.topology().incoming(l) ? in : out) += gamma[l];
  return in - out;
}

TraceSolution make_trace_solution(const FluxModel& model,
                                  const RiemannState& initial,
                                  const RiemannState& traces) {
  if (!(initial.topology() == traces.topology()))
    throw TopologyError("traces and initial data have different topologies");
  TraceSolution sol{traces, {}, false, true};
  sol.gamma.reserve(traces.size());
  for (std::size_t l = 0; l < traces.size(); ++l) {
    sol.gamma.push_back(model(traces[l]));
    const bool in_set =
        traces.topology().incoming(l)
            ? model.trace_set_contains_in(initial[l], traces[l], tol::kSet)
            : model.trace_set_contains_out(initial[l], traces[l], tol::kSet);
    sol.admissible = sol.admissible && in_set;
  }
  sol.balanced = check_flux_balance(sol);
  return sol;
}

TraceSolution traces_from_fluxes(const FluxModel& model,
                                 const RiemannState& initial,
                                 std::span<const double> gamma) {
  if (gamma.size() != initial.size())
    throw TopologyError("flux vector length does not match the node");
  std::vector<double> rho(initial.size());
  for (std::size_t l = 0; l < initial.size(); ++l)
    rho[l] = initial.topology().incoming(l)
                 ? trace_in_from_flux(model, initial[l], gamma[l])
                 : trace_out_from_flux(model, initial[l], gamma[l]);
  return make_trace_solution(model, initial,
                             RiemannState(initial.topology(), std::move(rho)));
}

bool check_flux_balance(const TraceSolution& sol, double eps) {
  return std::abs(flux_imbalance(sol.state, sol.gamma)) <= eps;
}

double max_abs_difference(const RiemannState& a, const RiemannState& b) {
  if (!(a.topology() == b.topology()))
    throw TopologyError("states have different topologies");
  double diff = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l)
    diff = std::max(diff, std::abs(a[l] - b[l]));
  return diff;
}

bool is_equilibrium(const RiemannSolver& solver, const RiemannState& state,
                    double eps) {
  return max_abs_difference(solver(state).state, state) <= eps;
}

bool check_consistency(const RiemannSolver& solver, const RiemannState& state,
                       double eps) {
  const RiemannState once = solver(state).state;
  return max_abs_difference(solver(once).state, once) <= eps;
}

}  // namespace junction
