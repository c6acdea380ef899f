#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "junction/flux.hpp"
#include "junction/tolerances.hpp"

namespace junction {

/// A node with n incoming and m outgoing arcs. Arcs are indexed
/// 0 .. n-1 (incoming) followed by n .. n+m-1 (outgoing).
struct NodeTopology {
  std::size_t n = 1;
  std::size_t m = 1;

  std::size_t arcs() const { return n + m; }
  bool incoming(std::size_t arc) const { return arc < n; }
  friend bool operator==(const NodeTopology&, const NodeTopology&) = default;
};

/// One density per arc: initial Riemann data or node traces.
class RiemannState {
 public:
  RiemannState() = default;
  /// Throws InputError unless n, m >= 1, rho has n + m entries and every
  /// entry lies in [0, 1].
  RiemannState(NodeTopology topology, std::vector<double> rho);

  const NodeTopology& topology() const { return topology_; }
  std::size_t n() const { return topology_.n; }
  std::size_t m() const { return topology_.m; }
  std::size_t size() const { return rho_.size(); }
  double operator[](std::size_t arc) const { return rho_[arc]; }
  const std::vector<double>& rho() const { return rho_; }
  std::span<const double> incoming() const { return {rho_.data(), topology_.n}; }
  std::span<const double> outgoing() const {
    return {rho_.data() + topology_.n, topology_.m};
  }

 private:
  NodeTopology topology_;
  std::vector<double> rho_;
};

/// Output of a Riemann solver: traces, their fluxes, and whether they are
/// flux-balanced and wave-admissible for the initial data they came from.
struct TraceSolution {
  RiemannState state;
  std::vector<double> gamma;
  bool balanced = false;
  bool admissible = false;
};

/// Abstract Riemann solver at a node: maps initial data to traces.
/// Implementations must be free of side effects.
class RiemannSolver {
 public:
  virtual ~RiemannSolver() = default;

  virtual TraceSolution solve(const RiemannState& initial) const = 0;
  virtual std::string name() const = 0;
  virtual const FluxModel& flux() const = 0;

  TraceSolution operator()(const RiemannState& initial) const { return solve(initial); }
};

/// Incoming trace carrying flux gamma: rho0 itself when f(rho0) matches gamma,
/// otherwise the preimage on the decreasing branch (>= sigma).
/// Throws InadmissibleFluxError when gamma is not in demand(rho0).
double trace_in_from_flux(const FluxModel& model, double rho0, double gamma);

/// Outgoing mirror of trace_in_from_flux: keeps rho0 or takes the preimage on
/// the increasing branch (<= sigma). Throws unless gamma is in supply(rho0).
double trace_out_from_flux(const FluxModel& model, double rho0, double gamma);

/// Sum of incoming fluxes minus sum of outgoing fluxes.
double flux_imbalance(const RiemannState& topology_only,
                      std::span<const double> gamma);

/// Assembles a TraceSolution from traces, evaluating fluxes, balance and
/// trace-set membership against the initial data.
TraceSolution make_trace_solution(const FluxModel& model,
                                  const RiemannState& initial,
                                  const RiemannState& traces);

/// Reconstructs traces from a full flux vector (incoming then outgoing) and
/// assembles the solution.
TraceSolution traces_from_fluxes(const FluxModel& model,
                                 const RiemannState& initial,
                                 std::span<const double> gamma);

bool check_flux_balance(const TraceSolution& sol, double eps = tol::kBalance);

/// Largest componentwise |a - b|; throws TopologyError on mismatch.
double max_abs_difference(const RiemannState& a, const RiemannState& b);

/// solver(state) == state componentwise within eps.
bool is_equilibrium(const RiemannSolver& solver, const RiemannState& state,
                    double eps = tol::kState);

/// solver(solver(state)) == solver(state) componentwise within eps.
bool check_consistency(const RiemannSolver& solver, const RiemannState& state,
                       double eps = tol::kState);

}  // namespace junction
