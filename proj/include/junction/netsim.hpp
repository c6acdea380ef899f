#pragma once

#include <cstddef>
#include <vector>

#include "junction/junction.hpp"

namespace junction {

/// Godunov flux min(sup demand(rho_l), sup supply(rho_r)).
double godunov_interface_flux(const FluxModel& model, double rho_l, double rho_r);

enum class ArcOrientation { incoming, outgoing };

/// Cell averages on one arc of length cells * dx. Incoming arcs run from the
/// far end to the node (last cell touches the node); outgoing arcs start at
/// the node (cell 0 touches it).
struct ArcGrid {
  ArcOrientation orientation = ArcOrientation::incoming;
  double dx = 0.0;
  std::vector<double> rho;

  double node_cell() const {
    return orientation == ArcOrientation::incoming ? rho.back() : rho.front();
  }
  double mass() const;
};

/// All arcs of one node: n incoming grids followed by m outgoing grids.
struct Network {
  NodeTopology topology;
  std::vector<ArcGrid> arcs;

  /// Uniform profiles with the given per-arc densities.
  static Network uniform(const RiemannState& data, std::size_t cells, double length);

  RiemannState node_state() const;
  double total_mass() const;
  double min_dx() const;
};

struct StepReport {
  std::vector<double> node_flux;  ///< gamma per arc from the node solver
  double inflow = 0.0;            ///< far-end inflow into incoming arcs
  double outflow = 0.0;           ///< far-end outflow from outgoing arcs
  double node_imbalance = 0.0;
};

/// One explicit Godunov step. The node solver is applied to the cells
/// touching the node and its fluxes close the arcs there; far ends use
/// zero-order extrapolation. Throws CflError when dt * max|f'| / dx > 1.
StepReport step(Network& net, const RiemannSolver& solver, double dt);

struct SimConfig {
  double cfl = 0.5;
  double t_end = 1.0;
  std::size_t cells = 200;
  double length = 1.0;
  std::vector<double> snapshot_times;
  std::size_t max_steps = 0;  ///< 0 means no limit
};

struct Snapshot {
  double t = 0.0;
  std::vector<std::vector<double>> rho;
};

struct MassRecord {
  double t = 0.0;
  double total_mass = 0.0;
  double boundary_in = 0.0;   ///< cumulative
  double boundary_out = 0.0;  ///< cumulative
};

struct SimResult {
  Network final_state;
  double t = 0.0;
  std::size_t steps = 0;
  std::vector<Snapshot> snapshots;
  std::vector<MassRecord> ledger;
  double max_mass_drift = 0.0;
  double max_node_imbalance = 0.0;
};

/// Advances to t_end (or max_steps) with dt = cfl * dx / max|f'|, shortening
/// steps to land on snapshot times. Throws InputError for a bad config.
SimResult run(const SimConfig& config, Network initial, const RiemannSolver& solver);

}  // namespace junction
