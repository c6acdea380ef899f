#include "junction/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "junction/errors.hpp"

namespace junction {

namespace {

constexpr double kTimeTol = 1e-14;

}  // namespace

double godunov_interface_flux(const FluxModel& model, double rho_l, double rho_r) {
  return std::min(model.demand(rho_l).upper, model.supply(rho_r).upper);
}

double ArcGrid::mass() const { return dx * std::accumulate(rho.begin(), rho.end(), 0.0); }

Network Network::uniform(const RiemannState& data, std::size_t cells, double length) {
  if (cells < 1) throw InputError("simulation needs at least one cell per arc");
  if (!(length > 0.0)) throw InputError("arc length must be positive");
  Network net{data.topology(), {}};
  for (std::size_t l = 0; l < data.size(); ++l)
    net.arcs.push_back({data.topology().incoming(l) ? ArcOrientation::incoming
                                                    : ArcOrientation::outgoing,
                        length / static_cast<double>(cells),
                        std::vector<double>(cells, data[l])});
  return net;
}

RiemannState Network::node_state() const {
  std::vector<double> rho;
  for (const auto& arc : arcs) rho.push_back(std::clamp(arc.node_cell(), 0.0, 1.0));
  return RiemannState(topology, std::move(rho));
}

double Network::total_mass() const {
  double m = 0.0;
  for (const auto& arc : arcs) m += arc.mass();
  return m;
}

double Network::min_dx() const {
  double dx = arcs.front().dx;
  for (const auto& arc : arcs) dx = std::min(dx, arc.dx);
  return dx;
}

StepReport step(Network& net, const RiemannSolver& solver, double dt) {
  const FluxModel& model = solver.flux();
  const double speed = model.max_speed();
  for (const auto& arc : net.arcs) {
    if (arc.rho.empty() || !(arc.dx > 0.0)) throw InputError("arc grid is empty");
    const double number = dt * speed / arc.dx;
    if (number > 1.0 + 1e-12) {
      std::ostringstream msg;
      msg << "CFL number " << number << " exceeds 1";
      throw CflError(msg.str());
    }
  }

  StepReport report;
  const TraceSolution node = solver(net.node_state());
  report.node_flux = node.gamma;
  report.node_imbalance = flux_imbalance(node.state, node.gamma);

  std::vector<double> faces;
  for (std::size_t l = 0; l < net.arcs.size(); ++l) {
    ArcGrid& arc = net.arcs[l];
    const std::size_t cells = arc.rho.size();
    faces.assign(cells + 1, 0.0);
    for (std::size_t k = 1; k < cells; ++k)
      faces[k] = godunov_interface_flux(model, arc.rho[k - 1], arc.rho[k]);
    if (arc.orientation == ArcOrientation::incoming) {
      faces.front() = model(arc.rho.front());
      faces.back() = node.gamma[l];
      report.inflow += faces.front();
    } else {
      faces.front() = node.gamma[l];
      faces.back() = model(arc.rho.back());
      report.outflow += faces.back();
    }
    const double ratio = dt / arc.dx;
    for (std::size_t k = 0; k < cells; ++k)
      arc.rho[k] = std::clamp(arc.rho[k] - ratio * (faces[k + 1] - faces[k]), 0.0, 1.0);
  }
  return report;
}

SimResult run(const SimConfig& config, Network initial, const RiemannSolver& solver) {
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw InputError("cfl must lie in (0, 1]");
  if (!(config.t_end >= 0.0)) throw InputError("t_end must be nonnegative");
  if (initial.arcs.size() != initial.topology.arcs())
    throw InputError("network has the wrong number of arcs");

  SimResult result;
  result.final_state = std::move(initial);
  Network& net = result.final_state;
  const double dt_max = config.cfl * net.min_dx() / std::max(solver.flux().max_speed(), 1e-300);
  const double mass0 = net.total_mass();

  std::vector<double> pending(config.snapshot_times);
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;
  auto snapshot = [&] {
    Snapshot s{result.t, {}};
    for (const auto& arc : net.arcs) s.rho.push_back(arc.rho);
    result.snapshots.push_back(std::move(s));
  };
  auto flush_snapshots = [&] {
    while (next_snapshot < pending.size() && pending[next_snapshot] <= result.t + kTimeTol) {
      snapshot();
      ++next_snapshot;
    }
  };

  double cum_in = 0.0;
  double cum_out = 0.0;
  result.ledger.push_back({0.0, mass0, 0.0, 0.0});
  flush_snapshots();
  while (result.t < config.t_end - kTimeTol &&
         (config.max_steps == 0 || result.steps < config.max_steps)) {
    double dt = std::min(dt_max, config.t_end - result.t);
    if (next_snapshot < pending.size()) dt = std::min(dt, pending[next_snapshot] - result.t);
    const StepReport rep = step(net, solver, dt);
    cum_in += rep.inflow * dt;
    cum_out += rep.outflow * dt;
    result.t += dt;
    ++result.steps;
    const double mass = net.total_mass();
    result.ledger.push_back({result.t, mass, cum_in, cum_out});
    result.max_mass_drift =
        std::max(result.max_mass_drift, std::abs(mass - mass0 - (cum_in - cum_out)));
    result.max_node_imbalance = std::max(result.max_node_imbalance, std::abs(rep.node_imbalance));
    flush_snapshots();
  }
  return result;
}

}  // namespace junction
