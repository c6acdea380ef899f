#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "junction/distribution.hpp"
#include "junction/junction.hpp"
#include "junction/lp.hpp"

namespace junction {

/// Priority weights: one positive weight per arc, each side summing to 1.
class ThetaWeights {
 public:
  /// Throws InputError on a nonpositive weight, a wrong length or a side
  /// whose weights do not sum to 1 (within 1e-12).
  ThetaWeights(NodeTopology topology, std::vector<double> theta);

  const NodeTopology& topology() const { return topology_; }
  const std::vector<double>& values() const { return theta_; }
  double operator[](std::size_t arc) const { return theta_[arc]; }

 private:
  NodeTopology topology_;
  std::vector<double> theta_;
};

/// Maximal flux through the node; strictly positive.
class CrossingCapacity {
 public:
  explicit CrossingCapacity(double gamma_j);
  double value() const { return gamma_j_; }

 private:
  double gamma_j_;
};

/// Maximizes total flux subject to the distribution matrix A.
class Rs1Solver final : public RiemannSolver {
 public:
  /// Throws InvalidMatrixError unless A lies in N for its own topology.
  Rs1Solver(FluxModel model, DistributionMatrix A, LpMethod method = LpMethod::automatic);

  TraceSolution solve(const RiemannState& initial) const override;
  std::string name() const override { return "rs1"; }
  const FluxModel& flux() const override { return model_; }
  const DistributionMatrix& matrix() const { return A_; }
  NodeTopology topology() const { return {A_.cols(), A_.rows()}; }

  /// Optimal incoming fluxes, before trace reconstruction.
  std::vector<double> incoming_fluxes(const RiemannState& initial) const;

 private:
  FluxModel model_;
  DistributionMatrix A_;
  LpMethod method_;
};

/// Maximal through-flow split by theta and projected on each side.
class Rs2Solver final : public RiemannSolver {
 public:
  Rs2Solver(FluxModel model, ThetaWeights theta);

  TraceSolution solve(const RiemannState& initial) const override;
  std::string name() const override { return "rs2"; }
  const FluxModel& flux() const override { return model_; }
  const ThetaWeights& theta() const { return theta_; }

 private:
  FluxModel model_;
  ThetaWeights theta_;
};

/// Lane-wise crossing limited by the node capacity; requires n = m.
class Rs3Solver final : public RiemannSolver {
 public:
  /// Throws TopologyError when theta is not for an n x n node.
  Rs3Solver(FluxModel model, ThetaWeights theta, CrossingCapacity capacity);

  TraceSolution solve(const RiemannState& initial) const override;
  std::string name() const override { return "rs3"; }
  const FluxModel& flux() const override { return model_; }
  const ThetaWeights& theta() const { return theta_; }
  double capacity() const { return capacity_.value(); }

 private:
  FluxModel model_;
  ThetaWeights theta_;
  CrossingCapacity capacity_;
};

/// The entropy solver for one incoming and one outgoing arc.
class Rs1x1Solver final : public RiemannSolver {
 public:
  explicit Rs1x1Solver(FluxModel model) : model_(std::move(model)) {}

  TraceSolution solve(const RiemannState& initial) const override;
  std::string name() const override { return "rs_1x1"; }
  const FluxModel& flux() const override { return model_; }

 private:
  FluxModel model_;
};

/// Result of the 2x2 entropy solver with the branch it took.
struct E1Construction {
  TraceSolution solution;
  int bad_count = 0;
  /// permutation[k] is the original arc placed at canonical position k.
  std::array<std::size_t, 4> permutation{0, 1, 2, 3};
  std::string subcase;
};

/// Entropy (E1) admissible solver for two incoming and two outgoing arcs,
/// built case by case on the number of bad data.
class RsE1TwoByTwoSolver final : public RiemannSolver {
 public:
  explicit RsE1TwoByTwoSolver(FluxModel model) : model_(std::move(model)) {}

  TraceSolution solve(const RiemannState& initial) const override;
  E1Construction solve_detailed(const RiemannState& initial) const;
  std::string name() const override { return "rs_e1_2x2"; }
  const FluxModel& flux() const override { return model_; }

 private:
  FluxModel model_;
};

TraceSolution rs1_solve(const FluxModel& model, const DistributionMatrix& A,
                        const RiemannState& initial);
TraceSolution rs2_solve(const FluxModel& model, const ThetaWeights& theta,
                        const RiemannState& initial);
TraceSolution rs3_solve(const FluxModel& model, const ThetaWeights& theta,
                        const CrossingCapacity& capacity, const RiemannState& initial);
TraceSolution rs_1x1_solve(const FluxModel& model, const RiemannState& initial);
TraceSolution rs_e1_2x2_solve(const FluxModel& model, const RiemannState& initial);

/// Declarative solver choice, as read from JSON.
struct SolverConfig {
  std::string solver;  ///< rs1, rs2, rs3, rs_1x1 or rs_e1_2x2
  std::optional<std::vector<std::vector<double>>> A;
  std::optional<std::vector<double>> theta;
  std::optional<double> gamma_j;
};

/// Builds the solver for a node. Throws InputError for an unknown name or a
/// missing parameter and TopologyError when parameters do not fit the node.
std::unique_ptr<RiemannSolver> make_solver(const FluxModel& model, const SolverConfig& config,
                                           const NodeTopology& topology);

}  // namespace junction
