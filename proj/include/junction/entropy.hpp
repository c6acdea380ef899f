#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "junction/distribution.hpp"
#include "junction/junction.hpp"

namespace junction {

/// Node entropy flux
///   F(rho, k) = sum_in sgn(rho_i - k)(f(rho_i) - f(k))
///             - sum_out sgn(rho_j - k)(f(rho_j) - f(k)),  sgn(0) = 0.
double entropy_flux(const FluxModel& model, const RiemannState& state, double k);

struct EntropyReport {
  std::vector<std::pair<double, double>> candidates;  ///< (k, F)
  double min_value = 0.0;
  double argmin_k = 0.0;
  double value_at_sigma = 0.0;
  bool satisfied_e1 = false;
  bool satisfied_e2 = false;
  /// False for reports from check_e2, which only look at k = sigma.
  bool e1_evaluated = false;
};

/// F at k = sigma. Throws UnbalancedError for unbalanced traces.
EntropyReport check_e2(const FluxModel& model, const RiemannState& state,
                       double eps = tol::kEntropy);

/// F over {0, 1, sigma} and every trace density. Between consecutive traces
/// F is an affine function of f(k), so this set holds the minimum over
/// [0, 1]. Throws UnbalancedError for unbalanced traces.
EntropyReport check_e1(const FluxModel& model, const RiemannState& state,
                       double eps = tol::kEntropy);

struct EquilibriumClassification {
  int bad_count = 0;
  /// permutation[k] is the original arc at sorted position k.
  std::array<std::size_t, 4> permutation{0, 1, 2, 3};
  std::optional<std::string> row;  ///< matched table row, if any
  bool admissible = false;
};

/// Sorts each side by density, counts bad data and matches the admissible
/// configurations for that count. Throws TopologyError unless 2x2 and
/// UnbalancedError for unbalanced traces.
EquilibriumClassification classify_2x2(const FluxModel& model, const RiemannState& state);

/// sum_{l not in H} (f(rho_l) - f(sigma)) + sum_{l in H} (f(sigma) - f(rho_l)).
/// Arc indices in H are zero-based. No face check.
double restricted_entropy_closed_form(const FluxModel& model, const RiemannState& traces,
                                      const std::vector<std::size_t>& H);

/// Arcs whose flux equals the maximum of their admissible flux set.
std::vector<std::size_t> active_set(const FluxModel& model, const RiemannState& initial,
                                    std::span<const double> gamma, double eps = tol::kBalance);

struct RestrictedEntropy {
  double direct = 0.0;       ///< F(traces, sigma)
  double closed_form = 0.0;
};

/// Evaluates F(., sigma) on a face both directly and in closed form.
/// Throws PreconditionError when |H| > n - 1, FaceMismatchError when the
/// traces are not on the face H for the given initial data and A.
RestrictedEntropy restricted_entropy_G(const FluxModel& model, const RiemannState& initial,
                                       const DistributionMatrix& A, const RiemannState& traces,
                                       const std::vector<std::size_t>& H);

/// Incoming flux vectors drawn from the face of Omega selected by H, by
/// rejection sampling in a parametrization of the affine hull. Points stay
/// 1e-9 inside the strict inequalities. May return fewer than count points
/// (none for an empty face).
std::vector<std::vector<double>> sample_face_fluxes(const FluxModel& model,
                                                    const RiemannState& initial,
                                                    const DistributionMatrix& A,
                                                    const std::vector<std::size_t>& H,
                                                    std::size_t count, std::mt19937_64& rng);

/// Traces for an incoming flux vector: outgoing fluxes from A, densities
/// from the trace reconstruction rules.
RiemannState face_traces(const FluxModel& model, const RiemannState& initial,
                         const DistributionMatrix& A, std::span<const double> gamma_in);

struct FaceReport {
  bool empty = true;
  std::size_t samples = 0;
  double min_offset = 0.0;  ///< min of G(Y(gamma)) - 2 E_free(gamma)
  double max_offset = 0.0;
  double closed_form_error = 0.0;  ///< max |closed form - direct|
  bool constant = false;
};

/// Checks that G(Y(gamma)) - 2 * sum_{i not in H} gamma_i does not vary on
/// the face. Throws PreconditionError when |H| >= n.
FaceReport face_objective_equivalence(const FluxModel& model, const RiemannState& initial,
                                      const DistributionMatrix& A,
                                      const std::vector<std::size_t>& H, std::size_t samples,
                                      std::mt19937_64& rng, double eps = 1e-9);

}  // namespace junction
