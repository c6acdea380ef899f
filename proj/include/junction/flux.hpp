#pragma once

#include <string_view>
#include <vector>

namespace junction {

enum class FluxKind { quadratic, triangular, tabulated };

std::string_view to_string(FluxKind kind);

enum class Branch { increasing, decreasing };

/// Closed flux interval [lower, upper]; lower is always 0.
struct FluxInterval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double gamma, double eps = 0.0) const {
    return gamma >= lower - eps && gamma <= upper + eps;
  }
};

/// A concave-type flux on [0, 1] with f(0) = f(1) = 0 and a unique sonic
/// point sigma: strictly increasing on [0, sigma], strictly decreasing on
/// [sigma, 1].
///
/// Three kinds are supported:
///   - quadratic:  f(rho) = scale * rho * (1 - rho), sigma = 1/2;
///   - triangular: piecewise linear through (0,0), (sigma, f_max), (1,0);
///   - tabulated:  piecewise-linear interpolation of (rho, f) samples.
///
/// Instances are immutable and cheap to copy.
class FluxModel {
 public:
  /// The default model is 4 rho (1 - rho).
  FluxModel() : FluxModel(quadratic()) {}

  static FluxModel quadratic(double scale = 4.0);
  static FluxModel triangular(double sigma, double f_max);
  /// Samples must start at rho = 0, end at rho = 1, be strictly increasing in
  /// rho, vanish at both ends and rise strictly to a single peak then fall
  /// strictly. Throws InputError otherwise.
  static FluxModel tabulated(std::vector<double> rho, std::vector<double> flux);

  FluxKind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  double f_max() const { return f_max_; }
  /// Quadratic scale; zero for the piecewise-linear kinds.
  double scale() const { return scale_; }
  /// Breakpoints of the piecewise-linear kinds; empty for quadratic.
  const std::vector<double>& nodes_rho() const { return rho_; }
  const std::vector<double>& nodes_flux() const { return flux_; }

  /// f(rho). Throws DomainError outside [0, 1].
  double eval(double rho) const;
  double operator()(double rho) const { return eval(rho); }

  /// Largest |f'| over [0, 1]; bounds the characteristic speeds.
  double max_speed() const;

  /// The companion density with the same flux; tau(sigma) = sigma.
  double tau(double rho) const;

  /// Omega for an incoming arc: [0, f(rho0)] below sigma, [0, f(sigma)] above.
  FluxInterval demand(double rho0) const;
  /// Omega for an outgoing arc: [0, f(sigma)] below sigma, [0, f(rho0)] above.
  FluxInterval supply(double rho0) const;

  /// Membership of rho in the admissible trace set of an incoming arc with
  /// initial datum rho0: {rho0} U ]tau(rho0), 1] when rho0 <= sigma, and
  /// [sigma, 1] otherwise. Densities within eps of tau(rho0) are treated as
  /// the excluded boundary.
  bool trace_set_contains_in(double rho0, double rho, double eps = 1e-12) const;
  /// Mirror for outgoing arcs: [0, sigma] when rho0 <= sigma, and
  /// {rho0} U [0, tau(rho0)[ otherwise.
  bool trace_set_contains_out(double rho0, double rho, double eps = 1e-12) const;

  /// The density on the requested monotone branch with f(rho) = gamma,
  /// found by bisection. Throws InfeasibleFluxError when gamma > f(sigma)
  /// (beyond the root tolerance) or gamma < 0.
  double invert(double gamma, Branch branch) const;

 private:
  FluxModel(FluxKind kind, double sigma, double f_max, double scale,
            std::vector<double> rho, std::vector<double> flux);

  void check_density(double rho) const;

  FluxKind kind_;
  double sigma_;
  double f_max_;
  double scale_;
  std::vector<double> rho_;
  std::vector<double> flux_;
};

}  // namespace junction
