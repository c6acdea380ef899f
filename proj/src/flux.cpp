#include "junction/flux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "junction/errors.hpp"
#include "junction/tolerances.hpp"

namespace junction {

namespace {

// Densities this close outside [0, 1] are rounding noise and get clamped.
constexpr double kDensitySlack = 1e-12;

}  // namespace

std::string_view to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::quadratic:
      return "quadratic";
    case FluxKind::triangular:
      return "triangular";
    case FluxKind::tabulated:
      return "tabulated";
  }
  return "unknown";
}

FluxModel::FluxModel(FluxKind kind, double sigma, double f_max, double scale,
                     std::vector<double> rho, std::vector<double> flux)
    : kind_(kind),
      sigma_(sigma),
      f_max_(f_max),
      scale_(scale),
      rho_(std::move(rho)),
      flux_(std::move(flux)) {}

FluxModel FluxModel::quadratic(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InputError("quadratic flux: scale must be positive");
  return FluxModel(FluxKind::quadratic, 0.5, scale / 4.0, scale, {}, {});
}

FluxModel FluxModel::triangular(double sigma, double f_max) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw InputError("triangular flux: sigma must lie in (0, 1)");
  if (!(f_max > 0.0) || !std::isfinite(f_max))
    throw InputError("triangular flux: f_max must be positive");
  return FluxModel(FluxKind::triangular, sigma, f_max, 0.0, {0.0, sigma, 1.0},
                   {0.0, f_max, 0.0});
}

FluxModel FluxModel::tabulated(std::vector<double> rho,
                               std::vector<double> flux) {
  if (rho.size() != flux.size())
    throw InputError("tabulated flux: rho and flux columns differ in length");
  if (rho.size() < 3)
    throw InputError("tabulated flux: need at least three samples");
  if (rho.front() != 0.0 || rho.back() != 1.0)
    throw InputError("tabulated flux: samples must span rho = 0 to rho = 1");
  if (std::abs(flux.front()) > tol::kRoot || std::abs(flux.back()) > tol::kRoot)
    throw InputError("tabulated flux: f(0) and f(1) must vanish");
  flux.front() = 0.0;
  flux.back() = 0.0;
  for (std::size_t k = 1; k < rho.size(); ++k)
    if (!(rho[k] > rho[k - 1]))
      throw InputError("tabulated flux: rho samples must be strictly increasing");
  const auto peak = static_cast<std::size_t>(
      std::max_element(flux.begin(), flux.end()) - flux.begin());
  for (std::size_t k = 1; k <= peak; ++k)
    if (!(flux[k] > flux[k - 1]))
      throw InputError(
          "tabulated flux: not strictly increasing below the maximum");
  for (std::size_t k = peak + 1; k < flux.size(); ++k)
    if (!(flux[k] < flux[k - 1]))
      throw InputError(
          "tabulated flux: not strictly decreasing above the maximum");
  const double sigma = rho[peak];
  const double f_max = flux[peak];
  return FluxModel(FluxKind::tabulated, sigma, f_max, 0.0, std::move(rho),
                   std::move(flux));
}

void FluxModel::check_density(double rho) const {
  if (!(rho >= -kDensitySlack && rho <= 1.0 + kDensitySlack)) {
    std::ostringstream msg;
    msg << "density " << rho << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

double FluxModel::eval(double rho) const {
  check_density(rho);
  rho = std::clamp(rho, 0.0, 1.0);
  if (kind_ == FluxKind::quadratic) return scale_ * rho * (1.0 - rho);
  auto it = std::upper_bound(rho_.begin(), rho_.end(), rho);
  if (it == rho_.end()) return flux_.back();
  const auto hi = static_cast<std::size_t>(it - rho_.begin());
  const auto lo = hi - 1;
  const double w = (rho - rho_[lo]) / (rho_[hi] - rho_[lo]);
  return flux_[lo] + w * (flux_[hi] - flux_[lo]);
}

double FluxModel::max_speed() const {
  if (kind_ == FluxKind::quadratic) return scale_;
  double speed = 0.0;
  for (std::size_t k = 1; k < rho_.size(); ++k)
    speed = std::max(speed, std::abs((flux_[k] - flux_[k - 1]) /
                                     (rho_[k] - rho_[k - 1])));
  return speed;
}

double FluxModel::invert(double gamma, Branch branch) const {
  if (!(gamma >= -tol::kRoot) || gamma > f_max_ + tol::kRoot) {
    std::ostringstream msg;
    msg << "flux " << gamma << " outside [0, f(sigma)] = [0, " << f_max_ << "]";
    throw InfeasibleFluxError(msg.str());
  }
  gamma = std::clamp(gamma, 0.0, f_max_);
  if (gamma == f_max_) return sigma_;
  const bool up = branch == Branch::increasing;
  if (gamma == 0.0) return up ? 0.0 : 1.0;

  if (kind_ == FluxKind::quadratic) {
    // rho (1 - rho) = gamma / scale, written without cancellation.
    const double q = gamma / scale_;
    const double rising = 2.0 * q / (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * q)));
    return up ? rising : 1.0 - rising;
  }

  // Piecewise linear: bisect over the breakpoints of the requested branch
  // for the bracketing segment, then solve on it.
  const auto peak = static_cast<std::size_t>(
      std::find(rho_.begin(), rho_.end(), sigma_) - rho_.begin());
  std::size_t lo = up ? 0 : peak;
  std::size_t hi = up ? peak : rho_.size() - 1;
  auto above = [&](std::size_t k) {
    return up ? flux_[k] >= gamma : flux_[k] <= gamma;
  };
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (above(mid))
      hi = mid;
    else
      lo = mid;
  }
  const double w = (gamma - flux_[lo]) / (flux_[hi] - flux_[lo]);
  return std::clamp(rho_[lo] + w * (rho_[hi] - rho_[lo]), rho_[lo], rho_[hi]);
}

double FluxModel::tau(double rho) const {
  check_density(rho);
  rho = std::clamp(rho, 0.0, 1.0);
  if (rho == sigma_) return sigma_;
  if (kind_ == FluxKind::quadratic) return 1.0 - rho;
  return invert(eval(rho), rho < sigma_ ? Branch::decreasing : Branch::increasing);
}

FluxInterval FluxModel::demand(double rho0) const {
  check_density(rho0);
  return {0.0, rho0 <= sigma_ ? eval(rho0) : f_max_};
}

FluxInterval FluxModel::supply(double rho0) const {
  check_density(rho0);
  return {0.0, rho0 <= sigma_ ? f_max_ : eval(rho0)};
}

bool FluxModel::trace_set_contains_in(double rho0, double rho, double eps) const {
  check_density(rho0);
  check_density(rho);
  if (rho0 <= sigma_) return std::abs(rho - rho0) <= eps || rho > tau(rho0) + eps;
  return rho >= sigma_ - eps;
}

bool FluxModel::trace_set_contains_out(double rho0, double rho, double eps) const {
  check_density(rho0);
  check_density(rho);
  if (rho0 >= sigma_) return std::abs(rho - rho0) <= eps || rho < tau(rho0) - eps;
  return rho <= sigma_ + eps;
}

}  // namespace junction
