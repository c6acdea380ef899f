#include "junction/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "junction/errors.hpp"

namespace junction {

namespace {

constexpr double kSumTol = 1e-12;

double clamped_sum(std::span<const double> t, std::span<const double> c, double lambda) {
  double s = 0.0;
  for (std::size_t l = 0; l < t.size(); ++l) s += std::clamp(t[l] - lambda, 0.0, c[l]);
  return s;
}

}  // namespace

std::vector<double> project_capped_simplex(std::span<const double> target,
                                           std::span<const double> caps,
                                           double total) {
  if (target.size() != caps.size())
    throw InputError("projection: target and caps differ in length");
  for (double c : caps)
    if (!(c >= 0.0)) throw InputError("projection: caps must be nonnegative");
  const double cap_sum = std::accumulate(caps.begin(), caps.end(), 0.0);
  if (!(total >= -kSumTol) || total > cap_sum + kSumTol) {
    std::ostringstream msg;
    msg << "projection: total " << total << " outside [0, " << cap_sum << "]";
    throw InfeasibleFluxError(msg.str());
  }

  const std::size_t n = target.size();
  std::vector<double> x(n, 0.0);
  if (total <= 0.0) return x;
  if (total >= cap_sum) return {caps.begin(), caps.end()};

  double lo = target[0] - caps[0];
  double hi = target[0];
  for (std::size_t l = 1; l < n; ++l) {
    lo = std::min(lo, target[l] - caps[l]);
    hi = std::max(hi, target[l]);
  }
  // clamped_sum(lo) = cap_sum >= total >= 0 = clamped_sum(hi)
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (clamped_sum(target, caps, mid) > total)
      lo = mid;
    else
      hi = mid;
  }
  double lambda = 0.5 * (lo + hi);

  // Exact shift on the free set identified by the bracket.
  double free_sum = 0.0;
  double fixed_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t l = 0; l < n; ++l) {
    const double v = target[l] - lambda;
    if (v >= caps[l])
      fixed_sum += caps[l];
    else if (v > 0.0) {
      free_sum += target[l];
      ++free_count;
    }
  }
  if (free_count > 0) {
    const double exact = (free_sum + fixed_sum - total) / static_cast<double>(free_count);
    if (std::abs(clamped_sum(target, caps, exact) - total) <=
        std::abs(clamped_sum(target, caps, lambda) - total))
      lambda = exact;
  }
  for (std::size_t l = 0; l < n; ++l) x[l] = std::clamp(target[l] - lambda, 0.0, caps[l]);
  return x;
}

}  // namespace junction
