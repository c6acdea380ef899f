#pragma once

#include <span>
#include <vector>

namespace junction {

/// Euclidean projection of target onto {x : 0 <= x_l <= caps_l, sum x = total}.
///
/// Solved through the shift lambda of x_l = clamp(target_l - lambda, 0, caps_l):
/// bisection brackets lambda, then an exact solve on the free coordinates
/// finishes it. Throws InfeasibleFluxError when total lies outside
/// [0, sum caps] beyond 1e-12, InputError for negative caps or size mismatch.
std::vector<double> project_capped_simplex(std::span<const double> target,
                                           std::span<const double> caps,
                                           double total);

}  // namespace junction
