#pragma once

namespace junction::tol {

// Absolute residual on f(rho) - gamma accepted by the branch inverses.
inline constexpr double kRoot = 1e-12;
// Width of the excluded boundary tau(rho0) in the trace sets.
inline constexpr double kSet = 1e-12;
// f(rho0) and a target flux closer than this keep the initial datum.
inline constexpr double kFluxMatch = 1e-11;
// Incoming/outgoing flux sums.
inline constexpr double kBalance = 1e-10;
// Componentwise density equality (equilibria, consistency, Table-1 rows).
inline constexpr double kState = 1e-10;
// Entropy values above -kEntropy count as nonnegative.
inline constexpr double kEntropy = 1e-10;

}  // namespace junction::tol
