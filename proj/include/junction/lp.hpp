#pragma once

#include <span>
#include <vector>

#include "junction/distribution.hpp"

namespace junction {

enum class LpMethod {
  automatic,           ///< vertex enumeration for n <= 3, simplex beyond
  vertex_enumeration,
  simplex,
};

/// Maximizes sum(gamma) over {0 <= gamma_i <= caps_in_i, (A gamma)_j <= caps_out_j}.
///
/// The feasible set always contains gamma = 0, so the program is never
/// infeasible. When A lies in N the maximizer is unique; if two optimal
/// vertices farther apart than 1e-9 are found a DegeneracyError is thrown.
std::vector<double> lp_maximize_box_polytope(std::span<const double> caps_in,
                                             std::span<const double> caps_out,
                                             const DistributionMatrix& A,
                                             LpMethod method = LpMethod::automatic);

}  // namespace junction
