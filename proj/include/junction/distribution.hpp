#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "junction/junction.hpp"

namespace junction {

/// Column-stochastic traffic distribution matrix with one row per outgoing
/// arc and one column per incoming arc: entry (j, i) is the share of the flux
/// from incoming arc i that enters outgoing arc j.
class DistributionMatrix {
 public:
  /// Throws InputError unless every entry lies strictly in (0, 1), rows have
  /// equal length and every column sums to 1.
  explicit DistributionMatrix(std::vector<std::vector<double>> rows);

  std::size_t rows() const { return m_; }  ///< outgoing arcs
  std::size_t cols() const { return n_; }  ///< incoming arcs
  double operator()(std::size_t j, std::size_t i) const { return entries_[j * n_ + i]; }
  std::span<const double> row(std::size_t j) const { return {entries_.data() + j * n_, n_}; }

  /// Outgoing fluxes A * gamma_in.
  std::vector<double> apply(std::span<const double> gamma_in) const;

  std::vector<std::vector<double>> to_rows() const;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// Membership in the set of matrices with a unique flux maximizer: for every
/// selection of 1 .. n-1 normals among {e_1, .., e_n, a_{n+1}, .., a_{n+m}}
/// (a_j the rows of A), the all-ones vector is not in their span. Always
/// false when n > m. Throws TopologyError if A does not fit the node.
bool matrix_in_N(const DistributionMatrix& A, const NodeTopology& topology);

}  // namespace junction
