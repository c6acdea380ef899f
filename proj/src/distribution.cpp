#include "junction/distribution.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "junction/errors.hpp"

namespace junction {

namespace {

constexpr double kColumnSumTol = 1e-12;
constexpr double kSpanTol = 1e-10;

// Calls visit(indices) for every strictly increasing index tuple of length
// len drawn from 0 .. count-1; stops early when visit returns false.
template <typename Visit>
bool for_each_combination(std::size_t count, std::size_t len, Visit&& visit) {
  std::vector<std::size_t> idx(len);
  for (std::size_t k = 0; k < len; ++k) idx[k] = k;
  while (true) {
    if (!visit(idx)) return false;
    std::size_t pos = len;
    while (pos > 0 && idx[pos - 1] == count - len + pos - 1) --pos;
    if (pos == 0) return true;
    ++idx[pos - 1];
    for (std::size_t k = pos; k < len; ++k) idx[k] = idx[k - 1] + 1;
  }
}

}  // namespace

DistributionMatrix::DistributionMatrix(std::vector<std::vector<double>> rows) {
  m_ = rows.size();
  n_ = m_ == 0 ? 0 : rows.front().size();
  if (m_ == 0 || n_ == 0) throw InputError("distribution matrix is empty");
  entries_.reserve(m_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw InputError("distribution matrix rows differ in length");
    for (double a : r) {
      if (!(a > 0.0 && a < 1.0)) {
        std::ostringstream msg;
        msg << "distribution matrix entry " << a << " outside (0, 1)";
        throw InputError(msg.str());
      }
      entries_.push_back(a);
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m_; ++j) sum += (*this)(j, i);
    if (std::abs(sum - 1.0) > kColumnSumTol) {
      std::ostringstream msg;
      msg << "distribution matrix column " << i + 1 << " sums to " << sum << ", not 1";
      throw InputError(msg.str());
    }
  }
}

std::vector<double> DistributionMatrix::apply(std::span<const double> gamma_in) const {
  if (gamma_in.size() != n_) throw TopologyError("flux vector does not match matrix columns");
  std::vector<double> out(m_, 0.0);
  for (std::size_t j = 0; j < m_; ++j)
    for (std::size_t i = 0; i < n_; ++i) out[j] += (*this)(j, i) * gamma_in[i];
  return out;
}

std::vector<std::vector<double>> DistributionMatrix::to_rows() const {
  std::vector<std::vector<double>> out(m_);
  for (std::size_t j = 0; j < m_; ++j) out[j].assign(row(j).begin(), row(j).end());
  return out;
}

bool matrix_in_N(const DistributionMatrix& A, const NodeTopology& topology) {
  if (A.rows() != topology.m || A.cols() != topology.n) {
    std::ostringstream msg;
    msg << "distribution matrix is " << A.rows() << "x" << A.cols() << ", node needs "
        << topology.m << "x" << topology.n;
    throw TopologyError(msg.str());
  }
  const std::size_t n = topology.n;
  if (n > topology.m) return false;

  Eigen::MatrixXd normals(n, n + topology.m);
  normals.setZero();
  for (std::size_t i = 0; i < n; ++i) normals(i, i) = 1.0;
  for (std::size_t j = 0; j < topology.m; ++j)
    for (std::size_t i = 0; i < n; ++i) normals(i, n + j) = A(j, i);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

  for (std::size_t len = 1; len + 1 <= n; ++len) {
    const bool clear = for_each_combination(n + topology.m, len, [&](const auto& idx) {
      Eigen::MatrixXd basis(n, len);
      for (std::size_t k = 0; k < len; ++k) basis.col(k) = normals.col(idx[k]);
      const Eigen::VectorXd coeff = basis.colPivHouseholderQr().solve(ones);
      return (basis * coeff - ones).norm() > kSpanTol;
    });
    if (!clear) return false;
  }
  return true;
}

}  // namespace junction
