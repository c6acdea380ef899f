#include "junction/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "junction/errors.hpp"

namespace junction {

namespace {

constexpr double kFeasTol = 1e-12;
constexpr double kObjTol = 1e-12;
constexpr double kDistinct = 1e-9;
constexpr double kPivotTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double dist(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

[[noreturn]] void degenerate(std::span<const double> a, std::span<const double> b) {
  std::ostringstream msg;
  msg << "flux maximizer is not unique (optimal points differ by " << dist(a, b)
      << "); the distribution matrix is numerically outside N";
  throw DegeneracyError(msg.str());
}

// Every vertex is the solution of n active constraints chosen among
// gamma_i = 0, gamma_i = caps_in_i and a_j . gamma = caps_out_j.
std::vector<double> maximize_by_vertices(std::span<const double> caps_in,
                                         std::span<const double> caps_out,
                                         const DistributionMatrix& A) {
  const std::size_t n = caps_in.size();
  const std::size_t m = caps_out.size();
  const std::size_t total = 2 * n + m;
  Eigen::MatrixXd normals = Eigen::MatrixXd::Zero(total, n);
  Eigen::VectorXd rhs(total);
  for (std::size_t i = 0; i < n; ++i) {
    normals(i, i) = 1.0;
    rhs(i) = 0.0;
    normals(n + i, i) = 1.0;
    rhs(n + i) = caps_in[i];
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) normals(2 * n + j, i) = A(j, i);
    rhs(2 * n + j) = caps_out[j];
  }

  auto feasible = [&](const Eigen::VectorXd& g) {
    for (std::size_t i = 0; i < n; ++i)
      if (g(i) < -kFeasTol || g(i) > caps_in[i] + kFeasTol) return false;
    for (std::size_t j = 0; j < m; ++j)
      if (normals.row(2 * n + j).dot(g) > caps_out[j] + kFeasTol) return false;
    return true;
  };

  std::vector<std::vector<double>> vertices;
  std::vector<double> values;
  std::vector<std::size_t> idx(n);
  for (std::size_t k = 0; k < n; ++k) idx[k] = k;
  while (true) {
    Eigen::MatrixXd sys(n, n);
    Eigen::VectorXd b(n);
    for (std::size_t k = 0; k < n; ++k) {
      sys.row(k) = normals.row(idx[k]);
      b(k) = rhs(idx[k]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (lu.isInvertible()) {
      const Eigen::VectorXd g = lu.solve(b);
      if (feasible(g)) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = std::clamp(g(i), 0.0, caps_in[i]);
        values.push_back(g.sum());
        vertices.push_back(std::move(v));
      }
    }
    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] == total - n + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t k = pos; k < n; ++k) idx[k] = idx[k - 1] + 1;
  }

  // gamma = 0 is always a vertex, so the list is never empty.
  const auto best = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  const double scale = std::max(1.0, std::abs(values[best]));
  for (std::size_t k = 0; k < vertices.size(); ++k)
    if (values[k] >= values[best] - kObjTol * scale &&
        dist(vertices[k], vertices[best]) > kDistinct)
      degenerate(vertices[k], vertices[best]);
  return vertices[best];
}

// Bounded-variable primal simplex on  A gamma + s = caps_out  with
// 0 <= gamma <= caps_in and s >= 0, starting from the slack basis (gamma = 0
// is feasible). Bland's rule on entering and leaving variables.
class BoundedSimplex {
 public:
  BoundedSimplex(std::span<const double> caps_in, std::span<const double> caps_out,
                 const DistributionMatrix& A)
      : n_(caps_in.size()), m_(caps_out.size()), cols_(n_ + m_) {
    tableau_ = Eigen::MatrixXd::Zero(m_, cols_);
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t i = 0; i < n_; ++i) tableau_(j, i) = A(j, i);
      tableau_(j, n_ + j) = 1.0;
    }
    upper_.assign(cols_, kInf);
    for (std::size_t i = 0; i < n_; ++i) upper_[i] = caps_in[i];
    cost_.assign(cols_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) cost_[i] = 1.0;
    value_.assign(cols_, 0.0);
    basic_row_.assign(cols_, -1);
    basis_.resize(m_);
    for (std::size_t j = 0; j < m_; ++j) {
      basis_[j] = n_ + j;
      basic_row_[n_ + j] = static_cast<int>(j);
      value_[n_ + j] = caps_out[j];
    }
  }

  std::vector<double> solve() {
    const std::size_t max_iter = 50 * (cols_ + 1) * (m_ + 1);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      const auto entering = choose_entering();
      if (!entering) {
        check_unique();
        std::vector<double> gamma(value_.begin(), value_.begin() + static_cast<long>(n_));
        for (std::size_t i = 0; i < n_; ++i) gamma[i] = std::clamp(gamma[i], 0.0, upper_[i]);
        return gamma;
      }
      step(*entering);
    }
    throw DegeneracyError("simplex iteration limit reached");
  }

 private:
  struct Move {
    std::size_t var;
    double dir;
  };

  double reduced_cost(std::size_t k) const {
    double r = cost_[k];
    for (std::size_t row = 0; row < m_; ++row) r -= cost_[basis_[row]] * tableau_(row, k);
    return r;
  }

  bool at_upper(std::size_t k) const { return upper_[k] < kInf && value_[k] >= upper_[k]; }

  std::optional<Move> choose_entering() const {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (basic_row_[k] >= 0) continue;
      const double r = reduced_cost(k);
      if (r > kPivotTol && !at_upper(k) && upper_[k] > 0.0) return Move{k, 1.0};
      if (r < -kPivotTol && at_upper(k)) return Move{k, -1.0};
    }
    return std::nullopt;
  }

  // Largest step along the move and the blocking row (-1 for a bound flip).
  std::pair<double, int> ratio_test(const Move& mv) const {
    double t = upper_[mv.var];
    int row_hit = -1;
    for (std::size_t row = 0; row < m_; ++row) {
      const double delta = mv.dir * tableau_(row, mv.var);
      const std::size_t b = basis_[row];
      double limit = kInf;
      if (delta > kPivotTol)
        limit = value_[b] / delta;
      else if (delta < -kPivotTol && upper_[b] < kInf)
        limit = (upper_[b] - value_[b]) / -delta;
      limit = std::max(limit, 0.0);
      if (limit < t || (limit == t && row_hit >= 0 && b < basis_[static_cast<std::size_t>(row_hit)])) {
        t = limit;
        row_hit = static_cast<int>(row);
      }
    }
    return {t, row_hit};
  }

  void step(const Move& mv) {
    const auto [t, row_hit] = ratio_test(mv);
    value_[mv.var] += mv.dir * t;
    for (std::size_t row = 0; row < m_; ++row)
      value_[basis_[row]] -= mv.dir * t * tableau_(row, mv.var);
    if (row_hit < 0) {
      value_[mv.var] = mv.dir > 0 ? upper_[mv.var] : 0.0;
      return;
    }
    const auto r = static_cast<std::size_t>(row_hit);
    const std::size_t leaving = basis_[r];
    // Snap the leaving variable onto the bound it reached.
    value_[leaving] = (mv.dir * tableau_(r, mv.var) > 0) ? 0.0 : upper_[leaving];
    const double pivot = tableau_(r, mv.var);
    tableau_.row(r) /= pivot;
    for (std::size_t row = 0; row < m_; ++row)
      if (row != r) tableau_.row(row) -= tableau_(row, mv.var) * tableau_.row(r);
    basic_row_[leaving] = -1;
    basic_row_[mv.var] = static_cast<int>(r);
    basis_[r] = mv.var;
  }

  // A nonbasic variable with zero reduced cost that can move a positive
  // distance opens an optimal edge.
  void check_unique() const {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (basic_row_[k] >= 0) continue;
      if (std::abs(reduced_cost(k)) > kPivotTol) continue;
      const Move mv{k, at_upper(k) ? -1.0 : 1.0};
      const auto [t, row_hit] = ratio_test(mv);
      (void)row_hit;
      if (t > kDistinct) {
        std::vector<double> here(value_.begin(), value_.begin() + static_cast<long>(n_));
        std::vector<double> there = here;
        if (k < n_) there[k] += mv.dir * t;
        for (std::size_t row = 0; row < m_; ++row)
          if (basis_[row] < n_) there[basis_[row]] -= mv.dir * t * tableau_(row, k);
        if (dist(here, there) > kDistinct) degenerate(here, there);
      }
    }
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_;
  Eigen::MatrixXd tableau_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<double> value_;
  std::vector<std::size_t> basis_;
  std::vector<int> basic_row_;
};

}  // namespace

std::vector<double> lp_maximize_box_polytope(std::span<const double> caps_in,
                                             std::span<const double> caps_out,
                                             const DistributionMatrix& A,
                                             LpMethod method) {
  if (caps_in.size() != A.cols() || caps_out.size() != A.rows())
    throw TopologyError("LP capacities do not match the distribution matrix");
  for (double c : caps_in)
    if (!(c >= 0.0)) throw InputError("LP incoming capacities must be nonnegative");
  for (double c : caps_out)
    if (!(c >= 0.0)) throw InputError("LP outgoing capacities must be nonnegative");
  if (method == LpMethod::automatic)
    method = caps_in.size() <= 3 ? LpMethod::vertex_enumeration : LpMethod::simplex;
  if (method == LpMethod::vertex_enumeration) return maximize_by_vertices(caps_in, caps_out, A);
  return BoundedSimplex(caps_in, caps_out, A).solve();
}

}  // namespace junction
