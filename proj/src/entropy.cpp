#include "junction/entropy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "junction/errors.hpp"

namespace junction {

namespace {

constexpr double kTableTol = 1e-10;
constexpr double kFaceMargin = 1e-9;

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require_balanced(const FluxModel& model, const RiemannState& state) {
  std::vector<double> gamma;
  for (double r : state.rho()) gamma.push_back(model(r));
  const double imbalance = flux_imbalance(state, gamma);
  if (std::abs(imbalance) > tol::kBalance) {
    std::ostringstream msg;
    msg << "traces are not flux-balanced (imbalance " << imbalance << ")";
    throw UnbalancedError(msg.str());
  }
}

double max_omega(const FluxModel& model, const RiemannState& initial, std::size_t l) {
  return initial.topology().incoming(l) ? model.demand(initial[l]).upper
                                        : model.supply(initial[l]).upper;
}

std::string format_set(const std::vector<std::size_t>& H) {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < H.size(); ++k) out << (k ? ", " : "") << H[k] + 1;
  out << "}";
  return out.str();
}

}  // namespace

double entropy_flux(const FluxModel& model, const RiemannState& state, double k) {
  const double fk = model(k);
  double value = 0.0;
  for (std::size_t l = 0; l < state.size(); ++l) {
    const double term = sgn(state[l] - k) * (model(state[l]) - fk);
    value += state.topology().incoming(l) ? term : -term;
  }
  return value;
}

EntropyReport check_e2(const FluxModel& model, const RiemannState& state, double eps) {
  require_balanced(model, state);
  EntropyReport report;
  const double s = model.sigma();
  report.value_at_sigma = entropy_flux(model, state, s);
  report.candidates.emplace_back(s, report.value_at_sigma);
  report.min_value = report.value_at_sigma;
  report.argmin_k = s;
  report.satisfied_e2 = report.value_at_sigma >= -eps;
  return report;
}

EntropyReport check_e1(const FluxModel& model, const RiemannState& state, double eps) {
  require_balanced(model, state);
  EntropyReport report;
  report.e1_evaluated = true;
  std::vector<double> ks{0.0, 1.0, model.sigma()};
  for (double r : state.rho())
    if (std::find(ks.begin(), ks.end(), r) == ks.end()) ks.push_back(r);
  report.min_value = std::numeric_limits<double>::infinity();
  for (double k : ks) {
    const double v = entropy_flux(model, state, k);
    report.candidates.emplace_back(k, v);
    if (v < report.min_value) {
      report.min_value = v;
      report.argmin_k = k;
    }
  }
  report.value_at_sigma = report.candidates[2].second;
  report.satisfied_e1 = report.min_value >= -eps;
  report.satisfied_e2 = report.value_at_sigma >= -eps;
  return report;
}

EquilibriumClassification classify_2x2(const FluxModel& model, const RiemannState& state) {
  if (!(state.topology() == NodeTopology{2, 2}))
    throw TopologyError("classification needs a node with two incoming and two outgoing arcs");
  require_balanced(model, state);
  EquilibriumClassification out;
  auto& p = out.permutation;
  if (state[1] < state[0]) std::swap(p[0], p[1]);
  if (state[3] < state[2]) std::swap(p[2], p[3]);
  const double r1 = state[p[0]];
  const double r2 = state[p[1]];
  const double r3 = state[p[2]];
  const double r4 = state[p[3]];
  const double s = model.sigma();
  const auto le = [](double a, double b) { return a <= b + kTableTol; };
  const auto eq = [](double a, double b) { return std::abs(a - b) <= kTableTol; };
  const int bad = (r1 < s - kTableTol) + (r2 < s - kTableTol) + (r3 > s + kTableTol) +
                  (r4 > s + kTableTol);
  out.bad_count = bad;
  const double f1 = model(r1);
  const double f2 = model(r2);
  const double f3 = model(r3);
  const double f4 = model(r4);

  std::optional<std::string> row;
  switch (bad) {
    case 0:
      if (eq(r1, s) && eq(r2, s) && eq(r3, s) && eq(r4, s)) row = "0 bad";
      break;
    case 1:
      if (le(r1, r3) && le(r3, r4) && le(r4, s) && eq(r2, s) && r1 < s)
        row = "1 bad (a)";
      else if (eq(r3, s) && le(s, r1) && le(r1, r2) && le(r2, r4) && r4 > s)
        row = "1 bad (b)";
      break;
    case 2:
      if (le(r1, r3) && le(r3, r4) && le(r4, r2) && r2 < s)
        row = "2 bad (a)";
      else if (s < r3 && le(r3, r1) && le(r1, r2) && le(r2, r4))
        row = "2 bad (b)";
      else if (le(r1, r3) && le(r3, s) && le(s, r2) && le(r2, r4) && r1 < s && s < r4)
        row = "2 bad (c)";
      break;
    case 3:
      if (r1 < s && s < r3 && le(r3, r4) && le(s, r2) && le(r2, r4) && le(f1, std::max(f2, f3)))
        row = "3 bad (a)";
      else if (le(r1, r2) && r2 < s && s < r4 && le(r1, r3) && le(r3, s) &&
               le(f4, std::max(f2, f3)))
        row = "3 bad (b)";
      break;
    default:
      if (le(r1, r2) && r2 < s && s < r3 && le(r3, r4)) row = "4 bad";
      break;
  }
  out.row = row;
  out.admissible = row.has_value();
  return out;
}

double restricted_entropy_closed_form(const FluxModel& model, const RiemannState& traces,
                                      const std::vector<std::size_t>& H) {
  const double fs = model.f_max();
  double value = 0.0;
  for (std::size_t l = 0; l < traces.size(); ++l) {
    const double fl = model(traces[l]);
    const bool active = std::find(H.begin(), H.end(), l) != H.end();
    value += active ? fs - fl : fl - fs;
  }
  return value;
}

std::vector<std::size_t> active_set(const FluxModel& model, const RiemannState& initial,
                                    std::span<const double> gamma, double eps) {
  std::vector<std::size_t> H;
  for (std::size_t l = 0; l < initial.size(); ++l)
    if (std::abs(gamma[l] - max_omega(model, initial, l)) <= eps) H.push_back(l);
  return H;
}

RestrictedEntropy restricted_entropy_G(const FluxModel& model, const RiemannState& initial,
                                       const DistributionMatrix& A, const RiemannState& traces,
                                       const std::vector<std::size_t>& H) {
  if (!(initial.topology() == traces.topology()))
    throw TopologyError("traces and initial data have different topologies");
  if (A.cols() != initial.n() || A.rows() != initial.m())
    throw TopologyError("distribution matrix does not fit the node");
  for (std::size_t l : H)
    if (l >= initial.size()) throw InputError("face index out of range");
  std::vector<std::size_t> wanted(H);
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  if (wanted.size() + 1 > initial.n())
    throw PreconditionError("face " + format_set(wanted) + " has more than n - 1 active arcs");

  std::vector<double> gamma;
  for (std::size_t l = 0; l < traces.size(); ++l) {
    const bool in_set = initial.topology().incoming(l)
                            ? model.trace_set_contains_in(initial[l], traces[l], tol::kSet)
                            : model.trace_set_contains_out(initial[l], traces[l], tol::kSet);
    if (!in_set) {
      std::ostringstream msg;
      msg << "trace on arc " << l + 1 << " is not admissible for its initial datum";
      throw FaceMismatchError(msg.str());
    }
    gamma.push_back(model(traces[l]));
  }
  const auto out = A.apply(std::span<const double>(gamma).first(initial.n()));
  for (std::size_t j = 0; j < out.size(); ++j)
    if (std::abs(out[j] - gamma[initial.n() + j]) > tol::kBalance)
      throw FaceMismatchError("outgoing fluxes do not follow the distribution matrix");
  const auto actual = active_set(model, initial, gamma);
  if (actual != wanted)
    throw FaceMismatchError("traces lie on face " + format_set(actual) + ", not " +
                            format_set(wanted));
  return {entropy_flux(model, traces, model.sigma()),
          restricted_entropy_closed_form(model, traces, wanted)};
}

RiemannState face_traces(const FluxModel& model, const RiemannState& initial,
                         const DistributionMatrix& A, std::span<const double> gamma_in) {
  std::vector<double> gamma(gamma_in.begin(), gamma_in.end());
  const auto out = A.apply(gamma_in);
  gamma.insert(gamma.end(), out.begin(), out.end());
  return traces_from_fluxes(model, initial, gamma).state;
}

std::vector<std::vector<double>> sample_face_fluxes(const FluxModel& model,
                                                    const RiemannState& initial,
                                                    const DistributionMatrix& A,
                                                    const std::vector<std::size_t>& H,
                                                    std::size_t count, std::mt19937_64& rng) {
  const std::size_t n = initial.n();
  const std::size_t arcs = initial.size();
  std::vector<double> cap(arcs);
  for (std::size_t l = 0; l < arcs; ++l) cap[l] = max_omega(model, initial, l);
  auto active = [&](std::size_t l) { return std::find(H.begin(), H.end(), l) != H.end(); };
  // Row l of the map gamma_in -> gamma.
  auto normal = [&](std::size_t l) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      row(static_cast<Eigen::Index>(i)) = l < n ? (i == l ? 1.0 : 0.0) : A(l - n, i);
    return row;
  };

  std::vector<std::vector<double>> points;
  Eigen::MatrixXd eqs(static_cast<Eigen::Index>(H.size()), static_cast<Eigen::Index>(n));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(H.size()));
  for (std::size_t k = 0; k < H.size(); ++k) {
    eqs.row(static_cast<Eigen::Index>(k)) = normal(H[k]);
    rhs(static_cast<Eigen::Index>(k)) = cap[H[k]];
  }
  Eigen::VectorXd base = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(n));
  if (!H.empty()) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(eqs);
    base = cod.solve(rhs);
    if ((eqs * base - rhs).norm() > tol::kBalance) return points;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(eqs, Eigen::ComputeFullV);
    svd.setThreshold(1e-12);
    const auto rank = svd.rank();
    basis = svd.matrixV().rightCols(static_cast<Eigen::Index>(n) - rank);
  }

  auto inside = [&](const Eigen::VectorXd& g) {
    for (std::size_t l = 0; l < arcs; ++l) {
      const double v = normal(l).dot(g);
      if (active(l)) {
        if (std::abs(v - cap[l]) > tol::kBalance) return false;
      } else if (v < 0.0 || v >= cap[l] - kFaceMargin) {
        return false;
      }
    }
    return true;
  };
  auto to_vector = [](const Eigen::VectorXd& g) {
    std::vector<double> v(static_cast<std::size_t>(g.size()));
    for (Eigen::Index i = 0; i < g.size(); ++i) v[static_cast<std::size_t>(i)] = std::max(0.0, g(i));
    return v;
  };

  if (basis.cols() == 0) {
    if (inside(base)) points.push_back(to_vector(base));
    return points;
  }
  double radius = base.norm();
  for (std::size_t i = 0; i < n; ++i) radius += cap[i];
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t max_tries = 2000 * std::max<std::size_t>(count, 1);
  for (std::size_t t = 0; t < max_tries && points.size() < count; ++t) {
    Eigen::VectorXd z(basis.cols());
    for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = radius * unit(rng);
    const Eigen::VectorXd g = base + basis * z;
    if (inside(g)) points.push_back(to_vector(g));
  }
  return points;
}

FaceReport face_objective_equivalence(const FluxModel& model, const RiemannState& initial,
                                      const DistributionMatrix& A,
                                      const std::vector<std::size_t>& H, std::size_t samples,
                                      std::mt19937_64& rng, double eps) {
  if (A.cols() != initial.n() || A.rows() != initial.m())
    throw TopologyError("distribution matrix does not fit the node");
  if (H.size() >= initial.n())
    throw PreconditionError("face " + format_set(H) + " has more than n - 1 active arcs");
  FaceReport report;
  const auto points = sample_face_fluxes(model, initial, A, H, samples, rng);
  report.samples = points.size();
  report.empty = points.empty();
  if (report.empty) return report;
  report.min_offset = std::numeric_limits<double>::infinity();
  report.max_offset = -std::numeric_limits<double>::infinity();
  for (const auto& gamma : points) {
    const RiemannState traces = face_traces(model, initial, A, gamma);
    const double g = entropy_flux(model, traces, model.sigma());
    double free_sum = 0.0;
    for (std::size_t i = 0; i < initial.n(); ++i)
      if (std::find(H.begin(), H.end(), i) == H.end()) free_sum += gamma[i];
    const double offset = g - 2.0 * free_sum;
    report.min_offset = std::min(report.min_offset, offset);
    report.max_offset = std::max(report.max_offset, offset);
    report.closed_form_error = std::max(
        report.closed_form_error, std::abs(restricted_entropy_closed_form(model, traces, H) - g));
  }
  report.constant = report.max_offset - report.min_offset <= eps;
  return report;
}

}  // namespace junction
