#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "junction/distribution.hpp"
#include "junction/errors.hpp"
#include "junction/lp.hpp"
#include "junction/projection.hpp"
#include "oracles.hpp"

using namespace junction;

namespace {

DistributionMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<std::vector<double>> rows(m, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < m; ++j) s += rows[j][i] = u(rng);
    for (std::size_t j = 0; j < m; ++j) rows[j][i] /= s;
    double fix = 1.0;
    for (std::size_t j = 0; j + 1 < m; ++j) fix -= rows[j][i];
    rows[m - 1][i] = fix;
  }
  return DistributionMatrix(rows);
}

}  // namespace

TEST_CASE("distribution matrix validation") {
  CHECK_NOTHROW(DistributionMatrix({{1.0 / 3, 0.5}, {2.0 / 3, 0.5}}));
  CHECK_THROWS_AS(DistributionMatrix({{0.4, 0.5}, {0.4, 0.5}}), InputError);
  CHECK_THROWS_AS(DistributionMatrix({{1.0, 0.5}, {0.0, 0.5}}), InputError);
  CHECK_THROWS_AS(DistributionMatrix({{0.5, 0.5}, {0.5}}), InputError);
  const DistributionMatrix A({{1.0 / 3, 0.5}, {2.0 / 3, 0.5}});
  const auto out = A.apply(std::vector<double>{1.0, 13.0 / 48});
  CHECK(out[0] == doctest::Approx(15.0 / 32));
  CHECK(out[1] == doctest::Approx(77.0 / 96));
}

TEST_CASE("membership in N") {
  CHECK(matrix_in_N(DistributionMatrix({{1.0 / 3, 0.5}, {2.0 / 3, 0.5}}), {2, 2}));
  CHECK_FALSE(matrix_in_N(DistributionMatrix({{0.5, 0.5}, {0.5, 0.5}}), {2, 2}));
  CHECK_FALSE(matrix_in_N(DistributionMatrix({{0.5, 0.2, 0.3}, {0.5, 0.8, 0.7}}), {3, 2}));
  CHECK(matrix_in_N(DistributionMatrix({{0.4}, {0.6}}), {1, 2}));
  CHECK_THROWS_AS(matrix_in_N(DistributionMatrix({{0.4}, {0.6}}), {2, 2}), TopologyError);
}

TEST_CASE("lp on the pinned instance") {
  const DistributionMatrix A({{1.0 / 3, 0.5}, {2.0 / 3, 0.5}});
  const std::vector<double> d{1.0, 7.0 / 16};
  const std::vector<double> c{15.0 / 32, 1.0};
  for (LpMethod m : {LpMethod::vertex_enumeration, LpMethod::simplex}) {
    const auto g = lp_maximize_box_polytope(d, c, A, m);
    CHECK(std::abs(g[0] - 1.0) <= 1e-12);
    CHECK(std::abs(g[1] - 13.0 / 48) <= 1e-12);
  }
  const auto zero = lp_maximize_box_polytope(std::vector<double>{0, 0}, c, A);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);
}

TEST_CASE("lp degeneracy is reported") {
  const DistributionMatrix A({{0.5, 0.5}, {0.5, 0.5}});
  const std::vector<double> d{1.0, 1.0};
  const std::vector<double> c{0.5, 1.0};
  CHECK_THROWS_AS(lp_maximize_box_polytope(d, c, A, LpMethod::vertex_enumeration), DegeneracyError);
  CHECK_THROWS_AS(lp_maximize_box_polytope(d, c, A, LpMethod::simplex), DegeneracyError);
}

TEST_CASE("lp agrees with a grid maximizer") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 25) {
    const DistributionMatrix A = random_matrix(rng, 2, 2);
    if (!matrix_in_N(A, {2, 2})) continue;
    const std::vector<double> d{u(rng), u(rng)};
    const std::vector<double> c{u(rng), u(rng)};
    const auto want = oracle::lp_grid_2d(d, c, A.to_rows(), 200000);
    for (LpMethod m : {LpMethod::vertex_enumeration, LpMethod::simplex}) {
      const auto got = lp_maximize_box_polytope(d, c, A, m);
      CHECK(std::abs(got[0] - want[0]) <= 1e-6);
      CHECK(std::abs(got[1] - want[1]) <= 1e-6);
    }
    ++checked;
  }
}

TEST_CASE("simplex and vertex enumeration agree beyond two dimensions") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 200) {
    const std::size_t n = 3;
    const std::size_t m = 3 + checked % 2;
    const DistributionMatrix A = random_matrix(rng, m, n);
    if (!matrix_in_N(A, {n, m})) continue;
    std::vector<double> d(n), c(m);
    for (auto& v : d) v = u(rng);
    for (auto& v : c) v = u(rng);
    const auto a = lp_maximize_box_polytope(d, c, A, LpMethod::vertex_enumeration);
    const auto b = lp_maximize_box_polytope(d, c, A, LpMethod::simplex);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9);
    ++checked;
  }
}

TEST_CASE("capped simplex projection") {
  const std::vector<double> caps{1.0, 1.0};
  const std::vector<double> feasible{0.3, 0.7};
  auto x = project_capped_simplex(feasible, caps, 1.0);
  CHECK(x[0] == doctest::Approx(0.3));
  CHECK(x[1] == doctest::Approx(0.7));
  x = project_capped_simplex(std::vector<double>{0.5, 0.5}, std::vector<double>{0.25, 1.0}, 1.0);
  CHECK(std::abs(x[0] - 0.25) <= 1e-12);
  CHECK(std::abs(x[1] - 0.75) <= 1e-12);
  x = project_capped_simplex(std::vector<double>{0.8, 0.6}, caps, 1.0);
  CHECK(std::abs(x[0] - 0.6) <= 1e-12);
  CHECK(std::abs(x[1] - 0.4) <= 1e-12);
  const auto want = oracle::project_by_partitions({0.5, 0.5}, {0.25, 1.0}, 1.0);
  CHECK(std::abs(want[0] - 0.25) <= 1e-12);
  CHECK_THROWS_AS(project_capped_simplex(feasible, caps, 2.5), InfeasibleFluxError);
  CHECK_THROWS_AS(project_capped_simplex(feasible, caps, -0.1), InfeasibleFluxError);
}

TEST_CASE("projection matches the partition oracle") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 300; ++s) {
    const std::size_t n = 1 + s % 5;
    std::vector<double> t(n), c(n);
    for (auto& v : t) v = 2 * u(rng) - 0.5;
    for (auto& v : c) v = u(rng);
    const double total = u(rng) * std::accumulate(c.begin(), c.end(), 0.0);
    const auto got = project_capped_simplex(t, c, total);
    const auto want = oracle::project_by_partitions(t, c, total);
    REQUIRE(want.size() == n);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9);
  }
}
