#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "majorant/simplex.hpp"
#include "test_support.hpp"

using majorant::project_weighted_simplex;
using namespace testsupport;

namespace {

// KKT conditions of the projection: some multiplier lambda has
// x_i = max(0, y_i - lambda w_i), and the weighted sum is 1.
void check_projection(const std::vector<double>& y, const std::vector<double>& w,
                      const std::vector<double>& x) {
  REQUIRE(x.size() == y.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i] >= 0.0);
    sum += w[i] * x[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // Recover lambda from any strictly positive coordinate, then check every
  // coordinate against it.
  double lambda = 0.0;
  bool found = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1e-12) {
      lambda = (y[i] - x[i]) / w[i];
      found = true;
      break;
    }
  }
  REQUIRE(found);  // the weighted sum is 1, so some coordinate is positive
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1e-12) {
      CHECK((y[i] - x[i]) / w[i] == doctest::Approx(lambda).epsilon(1e-9));
    } else {
      CHECK(y[i] <= lambda * w[i] + 1e-9);
    }
  }
}

}  // namespace

TEST_CASE("projection: hand-checked points") {
  // (2, 0) projects to the vertex (1, 0) of the standard simplex.
  const auto vertex = project_weighted_simplex({2.0, 0.0}, {1.0, 1.0});
  CHECK(vertex[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(vertex[1] == doctest::Approx(0.0).epsilon(1e-14));

  // A symmetric interior point projects to the barycenter.
  const auto mid = project_weighted_simplex({0.3, 0.3}, {1.0, 1.0});
  CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mid[1] == doctest::Approx(0.5).epsilon(1e-14));

  // Single coordinate: the simplex is the point 1/w.
  const auto single = project_weighted_simplex({-5.0}, {4.0});
  CHECK(single[0] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("projection: feasible points are fixed points") {
  auto gen = rng(401);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<double> w(n), x(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = unit(gen);
      x[i] = unit(gen);
      sum += w[i] * x[i];
    }
    for (std::size_t i = 0; i < n; ++i) x[i] /= sum;  // now sum w x = 1
    const auto back = project_weighted_simplex(x, w);
    for (std::size_t i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
  }
}

TEST_CASE("projection: KKT conditions and idempotence on random inputs") {
  auto gen = rng(402);
  std::uniform_real_distribution<double> spread(-3.0, 3.0);
  std::uniform_real_distribution<double> wdist(0.05, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 8;
    std::vector<double> y(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = spread(gen);
      w[i] = wdist(gen);
    }
    const auto x = project_weighted_simplex(y, w);
    check_projection(y, w, x);
    const auto again = project_weighted_simplex(x, w);
    for (std::size_t i = 0; i < n; ++i) CHECK(again[i] == doctest::Approx(x[i]).epsilon(1e-10));
  }
}

TEST_CASE("projection: input validation") {
  CHECK_THROWS_AS(project_weighted_simplex({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(project_weighted_simplex({1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(project_weighted_simplex({1.0}, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(project_weighted_simplex({1.0, 2.0}, {1.0}), std::invalid_argument);
}
