#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "w1/montecarlo.hpp"
#include "w1/wasserstein.hpp"

using w1::CopulaSpec;
using w1::Distribution;
using w1::mc_expected_distance;
using w1::theorem_certificate;

TEST_CASE("comonotone coupling of identical marginals is exactly zero") {
  auto u = Distribution::uniform(0, 1);
  auto e = mc_expected_distance(u, u, CopulaSpec::m(), 10000, 1);
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("countermonotone uniforms give E|2U-1| = 1/2") {
  auto u = Distribution::uniform(0, 1);
  auto e = mc_expected_distance(u, u, CopulaSpec::w(), 100000, 1);
  CHECK(std::abs(e.mean - 0.5) <= 3.0 * e.std_error);
}

TEST_CASE("MC agrees with the quadrature route") {
  auto x = Distribution::normal(15, 1);
  auto y = Distribution::uniform(12, 16);
  auto c = CopulaSpec::gaussian(0.8);
  auto e = mc_expected_distance(x, y, c, 100000, 7);
  double quad = w1::expected_distance(x, y, c);
  CHECK(std::abs(e.mean - quad) <= 3.0 * e.std_error);
}

TEST_CASE("MC-quadrature consistency across battery and copulas") {
  std::vector<std::pair<Distribution, Distribution>> pairs = {
      {Distribution::normal(15, 1), Distribution::uniform(12, 16)},
      {Distribution::uniform(0, 1), Distribution::uniform(0, 2)},
      {Distribution::exponential(1), Distribution::uniform(0, 2)},
  };
  std::vector<CopulaSpec> cops = {CopulaSpec::m(), CopulaSpec::w(),
                                  CopulaSpec::pi(),
                                  CopulaSpec::gaussian(-0.4),
                                  CopulaSpec::gaussian(0.64)};
  std::uint64_t seed = 1000;
  for (const auto& [x, y] : pairs) {
    for (const auto& c : cops) {
      auto e = mc_expected_distance(x, y, c, 100000, seed++);
      double quad = w1::expected_distance(x, y, c);
      CHECK(std::abs(e.mean - quad) <= 4.0 * e.std_error + 1e-9);
    }
  }
}

TEST_CASE("determinism: identical inputs give bit-identical estimates") {
  auto x = Distribution::normal(0, 1);
  auto y = Distribution::exponential(2);
  auto a = mc_expected_distance(x, y, CopulaSpec::gaussian(0.3), 5000, 99);
  auto b = mc_expected_distance(x, y, CopulaSpec::gaussian(0.3), 5000, 99);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  auto c = mc_expected_distance(x, y, CopulaSpec::gaussian(0.3), 5000, 100);
  CHECK(a.mean != c.mean);
}

TEST_CASE("preconditions") {
  auto x = Distribution::normal(0, 1);
  CHECK_THROWS_AS(mc_expected_distance(x, x, CopulaSpec::m(), 1, 1),
                  std::domain_error);
  CHECK_THROWS_AS(theorem_certificate(x, x, {}, 100, 1), std::domain_error);
}

TEST_CASE("certificate passes on the reference pair") {
  auto x = Distribution::normal(15, 1);
  auto y = Distribution::uniform(12, 16);
  std::vector<double> rhos = {-1.0, -0.8, -0.64, -0.4, -0.12,
                              0.64, 0.4,  0.12,  0.8,  1.0};
  auto rep = theorem_certificate(x, y, rhos, 100000, 7);
  CHECK(rep.passed);
  CHECK(rep.violations.empty());
  CHECK(rep.estimates.size() == 13);
}

TEST_CASE("certificate with identical marginals: M estimate is exactly zero") {
  auto x = Distribution::normal(0, 1);
  auto rep = theorem_certificate(x, x, {0.5, -0.5}, 10000, 3);
  CHECK(rep.estimates[0].estimate.mean == 0.0);
  for (const auto& ce : rep.estimates) CHECK(ce.estimate.mean >= 0.0);
  CHECK(rep.passed);
}

TEST_CASE("disjoint supports: estimates are copula-invariant") {
  auto x = Distribution::uniform(0, 1);
  auto y = Distribution::uniform(2, 3);
  auto rep = theorem_certificate(x, y, {-0.8, 0.8}, 100000, 5);
  CHECK(rep.passed);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, worst_se = 0;
  for (const auto& ce : rep.estimates) {
    CHECK(std::abs(ce.estimate.mean - 2.0) <= 3.0 * ce.estimate.std_error);
    lo = std::min(lo, ce.estimate.mean);
    hi = std::max(hi, ce.estimate.mean);
    worst_se = std::max(worst_se, ce.estimate.std_error);
  }
  CHECK(hi - lo <= 6.0 * worst_se);
}
