#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "w1/copula.hpp"

using w1::bivariate_normal_cdf;
using w1::copula_eval;
using w1::copula_sample;
using w1::CopulaSpec;
using w1::verify_copula_axioms;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::vector<CopulaSpec> all_copulas() {
  return {CopulaSpec::m(),           CopulaSpec::w(),
          CopulaSpec::pi(),          CopulaSpec::gaussian(-1.0),
          CopulaSpec::gaussian(-0.8), CopulaSpec::gaussian(0.0),
          CopulaSpec::gaussian(0.12), CopulaSpec::gaussian(0.64),
          CopulaSpec::gaussian(1.0)};
}

// Two-sided KS statistic of a sample against U(0,1).
double ks_uniform(std::vector<double> s) {
  std::sort(s.begin(), s.end());
  double n = static_cast<double>(s.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double d1 = std::abs((i + 1) / n - s[i]);
    double d2 = std::abs(s[i] - i / n);
    worst = std::max({worst, d1, d2});
  }
  return worst;
}

}  // namespace

TEST_CASE("copula_eval point values") {
  CHECK(copula_eval(CopulaSpec::m(), 0.3, 0.7) == doctest::Approx(0.3));
  CHECK(copula_eval(CopulaSpec::w(), 0.3, 0.5) == 0.0);
  CHECK(copula_eval(CopulaSpec::pi(), 0.5, 0.4) == doctest::Approx(0.2));
  // closed form for the equicoordinate median point
  double expected = 0.25 + std::asin(0.5) / (2.0 * w1::pi_const);
  CHECK(std::abs(copula_eval(CopulaSpec::gaussian(0.5), 0.5, 0.5) - expected) <
        1e-10);
  CHECK_THROWS_AS(copula_eval(CopulaSpec::m(), -0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(copula_eval(CopulaSpec::m(), 0.5, 1.1), std::domain_error);
}

TEST_CASE("bivariate normal cdf") {
  CHECK(bivariate_normal_cdf(0, 0, 0) == doctest::Approx(0.25));
  CHECK(std::abs(bivariate_normal_cdf(kInf, 0.3, 0.5) - w1::normal_cdf(0.3)) <
        1e-14);
  CHECK(bivariate_normal_cdf(-kInf, 0.3, 0.5) == 0.0);
  double expected = 0.25 + std::asin(0.8) / (2.0 * w1::pi_const);
  CHECK(std::abs(bivariate_normal_cdf(0, 0, 0.8) - expected) < 1e-10);
  CHECK_THROWS_AS(bivariate_normal_cdf(0, 0, 1.5), std::domain_error);
}

TEST_CASE("Gaussian copula limits coincide with M, W, Pi") {
  for (double u : {0.1, 0.35, 0.5, 0.9}) {
    for (double v : {0.05, 0.5, 0.77}) {
      CHECK(copula_eval(CopulaSpec::gaussian(1.0), u, v) ==
            doctest::Approx(copula_eval(CopulaSpec::m(), u, v)));
      CHECK(copula_eval(CopulaSpec::gaussian(-1.0), u, v) ==
            doctest::Approx(copula_eval(CopulaSpec::w(), u, v)));
      CHECK(std::abs(copula_eval(CopulaSpec::gaussian(0.0), u, v) -
                     copula_eval(CopulaSpec::pi(), u, v)) < 1e-12);
    }
  }
}

TEST_CASE("copula_sample structure") {
  for (auto& [u, v] : copula_sample(CopulaSpec::m(), 3, 17)) CHECK(u == v);
  for (auto& [u, v] : copula_sample(CopulaSpec::w(), 3, 17))
    CHECK(u + v == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(copula_sample(CopulaSpec::m(), 0, 1), std::domain_error);

  auto pi = copula_sample(CopulaSpec::gaussian(0.0), 10000, 42);
  double su = 0, sv = 0, suv = 0, suu = 0, svv = 0;
  for (auto& [u, v] : pi) {
    su += u;
    sv += v;
    suv += u * v;
    suu += u * u;
    svv += v * v;
  }
  double n = 10000.0;
  double corr = (suv / n - su / n * sv / n) /
                std::sqrt((suu / n - su / n * su / n) *
                          (svv / n - sv / n * sv / n));
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("copula_sample is deterministic in the seed") {
  auto a = copula_sample(CopulaSpec::gaussian(0.6), 100, 12345);
  auto b = copula_sample(CopulaSpec::gaussian(0.6), 100, 12345);
  CHECK(a == b);
  auto c = copula_sample(CopulaSpec::gaussian(0.6), 100, 54321);
  CHECK(a != c);
}

TEST_CASE("sample margins are uniform (KS at alpha ~ 0.01)") {
  const std::size_t n = 100000;
  const double crit = 1.63 / std::sqrt(static_cast<double>(n));
  for (const auto& c : {CopulaSpec::m(), CopulaSpec::w(), CopulaSpec::pi(),
                        CopulaSpec::gaussian(0.8), CopulaSpec::gaussian(-0.4)}) {
    auto s = copula_sample(c, n, 2718);
    std::vector<double> us, vs;
    us.reserve(n);
    vs.reserve(n);
    for (auto& [u, v] : s) {
      us.push_back(u);
      vs.push_back(v);
    }
    CHECK(ks_uniform(us) <= crit);
    CHECK(ks_uniform(vs) <= crit);
  }
}

TEST_CASE("axiom verification") {
  auto m = verify_copula_axioms(CopulaSpec::m(), 21);
  CHECK(m.all());
  CHECK(m.worst_grounded == 0.0);
  CHECK(m.worst_frechet <= 1e-15);

  CHECK(verify_copula_axioms(CopulaSpec::gaussian(0.8), 21).all());

  auto gneg = verify_copula_axioms(CopulaSpec::gaussian(-1.0), 21);
  CHECK(gneg.all());
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      double u = i / 20.0, v = j / 20.0;
      worst = std::max(worst,
                       std::abs(copula_eval(CopulaSpec::gaussian(-1.0), u, v) -
                                copula_eval(CopulaSpec::w(), u, v)));
    }
  CHECK(worst <= 1e-9);
  CHECK_THROWS_AS(verify_copula_axioms(CopulaSpec::m(), 1), std::domain_error);
}

TEST_CASE("Frechet-Hoeffding bounds on a 41x41 grid") {
  for (const auto& c : all_copulas()) {
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        double u = i / 40.0, v = j / 40.0;
        double val = copula_eval(c, u, v);
        CHECK(val >= std::max(u + v - 1.0, 0.0) - 1e-9);
        CHECK(val <= std::min(u, v) + 1e-9);
      }
    }
  }
}

TEST_CASE("Gaussian family is concordance ordered in rho") {
  std::vector<double> rhos = {-1.0, -0.64, -0.12, 0.0, 0.4, 0.8, 1.0};
  for (std::size_t k = 0; k + 1 < rhos.size(); ++k) {
    auto c1 = CopulaSpec::gaussian(rhos[k]);
    auto c2 = CopulaSpec::gaussian(rhos[k + 1]);
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= 40; ++j) {
        double u = i / 40.0, v = j / 40.0;
        CHECK(copula_eval(c1, u, v) <= copula_eval(c2, u, v) + 1e-9);
      }
  }
}
