#ifndef W1_COPULA_HPP
#define W1_COPULA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "w1/normal.hpp"
#include "w1/quadrature.hpp"

namespace w1 {

/// One of the four supported 2-copulas. Gaussian(+/-1) is identified with
/// M/W throughout (closed form, no degenerate arithmetic).
struct CopulaSpec {
  enum class Kind { M, W, Pi, Gaussian };

  Kind kind = Kind::M;
  double rho = 0.0;  // only meaningful for Gaussian

  static CopulaSpec m() { return {Kind::M, 0.0}; }
  static CopulaSpec w() { return {Kind::W, 0.0}; }
  static CopulaSpec pi() { return {Kind::Pi, 0.0}; }
  static CopulaSpec gaussian(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
      throw std::domain_error("Gaussian copula: rho outside [-1,1]");
    return {Kind::Gaussian, rho};
  }

  std::string name() const {
    switch (kind) {
      case Kind::M: return "m";
      case Kind::W: return "w";
      case Kind::Pi: return "pi";
      case Kind::Gaussian: {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "gaussian:%g", rho);
        return buf;
      }
    }
    return "?";
  }
};

namespace detail {

// 20-point Gauss-Legendre rule (positive half).
inline constexpr double gl20_x[10] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
    0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
    0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
    0.9931285991850949};
inline constexpr double gl20_w[10] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
    0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
    0.0176140071391521};

}  // namespace detail

/// P(Z1 <= h, Z2 <= k) for standard bivariate normal with correlation rho.
/// Tetrachoric single-integral form with r = sin(theta):
///   Phi2(h,k,rho) = Phi(h)Phi(k)
///     + (1/2pi) int_0^asin(rho) exp(-(h^2+k^2-2hk sin t)/(2cos^2 t)) dt
/// The substituted integrand is analytic and bounded, so a fixed composite
/// Gauss-Legendre rule reaches well below the 1e-10 contract.
inline double bivariate_normal_cdf(double h, double k, double rho) {
  if (!(rho >= -1.0 && rho <= 1.0))
    throw std::domain_error("bivariate_normal_cdf: |rho| > 1");
  if (std::isnan(h) || std::isnan(k))
    throw std::domain_error("bivariate_normal_cdf: NaN argument");
  if (h == -std::numeric_limits<double>::infinity() ||
      k == -std::numeric_limits<double>::infinity())
    return 0.0;
  if (h == std::numeric_limits<double>::infinity()) return normal_cdf(k);
  if (k == std::numeric_limits<double>::infinity()) return normal_cdf(h);
  if (rho == 1.0) return normal_cdf(std::min(h, k));
  if (rho == -1.0) return std::max(normal_cdf(h) + normal_cdf(k) - 1.0, 0.0);
  if (rho == 0.0) return normal_cdf(h) * normal_cdf(k);

  const double hk2 = h * h + k * k;
  auto integrand = [h, k, hk2](double theta) {
    double c = std::cos(theta);
    return std::exp(-(hk2 - 2.0 * h * k * std::sin(theta)) / (2.0 * c * c));
  };
  const double upper = std::asin(rho);
  double corr = 0.0;
  const int segments = 3;
  for (int s = 0; s < segments; ++s) {
    double a = upper * s / segments;
    double b = upper * (s + 1) / segments;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 10; ++i)
      acc += detail::gl20_w[i] * (integrand(mid - half * detail::gl20_x[i]) +
                                  integrand(mid + half * detail::gl20_x[i]));
    corr += acc * half;
  }
  corr /= 2.0 * pi_const;
  double v = normal_cdf(h) * normal_cdf(k) + corr;
  return std::clamp(v, 0.0, 1.0);
}

/// C(u,v) on [0,1]^2.
inline double copula_eval(const CopulaSpec& c, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0))
    throw std::domain_error("copula_eval: arguments outside [0,1]");
  switch (c.kind) {
    case CopulaSpec::Kind::M:
      return std::min(u, v);
    case CopulaSpec::Kind::W:
      return std::max(u + v - 1.0, 0.0);
    case CopulaSpec::Kind::Pi:
      return u * v;
    case CopulaSpec::Kind::Gaussian: {
      if (c.rho == 1.0) return std::min(u, v);
      if (c.rho == -1.0) return std::max(u + v - 1.0, 0.0);
      // grounded / uniform-margin cases exactly
      if (u == 0.0 || v == 0.0) return 0.0;
      if (u == 1.0) return v;
      if (v == 1.0) return u;
      return bivariate_normal_cdf(normal_quantile(u), normal_quantile(v),
                                  c.rho);
    }
  }
  return 0.0;  // unreachable
}

/// Deterministic (u,v) stream for a copula. Uniforms come from mt19937_64
/// through a fixed 53-bit mapping into (0,1) and normals through the
/// inverse CDF, so the stream is bit-stable across platforms for a given
/// seed.
class CopulaSampler {
 public:
  CopulaSampler(const CopulaSpec& c, std::uint64_t seed)
      : spec_(c), gen_(seed) {}

  std::pair<double, double> next() {
    switch (spec_.kind) {
      case CopulaSpec::Kind::M: {
        double u = uniform01();
        return {u, u};
      }
      case CopulaSpec::Kind::W: {
        double u = uniform01();
        return {u, 1.0 - u};
      }
      case CopulaSpec::Kind::Pi: {
        double u = uniform01();
        double v = uniform01();
        return {u, v};
      }
      case CopulaSpec::Kind::Gaussian: {
        if (spec_.rho == 1.0) {
          double u = uniform01();
          return {u, u};
        }
        if (spec_.rho == -1.0) {
          double u = uniform01();
          return {u, 1.0 - u};
        }
        double z1 = normal_quantile(uniform01());
        double z2 = normal_quantile(uniform01());
        double rho = spec_.rho;
        return {normal_cdf(z1),
                normal_cdf(rho * z1 + std::sqrt(1.0 - rho * rho) * z2)};
      }
    }
    return {0.5, 0.5};  // unreachable
  }

 private:
  double uniform01() {
    // (x >> 11) yields 53 random bits; +0.5 keeps the value strictly
    // inside (0,1).
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  CopulaSpec spec_;
  std::mt19937_64 gen_;
};

inline std::vector<std::pair<double, double>> copula_sample(
    const CopulaSpec& c, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::domain_error("copula_sample: n must be >= 1");
  CopulaSampler s(c, seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(s.next());
  return out;
}

struct AxiomReport {
  bool grounded = true;
  bool margins = true;
  bool two_increasing = true;
  bool frechet = true;
  double worst_grounded = 0.0;
  double worst_margins = 0.0;
  double worst_two_increasing = 0.0;  // most negative 2-increment, as magnitude
  double worst_frechet = 0.0;

  bool all() const { return grounded && margins && two_increasing && frechet; }
};

/// Checks the copula axioms and the Frechet-Hoeffding bounds on a
/// grid_n x grid_n lattice over [0,1]^2. Tolerance 1e-9 absorbs the
/// bivariate-CDF quadrature error.
inline AxiomReport verify_copula_axioms(const CopulaSpec& c,
                                        std::size_t grid_n) {
  if (grid_n < 2) throw std::domain_error("verify_copula_axioms: grid_n < 2");
  const double tol = 1e-9;
  AxiomReport rep;
  std::vector<double> g(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i)
    g[i] = static_cast<double>(i) / static_cast<double>(grid_n - 1);

  std::vector<std::vector<double>> cval(grid_n, std::vector<double>(grid_n));
  for (std::size_t i = 0; i < grid_n; ++i)
    for (std::size_t j = 0; j < grid_n; ++j)
      cval[i][j] = copula_eval(c, g[i], g[j]);

  for (std::size_t i = 0; i < grid_n; ++i) {
    rep.worst_grounded = std::max(
        {rep.worst_grounded, std::abs(cval[i][0]), std::abs(cval[0][i])});
    rep.worst_margins =
        std::max({rep.worst_margins, std::abs(cval[i][grid_n - 1] - g[i]),
                  std::abs(cval[grid_n - 1][i] - g[i])});
    for (std::size_t j = 0; j < grid_n; ++j) {
      double lowerb = std::max(g[i] + g[j] - 1.0, 0.0);
      double upperb = std::min(g[i], g[j]);
      double viol = std::max(lowerb - cval[i][j], cval[i][j] - upperb);
      rep.worst_frechet = std::max(rep.worst_frechet, viol);
      if (i + 1 < grid_n && j + 1 < grid_n) {
        double inc =
            cval[i + 1][j + 1] - cval[i + 1][j] - cval[i][j + 1] + cval[i][j];
        rep.worst_two_increasing = std::max(rep.worst_two_increasing, -inc);
      }
    }
  }
  rep.grounded = rep.worst_grounded <= tol;
  rep.margins = rep.worst_margins <= tol;
  rep.two_increasing = rep.worst_two_increasing <= tol;
  rep.frechet = rep.worst_frechet <= tol;
  return rep;
}

}  // namespace w1

#endif  // W1_COPULA_HPP
