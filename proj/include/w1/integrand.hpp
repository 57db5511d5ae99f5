#ifndef W1_INTEGRAND_HPP
#define W1_INTEGRAND_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "w1/copula.hpp"
#include "w1/distribution.hpp"

namespace w1 {

/// Sampled Vallender integrand Fx(t) + Fy(t) - 2 C(Fx(t), Fy(t)) on a
/// uniform t-grid, with its trapezoidal area.
struct IntegrandCurve {
  std::vector<double> t_grid;
  std::vector<double> values;
  CopulaSpec copula;
  double area = 0.0;
};

inline IntegrandCurve make_integrand_curve(const Distribution& x,
                                           const Distribution& y,
                                           const CopulaSpec& c,
                                           std::size_t grid, double t_lo,
                                           double t_hi) {
  if (grid < 2) throw std::domain_error("integrand curve: grid must be >= 2");
  if (!(t_lo < t_hi))
    throw std::domain_error("integrand curve: t_lo must be < t_hi");
  IntegrandCurve curve;
  curve.copula = c;
  curve.t_grid.reserve(grid);
  curve.values.reserve(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) /
                          static_cast<double>(grid - 1);
    double fx = x.cdf(t), fy = y.cdf(t);
    curve.t_grid.push_back(t);
    curve.values.push_back(fx + fy - 2.0 * copula_eval(c, fx, fy));
  }
  for (std::size_t i = 0; i + 1 < grid; ++i) {
    curve.area += 0.5 * (curve.values[i] + curve.values[i + 1]) *
                  (curve.t_grid[i + 1] - curve.t_grid[i]);
  }
  return curve;
}

/// Default t-window: both marginals' quantiles at level 1e-6.
inline std::pair<double, double> default_t_window(const Distribution& x,
                                                  const Distribution& y) {
  const double eps = 1e-6;
  double lo = std::min(x.quantile(eps), y.quantile(eps));
  double hi = std::max(x.quantile(1.0 - eps), y.quantile(1.0 - eps));
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

/// The ten Gaussian correlation parameters of the reference copula family,
/// in their conventional order.
inline const std::vector<double>& default_gaussian_rhos() {
  static const std::vector<double> rhos = {-1.0, -0.8, -0.64, -0.4, -0.12,
                                           0.64, 0.4,  0.12,  0.8,  1.0};
  return rhos;
}

}  // namespace w1

#endif  // W1_INTEGRAND_HPP
