#ifndef W1_DISTRIBUTION_HPP
#define W1_DISTRIBUTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "w1/normal.hpp"

namespace w1 {

struct SupportBounds {
  double lower;
  double upper;
  bool finite;
};

/// A univariate law exposing its CDF, generalized inverse (quantile),
/// support bounds and mean. Immutable after construction; all operations
/// are pure and thread-safe.
///
/// quantile(u) is the generalized inverse inf{x : cdf(x) >= u}. For
/// Empirical this is the left-continuous step function through the order
/// statistics (no interpolation).
class Distribution {
 public:
  enum class Family { Normal, Uniform, Exponential, Empirical };

  static Distribution normal(double mu, double sigma) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma <= 0.0)
      throw std::domain_error("Normal: sigma must be > 0 and parameters finite");
    Distribution d(Family::Normal);
    d.p1_ = mu;
    d.p2_ = sigma;
    return d;
  }

  static Distribution uniform(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
      throw std::domain_error("Uniform: requires finite a < b");
    Distribution d(Family::Uniform);
    d.p1_ = a;
    d.p2_ = b;
    return d;
  }

  static Distribution exponential(double lambda) {
    if (!std::isfinite(lambda) || lambda <= 0.0)
      throw std::domain_error("Exponential: lambda must be > 0");
    Distribution d(Family::Exponential);
    d.p1_ = lambda;
    return d;
  }

  static Distribution empirical(std::vector<double> samples) {
    if (samples.empty())
      throw std::domain_error("Empirical: at least one sample required");
    for (double s : samples)
      if (!std::isfinite(s))
        throw std::domain_error("Empirical: samples must be finite");
    std::stable_sort(samples.begin(), samples.end());
    Distribution d(Family::Empirical);
    d.samples_ = std::move(samples);
    return d;
  }

  Family family() const { return family_; }
  const std::vector<double>& samples() const { return samples_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  double cdf(double x) const {
    if (!std::isfinite(x)) throw std::domain_error("cdf: x must be finite");
    switch (family_) {
      case Family::Normal:
        return normal_cdf((x - p1_) / p2_);
      case Family::Uniform:
        if (x <= p1_) return 0.0;
        if (x >= p2_) return 1.0;
        return (x - p1_) / (p2_ - p1_);
      case Family::Exponential:
        return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
      case Family::Empirical: {
        auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
        return static_cast<double>(it - samples_.begin()) /
               static_cast<double>(samples_.size());
      }
    }
    return 0.0;  // unreachable
  }

  /// inf{x : cdf(x) >= u}. u = 0 or 1 returns the support bound, which is
  /// +/-infinity for unbounded families.
  double quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0))
      throw std::domain_error("quantile: u outside [0,1]");
    if (u == 0.0) return support().lower;
    if (u == 1.0) return support().upper;
    switch (family_) {
      case Family::Normal:
        return p1_ + p2_ * normal_quantile(u);
      case Family::Uniform:
        return p1_ + u * (p2_ - p1_);
      case Family::Exponential:
        return -std::log1p(-u) / p1_;
      case Family::Empirical: {
        // order statistic at ceil(u*n)
        const std::size_t n = samples_.size();
        double k = std::ceil(u * static_cast<double>(n));
        std::size_t idx = static_cast<std::size_t>(k);
        if (idx < 1) idx = 1;
        if (idx > n) idx = n;
        return samples_[idx - 1];
      }
    }
    return 0.0;  // unreachable
  }

  SupportBounds support() const {
    const double inf = std::numeric_limits<double>::infinity();
    switch (family_) {
      case Family::Normal:
        return {-inf, inf, false};
      case Family::Uniform:
        return {p1_, p2_, true};
      case Family::Exponential:
        return {0.0, inf, false};
      case Family::Empirical:
        return {samples_.front(), samples_.back(), true};
    }
    return {-inf, inf, false};  // unreachable
  }

  double mean() const {
    switch (family_) {
      case Family::Normal:
        return p1_;
      case Family::Uniform:
        return 0.5 * (p1_ + p2_);
      case Family::Exponential:
        return 1.0 / p1_;
      case Family::Empirical:
        return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
               static_cast<double>(samples_.size());
    }
    return 0.0;  // unreachable
  }

 private:
  explicit Distribution(Family f) : family_(f) {}

  Family family_;
  double p1_ = 0.0;
  double p2_ = 0.0;
  std::vector<double> samples_;
};

}  // namespace w1

#endif  // W1_DISTRIBUTION_HPP
