#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "levylab/core.hpp"

namespace levylab::stats {

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

/// Exact (Clopper-Pearson) binomial interval for k successes in n trials.
inline Interval clopper_pearson(std::int64_t k, std::int64_t n, double confidence = 0.99) {
  if (n <= 0 || k < 0 || k > n) throw domain_violation("clopper_pearson: need 0 <= k <= n, n > 0");
  const double alpha = 1.0 - confidence;
  const auto kd = static_cast<double>(k);
  const auto nd = static_cast<double>(n);
  Interval iv;
  iv.lower = k == 0 ? 0.0 : boost::math::ibeta_inv(kd, nd - kd + 1.0, alpha / 2.0);
  iv.upper = k == n ? 1.0 : boost::math::ibeta_inv(kd + 1.0, nd - kd, 1.0 - alpha / 2.0);
  return iv;
}

/// Larger distance from the point estimate k/n to either interval end.
inline double binomial_halfwidth(std::int64_t k, std::int64_t n, double confidence = 0.99) {
  const Interval iv = clopper_pearson(k, n, confidence);
  const double p = static_cast<double>(k) / static_cast<double>(n);
  return std::max(p - iv.lower, iv.upper - p);
}

/// Median of a sample (mean of the middle pair for even sizes).
inline double median(std::span<const double> xs) {
  if (xs.empty()) throw insufficient_data_error("median of empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

struct MeanStats {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanStats mean_and_stderr(std::span<const double> xs) {
  if (xs.size() < 2) throw insufficient_data_error("mean_and_stderr needs two samples");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

/// Survival function of the Kolmogorov distribution, Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  [[nodiscard]] bool passes(double alpha) const { return p_value >= alpha; }
};

/// p-value with the Stephens small-sample correction on the effective size.
inline double ks_p_value(double d, double effective_n) {
  const double s = std::sqrt(effective_n);
  return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}

inline KsResult ks_one_sample(std::span<const double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw insufficient_data_error("ks_one_sample: empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const auto n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return {d, ks_p_value(d, n)};
}

inline KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw insufficient_data_error("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto na = static_cast<double>(x.size());
  const auto nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, ks_p_value(d, na * nb / (na + nb))};
}

/// CDF of Beta(a, b).
inline std::function<double(double)> beta_cdf(double a, double b) {
  return [a, b](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a, b, x);
  };
}

}  // namespace levylab::stats
