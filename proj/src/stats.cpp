#include "dpplab/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>

#include "dpplab/error.hpp"

namespace dpplab {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw ArgumentError("mean: empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
  if (xs.size() < 2) throw ArgumentError("variance: need at least two values");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw ArgumentError("ks_one_sample: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

OneSidedGaps ecdf_gaps(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("ecdf_gaps: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  OneSidedGaps g;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    const double diff = i / na - j / nb;
    g.a_over_b = std::max(g.a_over_b, diff);
    g.b_over_a = std::max(g.b_over_a, -diff);
  }
  return g;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  const OneSidedGaps g = ecdf_gaps(std::move(a), std::move(b));
  return std::max(g.a_over_b, g.b_over_a);
}

double ks_two_sample_critical(std::size_t n1, std::size_t n2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("ks_two_sample_critical: alpha in (0,1)");
  if (n1 == 0 || n2 == 0) throw ArgumentError("ks_two_sample_critical: empty sample");
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  return c * std::sqrt(static_cast<double>(n1 + n2) / (static_cast<double>(n1) * n2));
}

double chi_square_statistic(const std::vector<double>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size()) {
    throw DimensionError("chi_square_statistic: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] > 0.0) s += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  return s;
}

double chi_square_quantile(double df, double p) {
  return boost::math::quantile(boost::math::chi_squared(df), p);
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    s += std::abs(a - b);
  }
  return s / 2.0;
}

double gamma_cdf(double shape, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, x);
}

}  // namespace dpplab
