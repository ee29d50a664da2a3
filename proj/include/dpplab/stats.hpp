#pragma once

// Goodness-of-fit helpers used by the samplers' tests and the CLI checks.

#include <functional>
#include <vector>

namespace dpplab {

double mean(const std::vector<double>& xs);
/// Unbiased sample variance.
double variance(const std::vector<double>& xs);

/// sup_x |F_n(x) - F(x)|, using both sides of each jump of the empirical CDF.
/// `cdf` must be continuous for the usual null distribution to apply.
double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);

/// sup_x |F_a(x) - F_b(x)|. Ties are handled by evaluating both empirical
/// CDFs after each distinct value, which is conservative on discrete data.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value of the two-sample statistic at level alpha.
double ks_two_sample_critical(std::size_t n1, std::size_t n2, double alpha);

/// sup_x (F_a(x) - F_b(x)) and sup_x (F_b(x) - F_a(x)), both >= 0.
struct OneSidedGaps {
  double a_over_b = 0.0;
  double b_over_a = 0.0;
};
OneSidedGaps ecdf_gaps(std::vector<double> a, std::vector<double> b);

/// Pearson statistic sum (O - E)^2 / E over cells with E > 0.
double chi_square_statistic(const std::vector<double>& observed, const std::vector<double>& expected);
double chi_square_quantile(double df, double p);

/// (1/2) sum |p_i - q_i|; the shorter vector is padded with zeros.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

/// Regularized lower incomplete gamma: CDF of Gamma(shape, 1).
double gamma_cdf(double shape, double x);

}  // namespace dpplab
