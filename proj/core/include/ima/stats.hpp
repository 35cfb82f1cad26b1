#pragma once

#include <functional>
#include <vector>

namespace ima {

/// sup_x |F_n(x) - cdf(x)| for the empirical distribution of `sample`.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// Asymptotic critical value sqrt(-log(alpha/2)/2) / sqrt(n_eff).
double ks_critical(double alpha, double n_eff);
/// Upper alpha quantile of the chi-squared law with `dof` degrees of freedom.
double chi_squared_critical(double alpha, double dof);

/// sqrt(p (1 - p) / n).
double binomial_stderr(double p, std::size_t n);

/// True when no adjacent pair decreases by more than 2 sqrt(se_i^2 + se_{i+1}^2).
bool nondecreasing_within_2sigma(const std::vector<double>& fractions, const std::vector<std::size_t>& trials);

struct RunningMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const RunningMoments& other);
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stderr_of_mean() const;
};

}  // namespace ima
