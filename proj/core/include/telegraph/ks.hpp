#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace telegraph {

/// Kolmogorov-Smirnov test result. n2 is 0 for a one-sample test.
struct KsReport {
  double statistic = 0.0;  ///< sup |F1 - F2|
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double p_value = 1.0;  ///< asymptotic Kolmogorov distribution
};

/// P(K > t) for the limiting Kolmogorov distribution, alternating series
/// truncated at 100 terms.
double kolmogorov_survival(double t);

KsReport ks_two_sample(std::vector<double> a, std::vector<double> b);
KsReport ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf);

}  // namespace telegraph
