#include "telegraph/ks.hpp"

#include <algorithm>
#include <cmath>

#include "telegraph/errors.hpp"

namespace telegraph {

double kolmogorov_survival(double t) {
  // Below ~0.2 the series needs far more than 100 terms; P(K > t) is 1 to
  // double precision there anyway.
  if (t < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsReport ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ParameterError("ks_two_sample: both samples must be non-empty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto n1 = static_cast<double>(a.size());
  const auto n2 = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  KsReport r;
  r.statistic = d;
  r.n1 = a.size();
  r.n2 = b.size();
  const double ne = n1 * n2 / (n1 + n2);
  r.p_value = kolmogorov_survival(std::sqrt(ne) * d);
  return r;
}

KsReport ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf) {
  if (a.empty()) throw ParameterError("ks_one_sample: sample must be non-empty");
  std::sort(a.begin(), a.end());
  const auto n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    const auto fi = static_cast<double>(i);
    d = std::max({d, (fi + 1.0) / n - f, f - fi / n});
  }
  KsReport r;
  r.statistic = d;
  r.n1 = a.size();
  r.n2 = 0;
  r.p_value = kolmogorov_survival(std::sqrt(n) * d);
  return r;
}

}  // namespace telegraph
