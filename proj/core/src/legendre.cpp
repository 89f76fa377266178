#include "telegraph/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "telegraph/analytics.hpp"

namespace telegraph {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 500 && (b - a) > tol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

ExtendedReal numeric_legendre(const Cgf& cgf, ExtendedReal s_cap, double z,
                              const LegendreOptions& opt) {
  auto objective = [&](double s) {
    const ExtendedReal k = cgf(s);
    return k.is_finite() ? s * z - k.value() : kNegInf;
  };

  const bool capped = s_cap.is_finite();
  double hi = capped ? s_cap.value() - opt.boundary_inset : std::max(1.0, -opt.s_lower);
  double lo = std::min(opt.s_lower, hi - 1.0);
  const int n = std::max(opt.grid_points, 3);

  std::vector<double> grid(static_cast<std::size_t>(n));
  std::size_t best = 0;
  double best_val = kNegInf;
  for (;;) {
    const double step = (hi - lo) / (n - 1);
    best = 0;
    best_val = kNegInf;
    for (int i = 0; i < n; ++i) {
      grid[static_cast<std::size_t>(i)] = (i == n - 1) ? hi : lo + step * i;
      const double v = objective(grid[static_cast<std::size_t>(i)]);
      if (v > best_val) {
        best_val = v;
        best = static_cast<std::size_t>(i);
      }
    }
    const bool at_left = best == 0;
    const bool at_right = best + 1 == grid.size() && !capped;
    if (at_left) {
      if (lo <= opt.lower_limit) {
        // Still rising at the far left: unbounded unless the rise has flattened
        // out (sup approached asymptotically, e.g. z = 1 for Lambda).
        const double rise = best_val - objective(0.5 * lo);
        if (rise > 1e-6 * std::max(1.0, std::abs(best_val))) return ExtendedReal::infinity();
        return best_val;
      }
      lo = std::max(opt.lower_limit, hi - 8.0 * (hi - lo));
      continue;
    }
    if (at_right) {
      if (hi >= -opt.lower_limit) return ExtendedReal::infinity();
      hi = std::min(-opt.lower_limit, lo + 8.0 * (hi - lo));
      continue;
    }
    break;
  }

  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  const double s_star = golden_section_maximize(objective, a, b, opt.s_tolerance);
  double result = std::max(best_val, objective(s_star));
  if (capped) result = std::max(result, objective(s_cap.value()));
  return result;
}

ExtendedReal numeric_h_a(double z, const RateParams& p) {
  LegendreOptions opt;
  opt.s_lower = -std::abs(8.0 * p.lambda());
  return numeric_legendre([&p](double s) { return lambda_fn(s, p); }, cgf_boundary(p), z, opt);
}

ExtendedReal numeric_h_b(double z, const RateParams& p, double s_m) {
  LegendreOptions opt;
  opt.s_lower = -std::abs(8.0 * p.lambda());
  return numeric_legendre([&p](double s) { return lambda_fn(s, p); }, s_hat(p, s_m), z, opt);
}

}  // namespace telegraph
