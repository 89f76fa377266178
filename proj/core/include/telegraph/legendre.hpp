#pragma once

#include <functional>

#include "telegraph/extended_real.hpp"
#include "telegraph/params.hpp"

namespace telegraph {

using Cgf = std::function<ExtendedReal(double)>;

struct LegendreOptions {
  double s_lower = -8.0;         ///< initial left end of the grid
  int grid_points = 2048;
  double boundary_inset = 1e-9;  ///< grid stops this far below a finite cap
  double s_tolerance = 1e-12;    ///< golden-section stopping width (relative to max(1,|s|))
  double lower_limit = -1e12;    ///< give up (and report +inf) past this point
};

/// Maximiser of a unimodal f on [a, b] by golden-section search.
double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                               double tol);

/// sup_{s <= s_cap} { s z - cgf(s) } computed numerically: a coarse grid,
/// then golden-section refinement around the best grid point. The grid is
/// pushed further left while its maximum sits on the left edge; an objective
/// that keeps growing past `lower_limit` is reported as +inf.
///
/// Only point evaluations of `cgf` are used, so this serves as an
/// independent check of closed-form conjugates.
ExtendedReal numeric_legendre(const Cgf& cgf, ExtendedReal s_cap, double z,
                              const LegendreOptions& opt = {});

/// Numeric conjugate of Lambda(.; lambda, mu) over s <= (sqrt(lambda)-sqrt(mu))^2/2.
ExtendedReal numeric_h_a(double z, const RateParams& p);
/// Numeric conjugate of Lambda(.; lambda, mu) over s <= s_hat(lambda, mu, s_M).
ExtendedReal numeric_h_b(double z, const RateParams& p, double s_m);

}  // namespace telegraph
