#include "telegraph/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace telegraph {

namespace {

// Relative tolerance used to decide s_M == log sqrt(lambda/mu).
constexpr double kCaseTieTolerance = 1e-12;

// D(s) = sqrt((lambda+mu-2s)^2 - 4 lambda mu), factored as
// sqrt(2 (b - s) (lambda + mu - 2s + 2 sqrt(lambda mu))) so it vanishes
// exactly at the boundary b instead of through cancellation.
double discriminant_root(double s, const RateParams& p) {
  const double b = cgf_boundary(p);
  const double gap = std::max(0.0, b - s);
  const double c = p.lambda() + p.mu() - 2.0 * s;
  return std::sqrt(2.0 * gap * (c + 2.0 * std::sqrt(p.lambda() * p.mu())));
}

double case_threshold(const RateParams& p) { return 0.5 * std::log(p.lambda() / p.mu()); }

// s_M >= log sqrt(lambda/mu), and whether the two are (numerically) equal.
struct ThresholdCompare {
  bool reaches;
  bool tie;
};

ThresholdCompare compare_to_threshold(const RateParams& p, double s_m) {
  if (std::isinf(s_m)) return {true, false};
  const double t = case_threshold(p);
  const bool tie = std::abs(s_m - t) <= kCaseTieTolerance * std::max(1.0, std::abs(t));
  return {tie || s_m > t, tie};
}

void require_interior(double s, const RateParams& p, const char* fn) {
  if (!(s < cgf_boundary(p))) {
    std::ostringstream os;
    os << fn << ": s=" << s << " is not below the boundary " << cgf_boundary(p);
    throw DomainError(os.str());
  }
}

}  // namespace

double cgf_boundary(const RateParams& p) {
  const double d = std::sqrt(p.lambda()) - std::sqrt(p.mu());
  return 0.5 * d * d;
}

ExtendedReal lambda_fn(double s, const RateParams& p) {
  if (s > cgf_boundary(p)) return ExtendedReal::infinity();
  // (lambda - mu - D)/2 rationalised: (lambda-mu)^2 - D^2 = 4 s (lambda + mu - s).
  const double d = discriminant_root(s, p);
  return 2.0 * s * (p.lambda() + p.mu() - s) / (p.lambda() - p.mu() + d);
}

double lambda_deriv1(double s, const RateParams& p) {
  require_interior(s, p, "lambda_deriv1");
  return (p.lambda() + p.mu() - 2.0 * s) / discriminant_root(s, p);
}

double lambda_deriv2(double s, const RateParams& p) {
  require_interior(s, p, "lambda_deriv2");
  const double d = discriminant_root(s, p);
  return 8.0 * p.lambda() * p.mu() / (d * d * d);
}

ExtendedReal g_c0(double s, const RateParams& p) {
  if (s > cgf_boundary(p)) return ExtendedReal::infinity();
  // Smaller root of mu y^2 - (lambda+mu-2s) y + lambda = 0, in the form
  // 2 lambda / (c + D) that avoids cancellation.
  const double c = p.lambda() + p.mu() - 2.0 * s;
  return 2.0 * p.lambda() / (c + discriminant_root(s, p));
}

ExtendedReal g_cx(double s, const RateParams& p) {
  if (s > cgf_boundary(p)) return ExtendedReal::infinity();
  return g_c0(s, p).value() * std::exp(p.x() * lambda_fn(s, p).value());
}

double log_g_ax(double s, const RateParams& p, const MDistribution& m) {
  const CaseLabel label = classify_domain(p, m);
  if (!label.domain.contains(s)) return std::numeric_limits<double>::infinity();
  double y = g_c0(s, p).value();
  const DomainSpec md = m.domain();
  if (md.is_bounded() && md.boundary == Boundary::closed) y = std::min(y, std::exp(md.s_sup));
  const ExtendedReal gm = m.pgf(y);
  if (gm.is_infinite()) return std::numeric_limits<double>::infinity();
  return std::log(gm.value()) + p.x() * lambda_fn(s, p).value();
}

ExtendedReal g_ax(double s, const RateParams& p, const MDistribution& m) {
  const double lg = log_g_ax(s, p, m);
  if (std::isinf(lg)) return ExtendedReal::infinity();
  return std::exp(lg);
}

CaseLabel classify_domain(const RateParams& p, const MDistribution& m) {
  const DomainSpec md = m.domain();
  const double b = cgf_boundary(p);
  const ThresholdCompare cmp = compare_to_threshold(p, md.s_sup);
  if (cmp.reaches) {
    const Boundary bd = (cmp.tie && md.boundary == Boundary::open) ? Boundary::open : Boundary::closed;
    return {DomainCase::A, std::nullopt, DomainSpec::up_to(b, bd)};
  }
  const double sh = s_hat(p, md.s_sup);
  return {DomainCase::B, sh, DomainSpec::up_to(sh, md.boundary)};
}

double s_hat(const RateParams& p, double s_m) {
  if (compare_to_threshold(p, s_m).reaches) {
    std::ostringstream os;
    os << "s_hat: s_M=" << s_m << " is not below log sqrt(lambda/mu)=" << case_threshold(p)
       << " (Case A)";
    throw DomainError(os.str());
  }
  return 0.5 * (-p.mu() * std::expm1(s_m) - p.lambda() * std::expm1(-s_m));
}

double z_tilde(const RateParams& p, double s_m) { return lambda_deriv1(s_hat(p, s_m), p); }

ExtendedReal h_a(double z, const RateParams& p) {
  if (z < 1.0) return ExtendedReal::infinity();
  const double d = std::sqrt((z - 1.0) * p.lambda()) - std::sqrt((z + 1.0) * p.mu());
  return 0.5 * d * d;
}

ExtendedReal h_b(double z, const RateParams& p, double s_m) {
  const double sh = s_hat(p, s_m);
  if (z < 1.0) return ExtendedReal::infinity();
  if (z <= lambda_deriv1(sh, p)) return h_a(z, p);
  return sh * z - lambda_fn(sh, p).value();
}

ExtendedReal rate_i1(double z, const RateParams& p) { return h_a(z, p); }

ExtendedReal rate_i2(double z, const ScalingParams& sp) {
  const ExtendedReal h = h_a(z / sp.x(), sp.unit_rates());
  if (h.is_infinite()) return h;
  return sp.x() * h.value();
}

RateFunctionResult ld_rate_scaling1(double z, const RateParams& p, const MDistribution& m) {
  const CaseLabel label = classify_domain(p, m);
  if (label.domain_case == DomainCase::A) return {h_a(z, p), -std::numeric_limits<double>::infinity(), DomainCase::A};
  const double s_m = m.domain().s_sup;
  return {h_b(z, p, s_m), z_tilde(p, s_m), DomainCase::B};
}

RateFunctionResult ld_rate_scaling2(double z, const ScalingParams& sp, const MDistribution& m) {
  const double x = sp.x();
  const RateParams unit = sp.unit_rates();
  RateFunctionResult r = ld_rate_scaling1(z / x, unit, m);
  if (r.value.is_finite()) r.value = x * r.value.value();
  r.exposed_from *= x;
  return r;
}

double rate_md1(double z, const RateParams& p) { return z * z / (2.0 * lambda_deriv2(0.0, p)); }

double rate_md2(double z, const ScalingParams& sp) {
  return z * z / (2.0 * sp.x() * lambda_deriv2(0.0, sp.unit_rates()));
}

double mean_c0(const RateParams& p) { return 2.0 / (p.lambda() - p.mu()); }

double mean_ax(const RateParams& p, const MDistribution& m) {
  return m.mean() * mean_c0(p) + p.x() * (p.lambda() + p.mu()) / (p.lambda() - p.mu());
}

}  // namespace telegraph
