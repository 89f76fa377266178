#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "telegraph/analytics.hpp"
#include "telegraph/errors.hpp"

using namespace telegraph;

namespace {

// Textbook forms, written directly from the square-root expressions.
double naive_lambda(double s, double l, double m) {
  const double c = l + m - 2.0 * s;
  return 0.5 * (l - m - std::sqrt(c * c - 4.0 * l * m));
}

double naive_g_c0(double s, double l, double m) {
  const double c = l + m - 2.0 * s;
  return (c - std::sqrt(c * c - 4.0 * l * m)) / (2.0 * m);
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0) == (f(mid) < 0)) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// sup_s {s z - Lambda(s)} over s <= cap, by ternary search on a concave objective.
double brute_legendre(double z, const RateParams& p, double cap) {
  auto obj = [&](double s) { return s * z - naive_lambda(s, p.lambda(), p.mu()); };
  double lo = -1e4, hi = cap;
  for (int i = 0; i < 400; ++i) {
    const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
    if (obj(a) < obj(b)) lo = a; else hi = b;
  }
  return obj(0.5 * (lo + hi));
}

const RateParams kP21(2.0, 1.0, 1.0);
const RateParams kP41(4.0, 1.0, 1.0);

}  // namespace

TEST(Lambda, VanishesAtZero) {
  EXPECT_EQ(lambda_fn(0.0, kP21).value(), 0.0);
  EXPECT_EQ(lambda_fn(0.0, RateParams(1e6, 3.0)).value(), 0.0);
}

TEST(Lambda, ValueAtBoundary) {
  EXPECT_DOUBLE_EQ(cgf_boundary(kP41), 0.5);
  EXPECT_NEAR(lambda_fn(0.5, kP41).value(), 1.5, 1e-14);
  EXPECT_TRUE(lambda_fn(0.5 + 1e-12, kP41).is_infinite());
}

TEST(Lambda, MatchesTextbookForm) {
  for (double s : {-50.0, -3.0, -0.1, 0.05, 0.08, 0.085}) {
    EXPECT_NEAR(lambda_fn(s, kP21).value(), naive_lambda(s, 2.0, 1.0), 1e-12) << s;
  }
}

TEST(Lambda, StableForLargeRates) {
  // The textbook form cancels catastrophically here. Lambda is the smaller root of
  // L^2 - (lambda - mu) L + s (lambda + mu - s) = 0, which gives a residual check.
  const RateParams p(2e8, 1e8);
  const double s = 1e-3;
  const double v = lambda_fn(s, p).value();
  const double residual = v * v - (p.lambda() - p.mu()) * v + s * (p.lambda() + p.mu() - s);
  EXPECT_NEAR(residual / (s * (p.lambda() + p.mu())), 0.0, 1e-12);
  EXPECT_NEAR(v, 3e-3, 1e-10);
}

TEST(LambdaDerivatives, FirstDerivativeAtZero) {
  EXPECT_DOUBLE_EQ(lambda_deriv1(0.0, RateParams(3.0, 1.0)), 2.0);
  EXPECT_DOUBLE_EQ(lambda_deriv1(0.0, kP21), 3.0);
}

TEST(LambdaDerivatives, MatchFiniteDifferences) {
  const double h = 1e-6;
  for (const auto& p : {kP21, kP41, RateParams(5.0, 0.5)}) {
    const double b = cgf_boundary(p);
    for (double s : {-2.0, -0.5, 0.0, 0.5 * b, 0.9 * b}) {
      const double fd1 = (lambda_fn(s + h, p).value() - lambda_fn(s - h, p).value()) / (2 * h);
      EXPECT_NEAR(lambda_deriv1(s, p), fd1, 1e-5 * std::max(1.0, std::abs(fd1)));
      const double fd2 = (lambda_deriv1(s + h, p) - lambda_deriv1(s - h, p)) / (2 * h);
      EXPECT_NEAR(lambda_deriv2(s, p), fd2, 1e-5 * std::max(1.0, std::abs(fd2)));
    }
  }
}

TEST(LambdaDerivatives, SecondDerivativeAtZero) {
  // 8 lambda mu / (lambda - mu)^3
  EXPECT_NEAR(lambda_deriv2(0.0, kP21), 16.0, 1e-13);
  EXPECT_NEAR(lambda_deriv2(0.0, kP41), 32.0 / 27.0, 1e-15);
}

TEST(LambdaDerivatives, UndefinedAtBoundary) {
  EXPECT_THROW(lambda_deriv1(0.5, kP41), DomainError);
  EXPECT_THROW(lambda_deriv2(0.6, kP41), DomainError);
}

TEST(LambdaProperties, ConvexAndIncreasing) {
  const double b = cgf_boundary(kP21);
  double prev = -1e300;
  for (int i = 0; i <= 100; ++i) {
    const double s = std::min(b, -5.0 + (b + 5.0) * i / 100.0);
    const double v = lambda_fn(s, kP21).value();
    EXPECT_GT(v, prev);
    prev = v;
    if (s < b) EXPECT_GT(lambda_deriv2(s, kP21), 0.0);
  }
}

TEST(GC0, KnownValues) {
  EXPECT_NEAR(g_c0(-1.0, kP21).value(), (5.0 - std::sqrt(17.0)) / 2.0, 1e-14);
  EXPECT_NEAR(g_c0(-1.0, kP21).value(), 0.43845, 1e-5);
  EXPECT_DOUBLE_EQ(g_c0(0.0, kP21).value(), 1.0);
  EXPECT_NEAR(g_c0(cgf_boundary(kP21), kP21).value(), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(g_c0(0.5, kP41).value(), 2.0, 1e-14);
  EXPECT_TRUE(g_c0(0.51, kP41).is_infinite());
}

TEST(GC0, MatchesTextbookForm) {
  for (double s : {-4.0, -0.2, 0.1, 0.4}) {
    EXPECT_NEAR(g_c0(s, kP41).value(), naive_g_c0(s, 4.0, 1.0), 1e-12);
  }
}

TEST(GCx, FactorisesThroughLambda) {
  for (double x : {0.01, 0.5, 3.0}) {
    const auto p = kP21.with_x(x);
    for (double s : {-1.0, 0.08}) {
      EXPECT_NEAR(g_cx(s, p).value(), naive_g_c0(s, 2, 1) * std::exp(x * naive_lambda(s, 2, 1)), 1e-12);
    }
  }
}

TEST(GCx, LogDerivativeAtZeroIsMean) {
  const auto p = kP21.with_x(2.0);
  const double h = 1e-6;
  const double fd = (std::log(g_cx(h, p).value()) - std::log(g_cx(-h, p).value())) / (2 * h);
  // E[C_0] + x Lambda'(0) = 2 + 2*3
  EXPECT_NEAR(fd, 8.0, 1e-6);
}

TEST(GAx, GeometricCompositionFormula) {
  const auto m = MDistribution::geometric(0.5);
  for (double s : {-1.0, -0.1, 0.05, 0.08}) {
    const double y = naive_g_c0(s, 2, 1);
    const double expected = 0.5 * y / (1.0 - 0.5 * y) * std::exp(naive_lambda(s, 2, 1));
    EXPECT_NEAR(g_ax(s, kP21, m).value(), expected, 1e-11 * expected) << s;
    EXPECT_NEAR(log_g_ax(s, kP21, m), std::log(expected), 1e-11);
  }
  EXPECT_DOUBLE_EQ(g_ax(0.0, kP21, m).value(), 1.0);
}

TEST(GAx, PigCaseBValueAtSHat) {
  const auto m = MDistribution::shifted_pig(1.0, 1.0);
  const auto label = classify_domain(kP41, m);
  ASSERT_EQ(label.domain_case, DomainCase::B);
  const double sh = *label.s_hat;
  const double expected = 1.5 * std::exp(1.0 + naive_lambda(sh, 4, 1));
  EXPECT_NEAR(g_ax(sh, kP41, m).value(), expected, 1e-10 * expected);
  EXPECT_TRUE(g_ax(sh + 1e-9, kP41, m).is_infinite());
}

TEST(GAx, InfiniteOutsideDomain) {
  const auto m = MDistribution::shifted_poisson(3.0);
  EXPECT_TRUE(g_ax(cgf_boundary(kP21) + 1e-6, kP21, m).is_infinite());
  EXPECT_TRUE(std::isinf(log_g_ax(1.0, kP21, m)));
  EXPECT_TRUE(g_ax(cgf_boundary(kP21), kP21, m).is_finite());
}

TEST(Classify, PoissonIsAlwaysCaseA) {
  const auto l = classify_domain(kP41, MDistribution::shifted_poisson(2.0));
  EXPECT_EQ(l.domain_case, DomainCase::A);
  EXPECT_FALSE(l.s_hat.has_value());
  EXPECT_DOUBLE_EQ(l.domain.s_sup, 0.5);
  EXPECT_EQ(l.domain.boundary, Boundary::closed);
}

TEST(Classify, GeometricCases) {
  // s_M = log 2 against log sqrt(lambda/mu)
  const auto m = MDistribution::geometric(0.5);
  EXPECT_EQ(classify_domain(kP21, m).domain_case, DomainCase::A);
  EXPECT_EQ(classify_domain(RateParams(9.0, 1.0), m).domain_case, DomainCase::B);
  const auto b = classify_domain(RateParams(9.0, 1.0), m);
  EXPECT_EQ(b.domain.boundary, Boundary::open);
  EXPECT_DOUBLE_EQ(b.domain.s_sup, *b.s_hat);
}

TEST(Classify, TieWithOpenBoundaryIsOpenAtCgfBoundary) {
  const auto l = classify_domain(kP41, MDistribution::geometric(0.5));
  EXPECT_EQ(l.domain_case, DomainCase::A);
  EXPECT_DOUBLE_EQ(l.domain.s_sup, 0.5);
  EXPECT_EQ(l.domain.boundary, Boundary::open);
  EXPECT_TRUE(g_ax(0.5, kP41, MDistribution::geometric(0.5)).is_infinite());
}

TEST(Classify, TieWithClosedBoundaryStaysClosed) {
  // s_M = log(1 + xi^2/(2 theta)) = log 2 with theta = 1, xi = sqrt 2
  const auto m = MDistribution::shifted_pig(1.0, std::sqrt(2.0));
  const auto l = classify_domain(kP41, m);
  EXPECT_EQ(l.domain_case, DomainCase::A);
  EXPECT_EQ(l.domain.boundary, Boundary::closed);
  EXPECT_TRUE(g_ax(0.5, kP41, m).is_finite());
}

TEST(SHat, MatchesBisectionOracle) {
  const double s_m = 0.2;
  const double oracle = bisect([&](double s) { return naive_g_c0(s, 4, 1) - std::exp(s_m); }, 0.0, 0.5);
  EXPECT_NEAR(s_hat(kP41, s_m), oracle, 1e-12);
  EXPECT_NEAR(s_hat(kP41, s_m), 0.251837, 1e-6);
}

TEST(SHat, GeometricClosedForm) {
  // s_M = -log(1-alpha): s_hat = (lambda alpha - mu alpha/(1-alpha)) / 2
  const double alpha = 0.2;
  EXPECT_NEAR(s_hat(kP41, -std::log1p(-alpha)), (4.0 * alpha - alpha / (1.0 - alpha)) / 2.0, 1e-14);
  const auto l = classify_domain(kP41, MDistribution::geometric(alpha));
  ASSERT_EQ(l.domain_case, DomainCase::B);
  EXPECT_NEAR(*l.s_hat, 0.275, 1e-14);
}

TEST(SHat, ThrowsInCaseA) { EXPECT_THROW(s_hat(kP41, 1.0), DomainError); }

TEST(ZTilde, IsDerivativeAtSHat) {
  const double s_m = 0.2;
  const double sh = s_hat(kP41, s_m);
  const double h = 1e-7;
  const double fd = (naive_lambda(sh + h, 4, 1) - naive_lambda(sh - h, 4, 1)) / (2 * h);
  EXPECT_NEAR(z_tilde(kP41, s_m), fd, 1e-6);
  const double c = 5.0 - 2.0 * sh;
  EXPECT_NEAR(z_tilde(kP41, s_m), c / std::sqrt(c * c - 16.0), 1e-12);
}

TEST(HA, ValueAtOneIsMu) {
  EXPECT_NEAR(h_a(1.0, kP21).value(), 1.0, 1e-14);
  EXPECT_NEAR(h_a(1.0, RateParams(7.0, 2.5)).value(), 2.5, 1e-14);
}

TEST(HA, ZeroAtMeanSpeed) {
  EXPECT_NEAR(h_a(3.0, kP21).value(), 0.0, 1e-15);
  EXPECT_NEAR(h_a(5.0 / 3.0, kP41).value(), 0.0, 1e-15);
}

TEST(HA, InfiniteBelowOne) {
  EXPECT_TRUE(h_a(0.999, kP21).is_infinite());
  EXPECT_TRUE(h_a(-2.0, kP21).is_infinite());
}

TEST(HA, EqualsBruteForceLegendre) {
  for (double z : {1.2, 2.0, 3.0, 6.0, 40.0}) {
    EXPECT_NEAR(h_a(z, kP21).value(), brute_legendre(z, kP21, cgf_boundary(kP21)), 1e-8) << z;
  }
}

TEST(HB, EqualsHAUpToZTildeThenLinear) {
  const double s_m = 0.2;
  const double zt = z_tilde(kP41, s_m);
  const double sh = s_hat(kP41, s_m);
  for (double z : {1.0, 1.3, 0.5 * (1.0 + zt), zt}) {
    EXPECT_NEAR(h_b(z, kP41, s_m).value(), h_a(z, kP41).value(), 1e-12) << z;
  }
  for (double z : {zt + 0.1, zt + 2.0, 50.0}) {
    EXPECT_NEAR(h_b(z, kP41, s_m).value(), sh * z - naive_lambda(sh, 4, 1), 1e-10);
    EXPECT_NEAR(h_b(z, kP41, s_m).value(), brute_legendre(z, kP41, sh), 1e-7);
    EXPECT_LT(h_b(z, kP41, s_m).value(), h_a(z, kP41).value());
  }
}

TEST(HB, ContinuousAndConvex) {
  const double s_m = 0.2;
  const double zt = z_tilde(kP41, s_m);
  EXPECT_NEAR(h_b(zt - 1e-9, kP41, s_m).value(), h_b(zt + 1e-9, kP41, s_m).value(), 1e-8);
  const double dz = 0.01;
  for (double z = 1.0 + dz; z < zt + 3.0; z += dz) {
    const double second = h_b(z + dz, kP41, s_m).value() - 2 * h_b(z, kP41, s_m).value() +
                          h_b(z - dz, kP41, s_m).value();
    EXPECT_GE(second, -1e-12) << z;
  }
}

TEST(RateFunctions, I1IsHA) {
  for (double z : {0.5, 1.0, 2.5, 10.0}) EXPECT_EQ(rate_i1(z, kP21), h_a(z, kP21));
}

TEST(RateFunctions, I2ScalesWithX) {
  const ScalingParams sp(2.0, 1000.0, 2.0);
  for (double z : {2.0, 3.0, 6.0, 9.0}) {
    EXPECT_NEAR(rate_i2(z, sp).value(), 2.0 * h_a(z / 2.0, RateParams(2.0, 1.0)).value(), 1e-14);
  }
  EXPECT_TRUE(rate_i2(1.5, sp).is_infinite());
}

TEST(RateFunctions, ScalingIdentities) {
  // Lambda(mu s; beta mu, mu) = mu Lambda(s; beta, 1)
  const double beta = 2.5;
  for (double mu : {1e-3, 7.0, 1e4}) {
    const RateParams big(beta * mu, mu), unit(beta, 1.0);
    for (double s : {-3.0, -0.2, 0.1, 0.16}) {
      const double lhs = lambda_fn(mu * s, big).value();
      const double rhs = mu * lambda_fn(s, unit).value();
      EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs)) << mu << " " << s;
      EXPECT_NEAR(mu * lambda_deriv2(mu * s, big), lambda_deriv2(s, unit),
                  1e-12 * lambda_deriv2(s, unit));
    }
  }
}

TEST(RateFunctions, LdRateScaling2MatchesScaling1OnUnitRates) {
  const ScalingParams sp(4.0, 500.0, 3.0);
  const auto m = MDistribution::geometric(0.2);
  const double zt = z_tilde(RateParams(4.0, 1.0), -std::log1p(-0.2));
  for (double z : {3.0, 5.0, 3.0 * zt + 1.0, 20.0}) {
    const auto r2 = ld_rate_scaling2(z, sp, m);
    const auto r1 = ld_rate_scaling1(z / 3.0, RateParams(4.0, 1.0, 1.0), m);
    EXPECT_NEAR(r2.value.value(), 3.0 * r1.value.value(), 1e-12);
    EXPECT_EQ(r2.domain_case, DomainCase::B);
    EXPECT_NEAR(r2.exposed_from, 3.0 * zt, 1e-12);
  }
}

TEST(RateFunctions, LdRateScaling1CaseA) {
  const auto r = ld_rate_scaling1(2.0, kP21, MDistribution::shifted_poisson(3.0));
  EXPECT_EQ(r.domain_case, DomainCase::A);
  EXPECT_EQ(r.value, h_a(2.0, kP21));
  EXPECT_TRUE(std::isinf(r.exposed_from) && r.exposed_from < 0);
}

TEST(RateFunctions, ModerateDeviationRates) {
  EXPECT_DOUBLE_EQ(rate_md2(4.0, ScalingParams(2.0, 100.0, 1.0)), 0.5);
  EXPECT_DOUBLE_EQ(rate_md2(4.0, ScalingParams(2.0, 100.0, 2.0)), 0.25);
  EXPECT_DOUBLE_EQ(rate_md1(4.0, kP21), 0.5);
  EXPECT_DOUBLE_EQ(rate_md1(-2.0, kP21), 0.125);
  // local quadratic approximation of H_A near the mean speed
  const double z = 1e-3;
  EXPECT_NEAR(h_a(3.0 + z, kP21).value() / rate_md1(z, kP21), 1.0, 1e-2);
}

TEST(Means, ClosedForms) {
  EXPECT_DOUBLE_EQ(mean_c0(kP21), 2.0);
  EXPECT_DOUBLE_EQ(mean_ax(kP21, MDistribution::shifted_poisson(3.0)), 11.0);
  EXPECT_DOUBLE_EQ(mean_ax(kP21.with_x(2.0), MDistribution::geometric(1.0)), 8.0);
  // E[A_x] is the log-derivative of G_{A_x} at zero
  const auto m = MDistribution::shifted_pig(1.0, 2.0);
  const double h = 1e-6;
  const double fd = (log_g_ax(h, kP41, m) - log_g_ax(-h, kP41, m)) / (2 * h);
  EXPECT_NEAR(mean_ax(kP41, m), fd, 1e-6);
}
