#pragma once

#include <limits>
#include <optional>

#include "telegraph/extended_real.hpp"
#include "telegraph/m_distribution.hpp"
#include "telegraph/params.hpp"

namespace telegraph {

/// (sqrt(lambda) - sqrt(mu))^2 / 2: the right end of the domain of Lambda and G_{C_0}.
double cgf_boundary(const RateParams& p);

/// Lambda(s; lambda, mu) = (lambda - mu - sqrt((lambda+mu-2s)^2 - 4 lambda mu)) / 2,
/// the growth rate of log G_{C_x}(s) in x. +inf beyond cgf_boundary().
ExtendedReal lambda_fn(double s, const RateParams& p);

/// Lambda'(s) = (lambda+mu-2s)/D. Requires s < cgf_boundary(p).
double lambda_deriv1(double s, const RateParams& p);
/// Lambda''(s) = 8 lambda mu / D^3. Requires s < cgf_boundary(p).
double lambda_deriv2(double s, const RateParams& p);

/// MGF of one excursion C_0 away from the origin.
ExtendedReal g_c0(double s, const RateParams& p);
/// MGF of the first-passage time C_x = G_{C_0}(s) exp(x Lambda(s)).
ExtendedReal g_cx(double s, const RateParams& p);
/// MGF of the absorption time A_x = G_M(log G_{C_0}(s)) exp(x Lambda(s)).
ExtendedReal g_ax(double s, const RateParams& p, const MDistribution& m);
/// log G_{A_x}(s), +inf outside the domain. Safe where G_{A_x} itself overflows.
double log_g_ax(double s, const RateParams& p, const MDistribution& m);

enum class DomainCase { A, B };

inline const char* to_string(DomainCase c) { return c == DomainCase::A ? "A" : "B"; }

/// Which of the two domain regimes of G_{A_x} applies.
///
/// Case A: s_M >= log sqrt(lambda/mu) and the domain ends at cgf_boundary();
/// Case B: the domain is truncated at s_hat < cgf_boundary().
struct CaseLabel {
  DomainCase domain_case;
  std::optional<double> s_hat;  ///< set in Case B only
  DomainSpec domain;            ///< domain of G_{A_x}
};

CaseLabel classify_domain(const RateParams& p, const MDistribution& m);

/// Inverse of log G_{C_0} at s_M: (lambda + mu - mu e^{s_M} - lambda e^{-s_M}) / 2.
/// Throws DomainError unless s_M < log sqrt(lambda/mu).
double s_hat(const RateParams& p, double s_m);

/// Lambda'(s_hat): where the Case-B rate function turns linear.
double z_tilde(const RateParams& p, double s_m);

/// Legendre transform of Lambda over s <= cgf_boundary():
/// (sqrt((z-1) lambda) - sqrt((z+1) mu))^2 / 2 for z >= 1, +inf otherwise.
ExtendedReal h_a(double z, const RateParams& p);

/// Legendre transform of Lambda restricted to s <= s_hat (Case B).
ExtendedReal h_b(double z, const RateParams& p, double s_m);

/// Large deviation rate of A_x/x as x -> inf (Case A).
ExtendedReal rate_i1(double z, const RateParams& p);
/// Large deviation rate of A_x(beta mu, mu) as mu -> inf: x H_A(z/x; beta, 1) (Case A).
ExtendedReal rate_i2(double z, const ScalingParams& sp);

/// Rate function together with the lower end of its exposed-point region.
struct RateFunctionResult {
  ExtendedReal value;
  double exposed_from = -std::numeric_limits<double>::infinity();
  DomainCase domain_case = DomainCase::A;
};

/// Scaling-1 rate for a given M law: H_A in Case A, H_B (with z_tilde) in Case B.
RateFunctionResult ld_rate_scaling1(double z, const RateParams& p, const MDistribution& m);
/// Scaling-2 rate for a given M law: x H(z/x; beta, 1[, s_M]).
RateFunctionResult ld_rate_scaling2(double z, const ScalingParams& sp, const MDistribution& m);

/// Moderate deviation rate z^2 / (2 Lambda''(0; lambda, mu)).
double rate_md1(double z, const RateParams& p);
/// Moderate deviation rate z^2 / (2 x Lambda''(0; beta, 1)).
double rate_md2(double z, const ScalingParams& sp);

/// E[C_0] = 2/(lambda - mu).
double mean_c0(const RateParams& p);
/// E[A_x] = E[M] E[C_0] + x Lambda'(0).
double mean_ax(const RateParams& p, const MDistribution& m);

}  // namespace telegraph
