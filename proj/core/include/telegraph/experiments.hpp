#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "telegraph/ks.hpp"
#include "telegraph/m_distribution.hpp"
#include "telegraph/params.hpp"

namespace telegraph {

enum class ScalingMode { scaling1, scaling2 };

const char* to_string(ScalingMode m);

struct CgfLimitRow {
  double scale = 0.0;           ///< x (scaling 1) or mu (scaling 2)
  double scaled_log_mgf = 0.0;  ///< (1/scale) log E[exp(...)], may be +inf
  double limit = 0.0;           ///< limiting CGF value, may be +inf
  double gap = 0.0;             ///< |scaled - limit|; NaN on the infinite branch
};

/// Convergence of the scaled log-MGF of A_x to its limit, evaluated in closed
/// form for each scale.
struct CgfLimitTable {
  ScalingMode mode = ScalingMode::scaling1;
  double s = 0.0;
  std::vector<CgfLimitRow> rows;
  bool infinite_branch = false;  ///< s lies outside the limiting domain
  bool gaps_monotone = true;     ///< gaps non-increasing in scale
  double loglog_slope = 0.0;     ///< least squares slope of log gap vs log scale; NaN if undefined
};

inline const std::vector<double> kDefaultScales = {1e1, 1e2, 1e3, 1e4};

/// Scaling 1: (1/x) log G_{A_x}(s) against Lambda(s; lambda, mu) for x in `scales`.
CgfLimitTable scaled_cgf_limit_check(double s, const MDistribution& m, const RateParams& p,
                                     const std::vector<double>& scales = kDefaultScales);

/// Scaling 2: (1/mu) log G_{A_x(beta mu, mu)}(mu s) against x Lambda(s; beta, 1) for mu in `scales`.
CgfLimitTable scaled_cgf_limit_check(double s, const MDistribution& m, const ScalingParams& sp,
                                     const std::vector<double>& scales = kDefaultScales);

void write_cgf_limit_csv(std::ostream& os, const CgfLimitTable& table);

/// Two-sample KS between mu_i A_{x/mu_i}(beta mu_i, mu_i), i = 1, 2, each of size n.
KsReport equal_distribution_check(double beta, double x, double mu1, double mu2, std::size_t n,
                                  std::uint64_t seed1, std::uint64_t seed2, const MDistribution& m,
                                  unsigned workers = 1);

/// Variance x Lambda''(0; beta, 1) = 8 beta x / (beta-1)^3 of the normal limit of
/// sqrt(mu) (A_x(beta mu, mu) - E[A_x(beta mu, mu)]).
double normality_variance(const ScalingParams& sp);

/// One-sample KS of sqrt(mu) (A - mean(A)) / sqrt(normality_variance) against N(0, 1).
KsReport normality_check(const ScalingParams& sp, const MDistribution& m, std::size_t n,
                         std::uint64_t seed, unsigned workers = 1);

enum class MdMode { scaling1, scaling2, noncentral };

const char* to_string(MdMode m);
MdMode parse_md_mode(const std::string& name);

struct MdDecayConfig {
  MdMode mode = MdMode::scaling1;
  double lambda = 2.0;  ///< scaling 1 rates
  double mu = 1.0;
  double beta = 2.0;  ///< scaling 2 and non-central families
  double x = 1.0;
  MDistribution m = MDistribution::shifted_poisson(3.0);
  double gamma = 0.5;  ///< eps = scale^-gamma
  std::vector<double> thresholds;
  std::vector<double> scales;
  std::size_t n = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct DecayCell {
  double scale = 0.0;
  double eps = 0.0;
  double threshold = 0.0;
  std::size_t count = 0;  ///< samples in the tail beyond threshold
  std::size_t n = 0;
  std::optional<double> log_p;      ///< empty when censored
  std::optional<double> eps_log_p;  ///< empty when censored
  double predicted = 0.0;           ///< -rate(threshold)
  bool censored = false;
};

struct DecayReport {
  MdMode mode = MdMode::scaling1;
  double gamma = 0.5;
  std::vector<DecayCell> cells;
  double fitted_slope = 0.0;  ///< eps log P regressed on -rate through the origin; NaN if no usable cell
};

/// Empirical tail decay of the moderately rescaled statistic:
///  scaling1:   (A_x - E A_x) / sqrt(x / eps),           eps = x^-gamma,  rate z^2/(2 Lambda''(0))
///  scaling2:   sqrt(mu eps) (A_x - E A_x), rates (beta mu, mu), eps = mu^-gamma
///  noncentral: mu eps A_{x/(mu eps)}(beta mu, mu), rate x H(z/x; beta, 1)
/// Tails are upper tails for thresholds at or above the centre and lower tails below it.
DecayReport md_decay_experiment(const MdDecayConfig& cfg);

/// The statistic sampler used by md_decay_experiment, exposed for testing.
std::vector<double> md_statistic_samples(const MdDecayConfig& cfg, double scale, std::uint64_t seed);

void write_decay_csv(std::ostream& os, const DecayReport& report);

}  // namespace telegraph
