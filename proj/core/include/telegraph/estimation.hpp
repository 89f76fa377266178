#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "telegraph/m_distribution.hpp"

namespace telegraph {

struct ConfidenceInterval {
  double lower;
  double upper;
};

/// Point estimate (A + x) / (A - x) of beta from a sample mean A of
/// A_x(beta mu, mu). Empty when A <= x.
std::optional<double> point_estimate(double sample_mean, double x);

/// sqrt(8 beta0 x / (beta0 - 1)^3) * Phi^-1((1 + level)/2) / sqrt(mu).
double ci_half_width(double x, double mu, double beta0, double level);

/// Interval ((A + d + x)/(A + d - x), (A - d + x)/(A - d - x)) with
/// d = ci_half_width(). Empty unless x < A - d.
std::optional<ConfidenceInterval> confidence_interval(double sample_mean, double x, double mu,
                                                      double beta0, double level);

struct EstimationRequest {
  MDistribution m = MDistribution::shifted_poisson(3.0);
  double mu = 1000.0;
  double beta_star = 2.0;
  double x = 1.0;
  double beta0 = 1.5;
  double level = 0.95;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct EstimationReport {
  MDistribution m = MDistribution::shifted_poisson(3.0);
  double mu = 0.0;
  double beta_star = 0.0;
  double x = 0.0;
  double beta0 = 0.0;
  double level = 0.0;
  std::size_t n = 0;
  double mean_theory = 0.0;  ///< x (beta* + 1) / (beta* - 1)
  double sample_mean = 0.0;
  std::optional<ConfidenceInterval> ci;
  std::optional<double> point;
  bool applicable = false;  ///< the interval's validity condition x < A - d holds
};

/// Simulates n draws of A_x(beta* mu, mu) and applies both estimators.
EstimationReport run_estimation(const EstimationRequest& req);

/// The three fixed grids (x = 1, beta0 = 1.5, level = 0.95, n = 1000):
/// 1: theta in {1.5, 3, 5, 10}, mu = 1000, beta* = 1.75
/// 2: theta = 3, mu in {1e3, 5e3, 1e4, 5e4}, beta* = 2
/// 3: theta = 5, mu = 1000, beta* in {1.5, 2, 2.5, 3}
std::vector<EstimationRequest> table_requests(int which, std::uint64_t seed, unsigned workers = 1);

std::vector<EstimationReport> reproduce_table(int which, std::uint64_t seed, unsigned workers = 1);

/// `m_params,mu,beta_star,mean_theory,sample_mean,ci_lower,ci_upper,point_estimate,applicable`
void write_table_csv(std::ostream& os, const std::vector<EstimationReport>& rows);

}  // namespace telegraph
