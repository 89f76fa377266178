#include "telegraph/estimation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "telegraph/errors.hpp"
#include "telegraph/normal.hpp"
#include "telegraph/params.hpp"
#include "telegraph/random.hpp"
#include "telegraph/simulation.hpp"

namespace telegraph {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::optional<double> point_estimate(double sample_mean, double x) {
  if (!(sample_mean > x)) return std::nullopt;
  return (sample_mean + x) / (sample_mean - x);
}

double ci_half_width(double x, double mu, double beta0, double level) {
  if (!(beta0 > 1.0)) throw ParameterError("beta0 must exceed 1");
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level must lie in (0, 1)");
  if (!(mu > 0.0)) throw ParameterError("mu must be positive");
  if (!(x > 0.0)) throw ParameterError("x must be positive");
  const double sd = std::sqrt(8.0 * beta0 * x / std::pow(beta0 - 1.0, 3));
  return sd * normal_quantile(0.5 * (1.0 + level)) / std::sqrt(mu);
}

std::optional<ConfidenceInterval> confidence_interval(double sample_mean, double x, double mu,
                                                      double beta0, double level) {
  const double d = ci_half_width(x, mu, beta0, level);
  if (!(x < sample_mean - d)) return std::nullopt;
  const double hi_mean = sample_mean + d;
  const double lo_mean = sample_mean - d;
  return ConfidenceInterval{(hi_mean + x) / (hi_mean - x), (lo_mean + x) / (lo_mean - x)};
}

EstimationReport run_estimation(const EstimationRequest& req) {
  if (req.n == 0) throw ParameterError("run_estimation: n must be at least 1");
  if (!(req.beta0 > 1.0)) throw ParameterError("beta0 must exceed 1");
  // The tables include beta* = beta0, so equality is accepted.
  if (!(req.beta_star >= req.beta0)) throw ParameterError("beta* must be at least beta0");

  const RateParams rates = ScalingParams(req.beta_star, req.mu, req.x).rates();
  const SampleBatch batch = simulate_batch(req.n, req.seed, rates, req.m, Target::ax, req.workers);

  EstimationReport r;
  r.m = req.m;
  r.mu = req.mu;
  r.beta_star = req.beta_star;
  r.x = req.x;
  r.beta0 = req.beta0;
  r.level = req.level;
  r.n = req.n;
  r.mean_theory = req.x * (req.beta_star + 1.0) / (req.beta_star - 1.0);
  r.sample_mean = batch.summary.mean;
  r.point = point_estimate(r.sample_mean, req.x);
  r.ci = confidence_interval(r.sample_mean, req.x, req.mu, req.beta0, req.level);
  r.applicable = r.ci.has_value();
  return r;
}

std::vector<EstimationRequest> table_requests(int which, std::uint64_t seed, unsigned workers) {
  std::vector<EstimationRequest> rows;
  auto add = [&](double theta, double mu, double beta_star) {
    EstimationRequest req;
    req.m = MDistribution::shifted_poisson(theta);
    req.mu = mu;
    req.beta_star = beta_star;
    req.x = 1.0;
    req.beta0 = 1.5;
    req.level = 0.95;
    req.n = 1000;
    req.seed = derive_key(seed, rows.size());
    req.workers = workers;
    rows.push_back(req);
  };
  switch (which) {
    case 1:
      for (double theta : {1.5, 3.0, 5.0, 10.0}) add(theta, 1000.0, 1.75);
      break;
    case 2:
      for (double mu : {1000.0, 5000.0, 10000.0, 50000.0}) add(3.0, mu, 2.0);
      break;
    case 3:
      for (double beta : {1.5, 2.0, 2.5, 3.0}) add(5.0, 1000.0, beta);
      break;
    default: {
      std::ostringstream os;
      os << "unknown table id " << which << " (expected 1, 2 or 3)";
      throw ParameterError(os.str());
    }
  }
  return rows;
}

std::vector<EstimationReport> reproduce_table(int which, std::uint64_t seed, unsigned workers) {
  std::vector<EstimationReport> out;
  for (const auto& req : table_requests(which, seed, workers)) out.push_back(run_estimation(req));
  return out;
}

void write_table_csv(std::ostream& os, const std::vector<EstimationReport>& rows) {
  os << "m_params,mu,beta_star,mean_theory,sample_mean,ci_lower,ci_upper,point_estimate,applicable\n";
  for (const auto& r : rows) {
    std::string params = r.m.params_string();
    if (params.find(',') != std::string::npos) params = '"' + params + '"';
    os << params << ',' << fixed6(r.mu) << ',' << fixed6(r.beta_star) << ','
       << fixed6(r.mean_theory) << ',' << fixed6(r.sample_mean) << ','
       << (r.ci ? fixed6(r.ci->lower) : "NA") << ',' << (r.ci ? fixed6(r.ci->upper) : "NA") << ','
       << (r.point ? fixed6(*r.point) : "NA") << ',' << (r.applicable ? "true" : "false") << '\n';
  }
}

}  // namespace telegraph
