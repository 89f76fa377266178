#include "telegraph/experiments.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "telegraph/analytics.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/normal.hpp"
#include "telegraph/random.hpp"
#include "telegraph/sample_io.hpp"
#include "telegraph/simulation.hpp"

namespace telegraph {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void finish_table(CgfLimitTable& t) {
  double prev = kInf;
  std::vector<double> lx;
  std::vector<double> ly;
  for (auto& r : t.rows) {
    if (std::isinf(r.limit)) {
      t.infinite_branch = true;
      r.gap = kNaN;
      continue;
    }
    r.gap = std::abs(r.scaled_log_mgf - r.limit);
    if (r.gap > prev) t.gaps_monotone = false;
    prev = r.gap;
    if (r.gap > 0.0) {
      lx.push_back(std::log(r.scale));
      ly.push_back(std::log(r.gap));
    }
  }
  if (lx.size() < 2) {
    t.loglog_slope = kNaN;
    return;
  }
  const auto n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  t.loglog_slope = sxy / sxx;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : "censored"; }

std::string fmt_ext(double v) { return std::isinf(v) ? "inf" : (std::isnan(v) ? "nan" : format_double(v)); }

}  // namespace

const char* to_string(ScalingMode m) { return m == ScalingMode::scaling1 ? "scaling1" : "scaling2"; }

CgfLimitTable scaled_cgf_limit_check(double s, const MDistribution& m, const RateParams& p,
                                     const std::vector<double>& scales) {
  CgfLimitTable t;
  t.mode = ScalingMode::scaling1;
  t.s = s;
  const CaseLabel label = classify_domain(p, m);
  const double limit = label.domain.contains(s) ? lambda_fn(s, p).to_double() : kInf;
  for (double x : scales) {
    const RateParams px = p.with_x(x);
    t.rows.push_back({x, log_g_ax(s, px, m) / x, limit, 0.0});
  }
  finish_table(t);
  return t;
}

CgfLimitTable scaled_cgf_limit_check(double s, const MDistribution& m, const ScalingParams& sp,
                                     const std::vector<double>& scales) {
  CgfLimitTable t;
  t.mode = ScalingMode::scaling2;
  t.s = s;
  const RateParams unit = sp.unit_rates();
  const CaseLabel label = classify_domain(unit, m);
  const double limit = label.domain.contains(s) ? sp.x() * lambda_fn(s, unit).to_double() : kInf;
  for (double mu : scales) {
    const RateParams rates = sp.with_mu(mu).rates();
    t.rows.push_back({mu, log_g_ax(mu * s, rates, m) / mu, limit, 0.0});
  }
  finish_table(t);
  return t;
}

void write_cgf_limit_csv(std::ostream& os, const CgfLimitTable& table) {
  os << "mode,s,scale,scaled_log_mgf,limit,gap\n";
  for (const auto& r : table.rows) {
    os << to_string(table.mode) << ',' << format_double(table.s) << ',' << format_double(r.scale)
       << ',' << fmt_ext(r.scaled_log_mgf) << ',' << fmt_ext(r.limit) << ',' << fmt_ext(r.gap)
       << '\n';
  }
}

KsReport equal_distribution_check(double beta, double x, double mu1, double mu2, std::size_t n,
                                  std::uint64_t seed1, std::uint64_t seed2, const MDistribution& m,
                                  unsigned workers) {
  auto scaled_batch = [&](double mu, std::uint64_t seed) {
    const RateParams rates = ScalingParams(beta, mu, x / mu).rates();
    return generate_batch(
               n, seed, [&](Stream& rng) { return mu * sample_ax(rng, rates, m); }, workers)
        .samples;
  };
  return ks_two_sample(scaled_batch(mu1, seed1), scaled_batch(mu2, seed2));
}

double normality_variance(const ScalingParams& sp) {
  return sp.x() * lambda_deriv2(0.0, sp.unit_rates());
}

KsReport normality_check(const ScalingParams& sp, const MDistribution& m, std::size_t n,
                         std::uint64_t seed, unsigned workers) {
  if (n < 2) throw ParameterError("normality_check needs at least 2 samples");
  const RateParams rates = sp.rates();
  SampleBatch batch =
      generate_batch(n, seed, [&](Stream& rng) { return sample_ax(rng, rates, m); }, workers);
  const double centre = batch.summary.mean;
  const double scale = std::sqrt(sp.mu()) / std::sqrt(normality_variance(sp));
  for (double& v : batch.samples) v = (v - centre) * scale;
  return ks_one_sample(std::move(batch.samples), normal_cdf);
}

const char* to_string(MdMode m) {
  switch (m) {
    case MdMode::scaling1:
      return "scaling1";
    case MdMode::scaling2:
      return "scaling2";
    case MdMode::noncentral:
      return "noncentral";
  }
  return "?";
}

MdMode parse_md_mode(const std::string& name) {
  if (name == "scaling1") return MdMode::scaling1;
  if (name == "scaling2") return MdMode::scaling2;
  if (name == "noncentral") return MdMode::noncentral;
  throw ParameterError("unknown moderate deviation mode '" + name + "'");
}

std::vector<double> md_statistic_samples(const MdDecayConfig& cfg, double scale, std::uint64_t seed) {
  const double eps = std::pow(scale, -cfg.gamma);
  const MDistribution& m = cfg.m;
  Sampler draw;
  switch (cfg.mode) {
    case MdMode::scaling1: {
      const RateParams p(cfg.lambda, cfg.mu, scale);
      const double centre = mean_ax(p, m);
      const double norm = std::sqrt(scale / eps);
      draw = [p, centre, norm, &m](Stream& rng) { return (sample_ax(rng, p, m) - centre) / norm; };
      break;
    }
    case MdMode::scaling2: {
      const RateParams p = ScalingParams(cfg.beta, scale, cfg.x).rates();
      const double centre = mean_ax(p, m);
      const double mult = std::sqrt(scale * eps);
      draw = [p, centre, mult, &m](Stream& rng) { return mult * (sample_ax(rng, p, m) - centre); };
      break;
    }
    case MdMode::noncentral: {
      const double me = scale * eps;
      const RateParams p = ScalingParams(cfg.beta, scale, cfg.x / me).rates();
      draw = [p, me, &m](Stream& rng) { return me * sample_ax(rng, p, m); };
      break;
    }
  }
  return generate_batch(cfg.n, seed, draw, cfg.workers).samples;
}

DecayReport md_decay_experiment(const MdDecayConfig& cfg) {
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) throw ParameterError("gamma must lie in (0, 1)");
  if (cfg.n == 0) throw ParameterError("n must be at least 1");

  DecayReport report;
  report.mode = cfg.mode;
  report.gamma = cfg.gamma;

  const double centre =
      cfg.mode == MdMode::noncentral ? cfg.x * (cfg.beta + 1.0) / (cfg.beta - 1.0) : 0.0;

  auto predicted = [&](double z) {
    switch (cfg.mode) {
      case MdMode::scaling1:
        return -rate_md1(z, RateParams(cfg.lambda, cfg.mu));
      case MdMode::scaling2:
        return -rate_md2(z, ScalingParams(cfg.beta, 1.0, cfg.x));
      case MdMode::noncentral:
        return -ld_rate_scaling2(z, ScalingParams(cfg.beta, 1.0, cfg.x), cfg.m).value.to_double();
    }
    return kNaN;
  };

  for (std::size_t j = 0; j < cfg.scales.size(); ++j) {
    const double scale = cfg.scales[j];
    const double eps = std::pow(scale, -cfg.gamma);
    const std::vector<double> stats = md_statistic_samples(cfg, scale, derive_key(cfg.seed, j));
    for (double z : cfg.thresholds) {
      DecayCell cell;
      cell.scale = scale;
      cell.eps = eps;
      cell.threshold = z;
      cell.n = stats.size();
      for (double v : stats) {
        if (z >= centre ? v >= z : v <= z) ++cell.count;
      }
      cell.predicted = predicted(z);
      if (cell.count == 0) {
        cell.censored = true;
      } else {
        cell.log_p = std::log(static_cast<double>(cell.count) / static_cast<double>(cell.n));
        cell.eps_log_p = eps * *cell.log_p;
      }
      report.cells.push_back(cell);
    }
  }

  double num = 0.0;
  double den = 0.0;
  for (const auto& c : report.cells) {
    if (c.censored || !(c.predicted < 0.0) || std::isinf(c.predicted)) continue;
    num += *c.eps_log_p * c.predicted;
    den += c.predicted * c.predicted;
  }
  report.fitted_slope = den > 0.0 ? num / den : kNaN;
  return report;
}

void write_decay_csv(std::ostream& os, const DecayReport& report) {
  os << "mode,scale,eps,threshold,count,n,log_p,eps_log_p,predicted,censored\n";
  for (const auto& c : report.cells) {
    os << to_string(report.mode) << ',' << format_double(c.scale) << ',' << format_double(c.eps)
       << ',' << format_double(c.threshold) << ',' << c.count << ',' << c.n << ','
       << fmt_opt(c.log_p) << ',' << fmt_opt(c.eps_log_p) << ',' << fmt_ext(c.predicted) << ','
       << (c.censored ? "true" : "false") << '\n';
  }
}

}  // namespace telegraph
