#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "telegraph/extended_real.hpp"
#include "telegraph/random.hpp"

namespace telegraph {

/// P(M = m) = (1-alpha)^(m-1) alpha, m >= 1.
struct Geometric {
  double alpha;
};

/// M = 1 + Poisson(theta).
struct ShiftedPoisson {
  double theta;
};

/// M = 1 + N with N Poisson-inverse-Gaussian; E[y^N] = exp(xi - sqrt(xi^2 - 2 theta (y-1))).
struct ShiftedPig {
  double theta;
  double xi;
};

/// Law of the number M of visits to the origin before absorption.
///
/// Every supported law lives on {1, 2, ...} and has an MGF that is finite on
/// some s > 0, so s_M = sup D(G_M) > 0. Instances are immutable.
class MDistribution {
 public:
  using Kind = std::variant<Geometric, ShiftedPoisson, ShiftedPig>;

  explicit MDistribution(Kind kind);

  static MDistribution geometric(double alpha) { return MDistribution(Geometric{alpha}); }
  static MDistribution shifted_poisson(double theta) { return MDistribution(ShiftedPoisson{theta}); }
  static MDistribution shifted_pig(double theta, double xi) { return MDistribution(ShiftedPig{theta, xi}); }

  const Kind& kind() const { return kind_; }

  /// G_M(s) = E[exp(s M)].
  ExtendedReal mgf(double s) const;

  /// E[y^M] for y > 0, i.e. G_M(log y). Evaluated directly in y so that
  /// boundary tests such as (1-alpha) y < 1 are not perturbed by log/exp.
  ExtendedReal pgf(double y) const;

  DomainSpec domain() const;
  double mean() const;
  double pmf(std::int64_t m) const;
  std::int64_t sample(Stream& rng) const;

  /// "geometric", "shifted_poisson" or "shifted_pig".
  std::string kind_name() const;
  /// Comma-separated key=value list, e.g. "theta=1,xi=2".
  std::string params_string() const;
  /// kind:params, the form accepted by parse_m_spec().
  std::string spec_string() const { return kind_name() + ":" + params_string(); }

 private:
  Kind kind_;
};

/// Parses `kind:key=value[,key=value]`. Throws ParameterError on bad input.
MDistribution parse_m_spec(const std::string& spec);

ExtendedReal geometric_mgf(double s, double alpha);
ExtendedReal shifted_poisson_mgf(double s, double theta);
ExtendedReal shifted_pig_mgf(double s, double theta, double xi);

/// Inverse-Gaussian variate with the given mean and shape.
double sample_inverse_gaussian(Stream& rng, double mean, double shape);

inline std::int64_t sample_m(Stream& rng, const MDistribution& dist) { return dist.sample(rng); }

}  // namespace telegraph
