#include "telegraph/m_distribution.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "telegraph/errors.hpp"

namespace telegraph {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite (got " << v << ")";
    throw ParameterError(os.str());
  }
}

void validate(const MDistribution::Kind& kind) {
  std::visit(overloaded{
                 [](const Geometric& g) {
                   if (!(g.alpha > 0.0 && g.alpha <= 1.0)) {
                     std::ostringstream os;
                     os << "geometric alpha must lie in (0, 1] (got " << g.alpha << ")";
                     throw ParameterError(os.str());
                   }
                 },
                 [](const ShiftedPoisson& p) { check_positive(p.theta, "shifted_poisson theta"); },
                 [](const ShiftedPig& p) {
                   check_positive(p.theta, "shifted_pig theta");
                   check_positive(p.xi, "shifted_pig xi");
                 },
             },
             kind);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ExtendedReal geometric_mgf(double s, double alpha) {
  return MDistribution::geometric(alpha).mgf(s);
}

ExtendedReal shifted_poisson_mgf(double s, double theta) {
  return MDistribution::shifted_poisson(theta).mgf(s);
}

ExtendedReal shifted_pig_mgf(double s, double theta, double xi) {
  return MDistribution::shifted_pig(theta, xi).mgf(s);
}

MDistribution::MDistribution(Kind kind) : kind_(kind) { validate(kind_); }

DomainSpec MDistribution::domain() const {
  return std::visit(overloaded{
                        [](const Geometric& g) {
                          if (g.alpha == 1.0) return DomainSpec::whole_line();
                          return DomainSpec::up_to(-std::log1p(-g.alpha), Boundary::open);
                        },
                        [](const ShiftedPoisson&) { return DomainSpec::whole_line(); },
                        [](const ShiftedPig& p) {
                          return DomainSpec::up_to(std::log1p(p.xi * p.xi / (2.0 * p.theta)),
                                                   Boundary::closed);
                        },
                    },
                    kind_);
}

ExtendedReal MDistribution::mgf(double s) const {
  if (!domain().contains(s)) return ExtendedReal::infinity();
  return std::visit(
      overloaded{
          [s](const Geometric& g) -> ExtendedReal {
            // alpha e^s / (1 - (1-alpha) e^s), written with expm1 to keep the
            // denominator accurate close to the boundary.
            const double q = 1.0 - g.alpha;
            const double denom = -std::expm1(s + std::log(q));
            if (g.alpha == 1.0) return std::exp(s);
            if (!(denom > 0.0)) return ExtendedReal::infinity();
            return g.alpha * std::exp(s) / denom;
          },
          [s](const ShiftedPoisson& p) -> ExtendedReal {
            return std::exp(s + p.theta * std::expm1(s));
          },
          [s](const ShiftedPig& p) -> ExtendedReal {
            const double disc = std::max(0.0, p.xi * p.xi - 2.0 * p.theta * std::expm1(s));
            return std::exp(s + p.xi - std::sqrt(disc));
          },
      },
      kind_);
}

ExtendedReal MDistribution::pgf(double y) const {
  if (!(y > 0.0)) throw DomainError("pgf argument must be positive");
  return std::visit(
      overloaded{
          [y](const Geometric& g) -> ExtendedReal {
            const double denom = 1.0 - (1.0 - g.alpha) * y;
            if (!(denom > 0.0)) return ExtendedReal::infinity();
            return g.alpha * y / denom;
          },
          [y](const ShiftedPoisson& p) -> ExtendedReal {
            return y * std::exp(p.theta * (y - 1.0));
          },
          [y](const ShiftedPig& p) -> ExtendedReal {
            const double disc = p.xi * p.xi - 2.0 * p.theta * (y - 1.0);
            if (disc < 0.0) return ExtendedReal::infinity();
            return y * std::exp(p.xi - std::sqrt(disc));
          },
      },
      kind_);
}

double MDistribution::mean() const {
  return std::visit(overloaded{
                        [](const Geometric& g) { return 1.0 / g.alpha; },
                        [](const ShiftedPoisson& p) { return 1.0 + p.theta; },
                        [](const ShiftedPig& p) { return 1.0 + p.theta / p.xi; },
                    },
                    kind_);
}

double MDistribution::pmf(std::int64_t m) const {
  if (m < 1) return 0.0;
  const auto k = static_cast<double>(m - 1);
  return std::visit(
      overloaded{
          [k](const Geometric& g) {
            if (g.alpha == 1.0) return k == 0.0 ? 1.0 : 0.0;
            return g.alpha * std::exp(k * std::log1p(-g.alpha));
          },
          [k](const ShiftedPoisson& p) {
            return std::exp(k * std::log(p.theta) - p.theta - std::lgamma(k + 1.0));
          },
          [m](const ShiftedPig& p) {
            // p_{n+2} = [theta (n+1)(2n+1) p_{n+1} + theta^2 p_n] / (a (n+2)(n+1)),
            // a = xi^2 + 2 theta; follows from (a - 2 theta y) P'' = theta^2 P + theta P'.
            const double a = p.xi * p.xi + 2.0 * p.theta;
            const double ra = std::sqrt(a);
            double prev = std::exp(p.xi - ra);
            if (m == 1) return prev;
            double cur = p.theta * prev / ra;
            for (std::int64_t n = 0; n + 2 <= m - 1; ++n) {
              const auto nn = static_cast<double>(n);
              const double next =
                  (p.theta * (nn + 1.0) * (2.0 * nn + 1.0) * cur + p.theta * p.theta * prev) /
                  (a * (nn + 2.0) * (nn + 1.0));
              prev = cur;
              cur = next;
            }
            return cur;
          },
      },
      kind_);
}

double sample_inverse_gaussian(Stream& rng, double mean, double shape) {
  // Michael, Schucany & Haas transformation; the root is written in a
  // cancellation-free form.
  std::normal_distribution<double> normal;
  const double nu = normal(rng);
  const double y = nu * nu;
  const double m2y = mean * mean * y;
  const double root = std::sqrt(m2y * m2y + 4.0 * mean * mean * mean * shape * y);
  const double x = mean - 2.0 * mean * m2y / (m2y + root);
  if (rng.uniform() * (mean + x) <= mean) return x;
  return mean * mean / x;
}

std::int64_t MDistribution::sample(Stream& rng) const {
  return std::visit(
      overloaded{
          [&rng](const Geometric& g) -> std::int64_t {
            if (g.alpha == 1.0) return 1;
            // Inversion of P(M > m) = (1-alpha)^m.
            const double u = rng.uniform_pos();
            return 1 + static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-g.alpha)));
          },
          [&rng](const ShiftedPoisson& p) -> std::int64_t {
            std::poisson_distribution<std::int64_t> pois(p.theta);
            return 1 + pois(rng);
          },
          [&rng](const ShiftedPig& p) -> std::int64_t {
            const double w = sample_inverse_gaussian(rng, 1.0 / p.xi, 1.0);
            const double rate = p.theta * w;
            if (!(rate > 0.0)) return 1;
            std::poisson_distribution<std::int64_t> pois(rate);
            return 1 + pois(rng);
          },
      },
      kind_);
}

std::string MDistribution::kind_name() const {
  return std::visit(overloaded{
                        [](const Geometric&) { return std::string("geometric"); },
                        [](const ShiftedPoisson&) { return std::string("shifted_poisson"); },
                        [](const ShiftedPig&) { return std::string("shifted_pig"); },
                    },
                    kind_);
}

std::string MDistribution::params_string() const {
  return std::visit(overloaded{
                        [](const Geometric& g) { return "alpha=" + fmt(g.alpha); },
                        [](const ShiftedPoisson& p) { return "theta=" + fmt(p.theta); },
                        [](const ShiftedPig& p) {
                          return "theta=" + fmt(p.theta) + ",xi=" + fmt(p.xi);
                        },
                    },
                    kind_);
}

MDistribution parse_m_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ParameterError("M law must look like kind:key=value[,key=value] (got '" + spec + "')");
  }
  const std::string kind = spec.substr(0, colon);
  std::map<std::string, double> kv;
  std::stringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParameterError("bad M parameter '" + item + "' in '" + spec + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size()) {
      throw ParameterError("M parameter '" + key + "' is not a number: '" + val + "'");
    }
    if (!kv.emplace(key, v).second) throw ParameterError("duplicate M parameter '" + key + "'");
  }

  auto take = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParameterError("M law '" + spec + "' is missing '" + key + "'");
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&](MDistribution d) {
    if (!kv.empty()) {
      throw ParameterError("unknown M parameter '" + kv.begin()->first + "' for kind " + kind);
    }
    return d;
  };

  if (kind == "geometric") return finish(MDistribution::geometric(take("alpha")));
  if (kind == "shifted_poisson") return finish(MDistribution::shifted_poisson(take("theta")));
  if (kind == "shifted_pig") {
    const double theta = take("theta");
    const double xi = take("xi");
    return finish(MDistribution::shifted_pig(theta, xi));
  }
  throw ParameterError("unknown M kind '" + kind +
                       "' (expected geometric, shifted_poisson or shifted_pig)");
}

}  // namespace telegraph
