#include "telegraph/params.hpp"

#include <cmath>
#include <sstream>

#include "telegraph/errors.hpp"

namespace telegraph {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be a positive finite number (got " << v << ")";
    throw ParameterError(os.str());
  }
}

}  // namespace

RateParams::RateParams(double lambda, double mu, double x) : lambda_(lambda), mu_(mu), x_(x) {
  require_positive(lambda, "lambda");
  require_positive(mu, "mu");
  require_positive(x, "x");
  if (!(lambda > mu)) {
    std::ostringstream os;
    os << "rates must satisfy lambda > mu (got lambda=" << lambda << ", mu=" << mu << ")";
    throw ParameterError(os.str());
  }
}

ScalingParams::ScalingParams(double beta, double mu, double x) : beta_(beta), mu_(mu), x_(x) {
  require_positive(mu, "mu");
  require_positive(x, "x");
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    std::ostringstream os;
    os << "beta must satisfy beta > 1 (got " << beta << ")";
    throw ParameterError(os.str());
  }
}

}  // namespace telegraph
