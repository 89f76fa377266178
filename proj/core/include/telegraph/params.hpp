#pragma once

namespace telegraph {

/// Switching rates and start position of the telegraph particle.
///
/// The particle moves at unit speed; it leaves the +1 velocity state at rate
/// lambda and the -1 state at rate mu. lambda > mu gives a drift towards the
/// origin, so every first-passage time is almost surely finite.
class RateParams {
 public:
  RateParams(double lambda, double mu, double x = 1.0);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double x() const { return x_; }

  RateParams with_x(double x) const { return RateParams(lambda_, mu_, x); }

  friend bool operator==(const RateParams&, const RateParams&) = default;

 private:
  double lambda_;
  double mu_;
  double x_;
};

/// Parameters of the family A_x(beta*mu, mu) used for the mu -> infinity scaling.
class ScalingParams {
 public:
  ScalingParams(double beta, double mu, double x = 1.0);

  double beta() const { return beta_; }
  double mu() const { return mu_; }
  double x() const { return x_; }

  ScalingParams with_mu(double mu) const { return ScalingParams(beta_, mu, x_); }

  /// The rates (beta*mu, mu) at start position x.
  RateParams rates() const { return RateParams(beta_ * mu_, mu_, x_); }
  /// The unit-rate reference model (beta, 1) at start position x.
  RateParams unit_rates() const { return RateParams(beta_, 1.0, x_); }

  friend bool operator==(const ScalingParams&, const ScalingParams&) = default;

 private:
  double beta_;
  double mu_;
  double x_;
};

}  // namespace telegraph
