#pragma once

namespace telegraph {

/// Standard normal CDF.
double normal_cdf(double z);

/// Inverse standard normal CDF. Acklam's rational approximation followed by
/// one Halley step, absolute error well below 1e-8 on (0, 1).
/// Throws DomainError outside (0, 1).
double normal_quantile(double prob);

}  // namespace telegraph
