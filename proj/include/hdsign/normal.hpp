#pragma once

namespace hdsign {

/// Standard normal CDF.
double normal_cdf(double z);

/// 1 - normal_cdf(z) without cancellation in the upper tail.
double normal_sf(double z);

/// z_alpha with P(Z > z_alpha) = alpha.
double normal_upper_quantile(double alpha);

}  // namespace hdsign
