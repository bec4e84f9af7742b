#include "hdsign/normal.hpp"

#include <cmath>

#include <boost/math/distributions/normal.hpp>

namespace hdsign {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_upper_quantile(double alpha) {
  const boost::math::normal_distribution<double> std_normal;
  return boost::math::quantile(boost::math::complement(std_normal, alpha));
}

}  // namespace hdsign
