#pragma once

#include <string>
#include <vector>

#include "hdsign/distributions.hpp"
#include "hdsign/weight.hpp"

namespace hdsign {

/// Radial moments of the standardized variate v (identity scatter).
/// `sq` is E||eps||^2, taken as E||v||^2 under identity scatter.
struct RadialMoments {
  double inv2 = 0.0;  // E ||v||^-2
  double inv1 = 0.0;  // E ||v||^-1
  double sq = 0.0;    // E ||eps||^2
};

struct PowerInputs {
  Index n = 0;
  Index p = 0;
  double theta_norm2 = 0.0;  // theta'theta
  double tr_sigma2 = 0.0;    // tr(Sigma^2)
  RadialMoments moments;

  void validate() const;
};

/// Phi(-z_alpha + moment_ratio * p n theta'theta / sqrt(2 tr(Sigma^2))), where
/// moment_ratio = [E{K(r)/r}]^2 / E{K^2(r)}.
double power_ws(const PowerInputs& in, double alpha, double moment_ratio);
double power_os(const PowerInputs& in, double alpha);
double power_ss(const PowerInputs& in, double alpha);
double power_cq(const PowerInputs& in, double alpha);

struct AREReport {
  double os_cq = 0.0;
  double os_ss = 0.0;
  double ss_cq = 0.0;
};

/// Closed-form AREs for Normal, StudentT (df > 2) and MixtureNormal.
/// Throws UnsupportedFamily for the independent-component families.
AREReport are_closed_form(const DistributionSpec& family);

struct MomentOracle {
  RadialMoments mean;
  RadialMoments standard_error;
  AREReport are;             // derived from `mean`
  AREReport are_standard_error;  // delta method
  Index samples = 0;
};

/// Monte Carlo radial moments of the family's standardized variate in
/// dimension family.p(). Requires n_mc >= 10^4.
MomentOracle moment_oracle(const DistributionSpec& family, Index n_mc, RngStream& rng);

/// Efficiency factor [E{K(r)/r}]^2 / E{K^2(r)} of a weight against its
/// Cauchy-Schwarz bound E(r^-2), both estimated on the same draws of
/// r = ||v||. `gap` = bound - ratio is nonnegative on any sample and is zero
/// exactly when K is proportional to 1/r on the sample.
struct WeightEfficiency {
  double ratio = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  double gap_standard_error = 0.0;  // delta method
  double bound_standard_error = 0.0;
};

WeightEfficiency weight_efficiency(const std::vector<double>& radii, const WeightFunction& k);
std::vector<double> draw_radii(const DistributionSpec& family, Index n_mc, RngStream& rng);

/// One column of the ARE table: a family label and its closed-form AREs.
struct AREColumn {
  std::string label;
  DistributionSpec family;
  AREReport are;
};

/// The eight reference families (t with 3..6 df, Normal, three mixtures).
std::vector<AREColumn> are_table(Index p = 400);

}  // namespace hdsign
