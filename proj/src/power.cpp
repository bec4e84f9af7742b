#include "hdsign/power.hpp"

#include <cmath>

#include "hdsign/errors.hpp"
#include "hdsign/normal.hpp"
#include "hdsign/signcore.hpp"

namespace hdsign {

void PowerInputs::validate() const {
  if (n < 1 || p < 1) throw InvalidInput("power inputs need n >= 1 and p >= 1");
  if (!(theta_norm2 >= 0.0) || !std::isfinite(theta_norm2)) {
    throw InvalidInput("theta'theta must be finite and nonnegative");
  }
  if (!(tr_sigma2 > 0.0) || !std::isfinite(tr_sigma2)) throw InvalidInput("tr(Sigma^2) must be positive");
  const RadialMoments& m = moments;
  for (double v : {m.inv2, m.inv1, m.sq}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("radial moments must be finite and positive");
  }
  if (m.inv2 < m.inv1 * m.inv1 * (1.0 - 1e-12)) {
    throw InvalidInput("radial moments violate E||v||^-2 >= (E||v||^-1)^2");
  }
}

namespace {

double signal(const PowerInputs& in) {
  return static_cast<double>(in.p) * static_cast<double>(in.n) * in.theta_norm2 /
         std::sqrt(2.0 * in.tr_sigma2);
}

}  // namespace

double power_ws(const PowerInputs& in, double alpha, double moment_ratio) {
  require_alpha(alpha);
  in.validate();
  if (!(moment_ratio >= 0.0) || !std::isfinite(moment_ratio)) {
    throw InvalidInput("moment ratio must be finite and nonnegative");
  }
  return normal_cdf(-normal_upper_quantile(alpha) + moment_ratio * signal(in));
}

double power_os(const PowerInputs& in, double alpha) { return power_ws(in, alpha, in.moments.inv2); }

double power_ss(const PowerInputs& in, double alpha) {
  return power_ws(in, alpha, in.moments.inv1 * in.moments.inv1);
}

double power_cq(const PowerInputs& in, double alpha) {
  in.validate();
  return power_ws(in, alpha, 1.0 / in.moments.sq);
}

AREReport are_closed_form(const DistributionSpec& family) {
  AREReport r;
  switch (family.family) {
    case Family::Normal:
      r.os_cq = r.os_ss = 1.0;
      break;
    case Family::StudentT: {
      const double v = family.df;
      if (!(v > 2.0)) throw UnsupportedFamily("ARE for t needs more than 2 degrees of freedom");
      r.os_cq = v / (v - 2.0);
      r.os_ss = 0.5 * v * std::exp(2.0 * (std::lgamma(0.5 * v) - std::lgamma(0.5 * (v + 1.0))));
      break;
    }
    case Family::MixtureNormal: {
      const double k = family.kappa;
      const double s = family.sigma;
      const double inv2 = 1.0 - k + k / (s * s);
      const double inv1 = 1.0 - k + k / s;
      const double sq = 1.0 - k + k * s * s;
      r.os_cq = inv2 * sq;
      r.os_ss = inv2 / (inv1 * inv1);
      break;
    }
    case Family::IcStudentT:
    case Family::IcNormalMix:
      throw UnsupportedFamily("no closed-form ARE for independent-component models; use moment_oracle");
  }
  r.ss_cq = r.os_cq / r.os_ss;
  return r;
}

std::vector<double> draw_radii(const DistributionSpec& family, Index n_mc, RngStream& rng) {
  if (n_mc < 1) throw InvalidInput("need at least one Monte Carlo draw");
  DistributionSpec standardized = family;
  standardized.scatter = ScatterSpec::identity(family.p());
  standardized.theta.resize(0);
  const Sampler sampler(standardized);
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(n_mc));
  const Index block = 1024;
  for (Index start = 0; start < n_mc; start += block) {
    const Index b = std::min(block, n_mc - start);
    const Matrix v = sampler.draw_standardized(b, rng);
    for (Index i = 0; i < b; ++i) radii.push_back(v.row(i).norm());
  }
  return radii;
}

namespace {

double mean_of(const std::vector<double>& x) {
  long double s = 0;
  for (double v : x) s += v;
  return static_cast<double>(s / static_cast<long double>(x.size()));
}

// standard error of a mean whose per-draw influence values are `psi`
double se_of(const std::vector<double>& psi) {
  const double m = mean_of(psi);
  long double ss = 0;
  for (double v : psi) ss += (v - m) * static_cast<long double>(v - m);
  const long double n = static_cast<long double>(psi.size());
  return static_cast<double>(std::sqrt(ss / (n - 1) / n));
}

}  // namespace

MomentOracle moment_oracle(const DistributionSpec& family, Index n_mc, RngStream& rng) {
  if (n_mc < 10000) throw InvalidInput("moment oracle needs n_mc >= 10^4");
  const std::vector<double> r = draw_radii(family, n_mc, rng);
  const std::size_t n = r.size();
  std::vector<double> inv2(n), inv1(n), sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv1[i] = 1.0 / r[i];
    inv2[i] = inv1[i] * inv1[i];
    sq[i] = r[i] * r[i];
  }
  MomentOracle out;
  out.samples = n_mc;
  out.mean = {mean_of(inv2), mean_of(inv1), mean_of(sq)};
  out.standard_error = {se_of(inv2), se_of(inv1), se_of(sq)};

  const double a = out.mean.inv2, b = out.mean.inv1, c = out.mean.sq;
  out.are.os_cq = a * c;
  out.are.os_ss = a / (b * b);
  out.are.ss_cq = b * b * c;

  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = c * (inv2[i] - a) + a * (sq[i] - c);
  out.are_standard_error.os_cq = se_of(psi);
  for (std::size_t i = 0; i < n; ++i) psi[i] = (inv2[i] - a) / (b * b) - 2.0 * a / (b * b * b) * (inv1[i] - b);
  out.are_standard_error.os_ss = se_of(psi);
  for (std::size_t i = 0; i < n; ++i) psi[i] = 2.0 * b * c * (inv1[i] - b) + b * b * (sq[i] - c);
  out.are_standard_error.ss_cq = se_of(psi);
  return out;
}

WeightEfficiency weight_efficiency(const std::vector<double>& radii, const WeightFunction& k) {
  if (radii.size() < 2) throw InvalidInput("need at least two radii");
  const std::size_t n = radii.size();
  std::vector<double> kr(n), k2(n), inv2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = radii[i];
    const double w = k(r);
    if (!std::isfinite(w)) throw NonFiniteWeight("weight is not finite at a sampled radius");
    kr[i] = w / r;
    k2[i] = w * w;
    inv2[i] = 1.0 / (r * r);
  }
  const double m = mean_of(kr), q = mean_of(k2), a = mean_of(inv2);
  WeightEfficiency e;
  e.ratio = m * m / q;
  e.bound = a;
  e.gap = a - e.ratio;
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    psi[i] = (inv2[i] - a) - (2.0 * m / q * (kr[i] - m) - m * m / (q * q) * (k2[i] - q));
  }
  e.gap_standard_error = se_of(psi);
  e.bound_standard_error = se_of(inv2);
  return e;
}

std::vector<AREColumn> are_table(Index p) {
  const ScatterSpec id = ScatterSpec::identity(p);
  std::vector<AREColumn> cols;
  auto add = [&](std::string label, DistributionSpec d) {
    AREReport r = are_closed_form(d);
    cols.push_back({std::move(label), std::move(d), r});
  };
  for (int v : {3, 4, 5, 6}) {
    add("t(" + std::to_string(v) + ")", DistributionSpec::student_t(v, id));
  }
  add("N", DistributionSpec::normal(id));
  add("MN(0.2,3)", DistributionSpec::mixture_normal(0.2, 3.0, id));
  add("MN(0.2,10)", DistributionSpec::mixture_normal(0.2, 10.0, id));
  add("MN(0.8,10)", DistributionSpec::mixture_normal(0.8, 10.0, id));
  return cols;
}

}  // namespace hdsign
