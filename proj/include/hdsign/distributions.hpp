#pragma once

#include <string>

#include "hdsign/rng.hpp"
#include "hdsign/sample_matrix.hpp"

namespace hdsign {

enum class ScatterKind { Identity, AR1, CustomDense };

struct ScatterSpec {
  ScatterKind kind = ScatterKind::Identity;
  Index p = 0;
  double rho = 0.0;  // AR1 only
  Matrix dense;      // CustomDense only

  static ScatterSpec identity(Index p);
  static ScatterSpec ar1(Index p, double rho);
  static ScatterSpec custom(Matrix sigma);

  Matrix matrix() const;
  double trace() const;
  double trace_squared() const;  // tr(Sigma^2)
};

enum class Family { Normal, StudentT, MixtureNormal, IcStudentT, IcNormalMix };

/// One of the five elliptical / independent-component families with its
/// scatter and location.
///
/// StudentT and IcStudentT use `df`; MixtureNormal and IcNormalMix use
/// `kappa` (contamination weight) and `sigma` (scale of the contaminating
/// component).
struct DistributionSpec {
  Family family = Family::Normal;
  double df = 0.0;
  double kappa = 0.0;
  double sigma = 1.0;
  ScatterSpec scatter;
  Vector theta;  // empty means zero

  static DistributionSpec normal(ScatterSpec s);
  static DistributionSpec student_t(double df, ScatterSpec s);
  static DistributionSpec mixture_normal(double kappa, double sigma, ScatterSpec s);
  static DistributionSpec ic_student_t(double df, ScatterSpec s);
  static DistributionSpec ic_normal_mix(double kappa, double sigma, ScatterSpec s);

  DistributionSpec with_theta(Vector t) const;

  bool elliptical() const noexcept;
  Index p() const noexcept { return scatter.p; }
  std::string label() const;
  void validate() const;
};

/// Lower Cholesky factor L with L L' = Sigma. Throws NotPositiveDefinite.
Matrix scatter_sqrt(const ScatterSpec& s);

/// Draws samples from a fixed DistributionSpec; the Cholesky factor is
/// computed once at construction.
class Sampler {
 public:
  explicit Sampler(DistributionSpec spec);

  SampleMatrix draw(Index n, RngStream& rng) const;

  /// Standardized draws v (identity scatter, zero location): n x p.
  Matrix draw_standardized(Index n, RngStream& rng) const;

  const DistributionSpec& spec() const noexcept { return spec_; }
  const Matrix& factor() const noexcept { return factor_; }

 private:
  DistributionSpec spec_;
  Matrix factor_;
};

SampleMatrix sample(const DistributionSpec& spec, Index n, RngStream& rng);

struct MomentCheck {
  double sample_mean = 0.0;
  double expected = 0.0;
  double standard_error = 0.0;

  /// |sample_mean - expected| / standard_error (0 when both differences vanish).
  double deviation_in_se() const;
  bool within(double n_se) const { return deviation_in_se() <= n_se; }
};

/// Monte Carlo check of the sphere moment identities for u uniform on the
/// unit sphere:
///   E(u'Mu)^2 = {tr^2(M) + 2 tr(M^2)} / (p^2 + 2p)
///   E(u'Mu)^4 = {3 tr^2(M^2) + 6 tr(M^4)} / {p(p+2)(p+4)(p+6)}
/// `fourth_exact` is the Gaussian-cumulant value of E(u'Mu)^4, reported next
/// to the trace-formula value for comparison.
struct SphereMomentReport {
  Index p = 0;
  Index samples = 0;
  MomentCheck second;
  MomentCheck fourth;
  MomentCheck fourth_exact;
};

SphereMomentReport sphere_moment_check(const Matrix& m, Index n, RngStream& rng);

/// sphere_moment_check applied to U(L^{-1}(X_i - theta)) for draws X_i of an
/// elliptical family; those signs are uniform on the sphere.
SphereMomentReport ellipticity_check(const DistributionSpec& spec, const Matrix& m, Index n,
                                     RngStream& rng);

/// E(u'Mu)^4 from the cumulants of z'Mz with z ~ N(0, I), divided by E||z||^8.
double sphere_fourth_moment_exact(const Matrix& m);

enum class ThetaPattern { Dense, Sparse };

/// Location shift with the leading 50% (Dense) or 95% (Sparse) entries zero
/// and the rest equal and positive, scaled so theta'theta / sqrt(trace_sigma)
/// equals target.
Vector build_theta(Index p, ThetaPattern pattern, double target, double trace_sigma);
inline Vector build_theta(Index p, ThetaPattern pattern, double target) {
  return build_theta(p, pattern, target, static_cast<double>(p));
}

}  // namespace hdsign
