#include "hdsign/distributions.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hdsign/errors.hpp"
#include "hdsign/signcore.hpp"

namespace hdsign {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream_id + 0x632BE59BD9B4E019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

// ---------------------------------------------------------------------------
// Scatter

ScatterSpec ScatterSpec::identity(Index p) {
  if (p < 1) throw InvalidInput("dimension must be positive");
  ScatterSpec s;
  s.kind = ScatterKind::Identity;
  s.p = p;
  return s;
}

ScatterSpec ScatterSpec::ar1(Index p, double rho) {
  if (p < 1) throw InvalidInput("dimension must be positive");
  if (!(std::abs(rho) < 1.0)) throw InvalidInput("AR(1) scatter needs |rho| < 1");
  ScatterSpec s;
  s.kind = ScatterKind::AR1;
  s.p = p;
  s.rho = rho;
  return s;
}

ScatterSpec ScatterSpec::custom(Matrix sigma) {
  if (sigma.rows() < 1 || sigma.rows() != sigma.cols()) {
    throw InvalidInput("custom scatter must be a non-empty square matrix");
  }
  if (!sigma.allFinite()) throw InvalidInput("custom scatter has non-finite entries");
  const double tol = 1e-12 * std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw InvalidInput("custom scatter must be symmetric");
  }
  ScatterSpec s;
  s.kind = ScatterKind::CustomDense;
  s.p = sigma.rows();
  s.dense = std::move(sigma);
  return s;
}

Matrix ScatterSpec::matrix() const {
  switch (kind) {
    case ScatterKind::Identity:
      return Matrix::Identity(p, p);
    case ScatterKind::AR1: {
      Matrix m(p, p);
      for (Index i = 0; i < p; ++i) {
        for (Index j = 0; j < p; ++j) m(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
      }
      return m;
    }
    case ScatterKind::CustomDense:
      return dense;
  }
  return {};
}

double ScatterSpec::trace() const {
  if (kind == ScatterKind::CustomDense) return dense.trace();
  return static_cast<double>(p);
}

double ScatterSpec::trace_squared() const {
  switch (kind) {
    case ScatterKind::Identity:
      return static_cast<double>(p);
    case ScatterKind::AR1: {
      // p + 2 sum_{k>=1} (p - k) rho^{2k}
      double sum = static_cast<double>(p);
      double pow2k = 1.0;
      for (Index k = 1; k < p; ++k) {
        pow2k *= rho * rho;
        sum += 2.0 * static_cast<double>(p - k) * pow2k;
      }
      return sum;
    }
    case ScatterKind::CustomDense:
      return dense.cwiseAbs2().sum();
  }
  return 0.0;
}

Matrix scatter_sqrt(const ScatterSpec& s) {
  if (s.kind == ScatterKind::Identity) return Matrix::Identity(s.p, s.p);
  Eigen::LLT<Matrix> llt(s.matrix());
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("scatter matrix is not positive definite");
  Matrix l = llt.matrixL();
  return l;
}

// ---------------------------------------------------------------------------
// Families

namespace {

DistributionSpec make(Family f, ScatterSpec s) {
  DistributionSpec d;
  d.family = f;
  d.scatter = std::move(s);
  return d;
}

}  // namespace

DistributionSpec DistributionSpec::normal(ScatterSpec s) { return make(Family::Normal, std::move(s)); }

DistributionSpec DistributionSpec::student_t(double df, ScatterSpec s) {
  DistributionSpec d = make(Family::StudentT, std::move(s));
  d.df = df;
  d.validate();
  return d;
}

DistributionSpec DistributionSpec::mixture_normal(double kappa, double sigma, ScatterSpec s) {
  DistributionSpec d = make(Family::MixtureNormal, std::move(s));
  d.kappa = kappa;
  d.sigma = sigma;
  d.validate();
  return d;
}

DistributionSpec DistributionSpec::ic_student_t(double df, ScatterSpec s) {
  DistributionSpec d = make(Family::IcStudentT, std::move(s));
  d.df = df;
  d.validate();
  return d;
}

DistributionSpec DistributionSpec::ic_normal_mix(double kappa, double sigma, ScatterSpec s) {
  DistributionSpec d = make(Family::IcNormalMix, std::move(s));
  d.kappa = kappa;
  d.sigma = sigma;
  d.validate();
  return d;
}

DistributionSpec DistributionSpec::with_theta(Vector t) const {
  DistributionSpec d = *this;
  d.theta = std::move(t);
  d.validate();
  return d;
}

bool DistributionSpec::elliptical() const noexcept {
  return family == Family::Normal || family == Family::StudentT ||
         family == Family::MixtureNormal;
}

void DistributionSpec::validate() const {
  if (scatter.p < 1) throw InvalidInput("distribution dimension must be positive");
  if (theta.size() != 0 && theta.size() != scatter.p) {
    throw InvalidInput("theta length does not match the scatter dimension");
  }
  if (theta.size() != 0 && !theta.allFinite()) throw InvalidInput("theta must be finite");
  switch (family) {
    case Family::StudentT:
      if (!(df >= 3.0)) throw InvalidInput("multivariate t needs df >= 3");
      break;
    case Family::IcStudentT:
      if (!(df > 0.0)) throw InvalidInput("t component needs df > 0");
      break;
    case Family::MixtureNormal:
    case Family::IcNormalMix:
      if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidInput("mixture weight kappa must lie in (0, 1)");
      if (!(sigma > 0.0)) throw InvalidInput("mixture scale sigma must be positive");
      break;
    case Family::Normal:
      break;
  }
}

std::string DistributionSpec::label() const {
  std::ostringstream os;
  switch (family) {
    case Family::Normal:
      os << "N";
      break;
    case Family::StudentT:
      os << "t(" << df << ")";
      break;
    case Family::MixtureNormal:
      os << "MN(" << kappa << "," << sigma << ")";
      break;
    case Family::IcStudentT:
      os << "IC-t(" << df << ")";
      break;
    case Family::IcNormalMix:
      os << "IC-MN(" << kappa << "," << sigma << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Sampling

Sampler::Sampler(DistributionSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.scatter.kind != ScatterKind::Identity) factor_ = scatter_sqrt(spec_.scatter);
}

Matrix Sampler::draw_standardized(Index n, RngStream& rng) const {
  if (n < 1) throw InvalidInput("sample size must be at least 1");
  const Index p = spec_.p();
  Matrix z(n, p);
  const DistributionSpec& d = spec_;
  for (Index i = 0; i < n; ++i) {
    switch (d.family) {
      case Family::Normal:
        for (Index j = 0; j < p; ++j) z(i, j) = rng.normal();
        break;
      case Family::StudentT: {
        const double scale = std::sqrt(d.df / rng.chi_squared(d.df));
        for (Index j = 0; j < p; ++j) z(i, j) = scale * rng.normal();
        break;
      }
      case Family::MixtureNormal: {
        const double scale = rng.uniform() < d.kappa ? d.sigma : 1.0;
        for (Index j = 0; j < p; ++j) z(i, j) = scale * rng.normal();
        break;
      }
      case Family::IcStudentT:
        for (Index j = 0; j < p; ++j) {
          const double zz = rng.normal();
          z(i, j) = zz / std::sqrt(rng.chi_squared(d.df) / d.df);
        }
        break;
      case Family::IcNormalMix:
        for (Index j = 0; j < p; ++j) {
          const double scale = rng.uniform() < d.kappa ? d.sigma : 1.0;
          z(i, j) = scale * rng.normal();
        }
        break;
    }
  }
  return z;
}

SampleMatrix Sampler::draw(Index n, RngStream& rng) const {
  Matrix x = draw_standardized(n, rng);
  if (factor_.size() != 0) {
    // row i becomes L z_i
    x = x * factor_.triangularView<Eigen::Lower>().transpose();
  }
  if (spec_.theta.size() != 0) x.rowwise() += spec_.theta.transpose();
  return SampleMatrix(std::move(x));
}

SampleMatrix sample(const DistributionSpec& spec, Index n, RngStream& rng) {
  return Sampler(spec).draw(n, rng);
}

// ---------------------------------------------------------------------------
// Sphere moments

double MomentCheck::deviation_in_se() const {
  const double diff = std::abs(sample_mean - expected);
  if (diff <= 1e-12 * std::max(1.0, std::abs(expected))) return 0.0;
  if (!(standard_error > 0.0)) return std::numeric_limits<double>::infinity();
  return diff / standard_error;
}

double sphere_fourth_moment_exact(const Matrix& m) {
  const double p = static_cast<double>(m.rows());
  const Matrix m2 = m * m;
  const double t1 = m.trace();
  const double t2 = m2.trace();
  const double t3 = (m2 * m).trace();
  const double t4 = m2.cwiseProduct(m2.transpose()).sum();
  // cumulants of z'Mz for z ~ N(0, I): kappa_r = 2^{r-1} (r-1)! tr(M^r)
  const double k1 = t1, k2 = 2.0 * t2, k3 = 8.0 * t3, k4 = 48.0 * t4;
  const double raw4 = k4 + 4.0 * k3 * k1 + 3.0 * k2 * k2 + 6.0 * k2 * k1 * k1 + k1 * k1 * k1 * k1;
  return raw4 / (p * (p + 2.0) * (p + 4.0) * (p + 6.0));
}

namespace {

using DirectionSource = std::function<Matrix(Index)>;  // b unit rows

SphereMomentReport moment_report(const Matrix& m, Index n, const DirectionSource& draw) {
  if (m.rows() < 1 || m.rows() != m.cols()) throw InvalidInput("M must be a non-empty square matrix");
  const double tol = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol) throw InvalidInput("M must be symmetric");
  if (n < 2) throw InvalidInput("need at least 2 sphere samples");

  const Index p = m.rows();
  const double pd = static_cast<double>(p);
  const Matrix m2 = m * m;
  const double tr1 = m.trace();
  const double tr2 = m2.trace();
  const double tr4 = m2.cwiseProduct(m2.transpose()).sum();

  // sums of q^2, q^4, q^8 with q = u'Mu
  long double s2 = 0, s4 = 0, s8 = 0;
  const Index block = 4096;
  for (Index start = 0; start < n; start += block) {
    const Index b = std::min(block, n - start);
    const Matrix u = draw(b);
    if (u.rows() != b || u.cols() != p) throw InvalidInput("direction dimension does not match M");
    const Vector q = (u * m).cwiseProduct(u).rowwise().sum();
    for (Index i = 0; i < b; ++i) {
      const long double q2 = static_cast<long double>(q(i)) * q(i);
      s2 += q2;
      s4 += q2 * q2;
      s8 += q2 * q2 * q2 * q2;
    }
  }
  const long double nn = static_cast<long double>(n);
  auto check = [nn](long double sum, long double sum_sq, double expected) {
    MomentCheck c;
    const long double mean = sum / nn;
    const long double var = std::max<long double>(0, (sum_sq - nn * mean * mean) / (nn - 1));
    c.sample_mean = static_cast<double>(mean);
    c.standard_error = static_cast<double>(std::sqrt(var / nn));
    c.expected = expected;
    return c;
  };

  SphereMomentReport rep;
  rep.p = p;
  rep.samples = n;
  rep.second = check(s2, s4, (tr1 * tr1 + 2.0 * tr2) / (pd * pd + 2.0 * pd));
  rep.fourth = check(s4, s8,
                     (3.0 * tr2 * tr2 + 6.0 * tr4) / (pd * (pd + 2.0) * (pd + 4.0) * (pd + 6.0)));
  rep.fourth_exact = rep.fourth;
  rep.fourth_exact.expected = sphere_fourth_moment_exact(m);
  return rep;
}

}  // namespace

SphereMomentReport sphere_moment_check(const Matrix& m, Index n, RngStream& rng) {
  const Index p = m.rows();
  return moment_report(m, n, [&](Index b) {
    Matrix u(b, p);
    for (Index i = 0; i < b; ++i) {
      for (Index j = 0; j < p; ++j) u(i, j) = rng.normal();
    }
    return Matrix(u.rowwise().normalized());
  });
}

SphereMomentReport ellipticity_check(const DistributionSpec& spec, const Matrix& m, Index n,
                                     RngStream& rng) {
  if (!spec.elliptical()) throw UnsupportedFamily("ellipticity check needs an elliptical family");
  const Sampler sampler(spec);
  return moment_report(m, n, [&](Index b) {
    Matrix x = sampler.draw(b, rng).data();
    if (spec.theta.size() != 0) x.rowwise() -= spec.theta.transpose();
    if (sampler.factor().size() != 0) {
      // rows z_i = L^{-1} x_i, i.e. Z' = L^{-1} X'
      Matrix zt = sampler.factor().triangularView<Eigen::Lower>().solve(x.transpose());
      x = zt.transpose();
    }
    Matrix u(b, x.cols());
    for (Index i = 0; i < b; ++i) u.row(i) = spatial_sign(x.row(i).transpose()).transpose();
    return u;
  });
}

// ---------------------------------------------------------------------------

Vector build_theta(Index p, ThetaPattern pattern, double target, double trace_sigma) {
  if (p < 1) throw InvalidInput("dimension must be positive");
  if (!(target >= 0.0)) throw InvalidInput("signal target must be nonnegative");
  if (!(trace_sigma > 0.0)) throw InvalidInput("tr(Sigma) must be positive");
  Vector theta = Vector::Zero(p);
  if (target == 0.0) return theta;
  // ceil(p/2) and ceil(p/20) in integer arithmetic
  const Index m = pattern == ThetaPattern::Dense ? (p + 1) / 2 : (p + 19) / 20;
  const double value = std::sqrt(target * std::sqrt(trace_sigma) / static_cast<double>(m));
  theta.tail(m).setConstant(value);
  return theta;
}

}  // namespace hdsign
