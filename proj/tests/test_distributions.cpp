#include <doctest.h>

#include <cmath>

#include "hdsign/distributions.hpp"
#include "hdsign/errors.hpp"
#include "oracles.hpp"

using namespace hdsign;

TEST_CASE("scatter square roots") {
  CHECK((scatter_sqrt(ScatterSpec::identity(3)) - Matrix::Identity(3, 3)).norm() == 0.0);

  const Matrix l2 = scatter_sqrt(ScatterSpec::ar1(2, 0.5));
  CHECK(l2(0, 0) == doctest::Approx(1.0));
  CHECK(l2(0, 1) == 0.0);
  CHECK(l2(1, 0) == doctest::Approx(0.5));
  CHECK(l2(1, 1) == doctest::Approx(std::sqrt(0.75)));

  const ScatterSpec s = ScatterSpec::ar1(200, 0.5);
  const Matrix l = scatter_sqrt(s);
  const Matrix sigma = s.matrix();
  CHECK((l * l.transpose() - sigma).norm() / sigma.norm() < 1e-10);
  CHECK(l.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm() == 0.0);
}

TEST_CASE("non positive definite scatter is rejected") {
  Matrix m(2, 2);
  m << 1, 2, 2, 1;
  CHECK_THROWS_AS(scatter_sqrt(ScatterSpec::custom(m)), NotPositiveDefinite);
  Matrix asym(2, 2);
  asym << 1, 0.2, 0.1, 1;
  CHECK_THROWS_AS(ScatterSpec::custom(asym), InvalidInput);
  CHECK_THROWS_AS(ScatterSpec::ar1(3, 1.0), InvalidInput);
}

TEST_CASE("AR(1) traces") {
  for (Index p : {1, 2, 7, 50, 200}) {
    const ScatterSpec s = ScatterSpec::ar1(p, 0.5);
    CHECK(s.trace() == static_cast<double>(p));
    CHECK(oracle::relative_error(s.trace_squared(), oracle::trace_squared(s.matrix())) < 1e-13);
  }
}

TEST_CASE("family parameter validation") {
  const ScatterSpec id = ScatterSpec::identity(3);
  CHECK_THROWS_AS(DistributionSpec::student_t(2.5, id), InvalidInput);
  CHECK_THROWS_AS(DistributionSpec::mixture_normal(1.0, 10, id), InvalidInput);
  CHECK_THROWS_AS(DistributionSpec::mixture_normal(0.2, -1, id), InvalidInput);
  CHECK_THROWS_AS(DistributionSpec::normal(id).with_theta(Vector::Zero(4)), InvalidInput);
}

TEST_CASE("normal sample covariance is close to the identity") {
  RngStream rng(1, 0);
  const Index n = 10000;
  const SampleMatrix x = sample(DistributionSpec::normal(ScatterSpec::identity(2)), n, rng);
  const Matrix c = x.data().transpose() * x.data() / static_cast<double>(n);
  // se of a second-moment entry is sqrt(2/n) on the diagonal, sqrt(1/n) off it
  CHECK(std::abs(c(0, 0) - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(c(1, 1) - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(c(0, 1)) < 5.0 * std::sqrt(1.0 / n));
}

TEST_CASE("t(3) coordinates have second moment 3") {
  RngStream rng(2, 0);
  const Index n = 200000;
  const SampleMatrix x = sample(DistributionSpec::student_t(3, ScatterSpec::identity(1)), n, rng);
  const Eigen::ArrayXd sq = x.data().col(0).array().square();
  const double m = sq.mean();
  // the fourth moment is infinite, so use a generous relative window
  CHECK(m == doctest::Approx(3.0).epsilon(0.15));
}

TEST_CASE("mixture normal variance is 0.8 + 0.2 * 100") {
  RngStream rng(3, 0);
  const Index n = 200000;
  const SampleMatrix x = sample(DistributionSpec::mixture_normal(0.2, 10, ScatterSpec::identity(1)), n, rng);
  const Eigen::ArrayXd sq = x.data().col(0).array().square();
  const double m = sq.mean();
  const double se = std::sqrt((sq - m).square().sum() / (n - 1.0) / n);
  CHECK(std::abs(m - 20.8) < 4.0 * se);
}

TEST_CASE("independent-component variance is not rescaled") {
  RngStream rng(4, 0);
  const Index n = 50000;
  const SampleMatrix x = sample(DistributionSpec::ic_normal_mix(0.2, 10, ScatterSpec::identity(5)), n, rng);
  const double m = x.data().array().square().mean();
  CHECK(m == doctest::Approx(20.8).epsilon(0.03));
}

TEST_CASE("sampling is reproducible and streams differ") {
  const auto spec = DistributionSpec::student_t(3, ScatterSpec::ar1(30, 0.5)).with_theta(Vector::Constant(30, 0.1));
  RngStream a(99, 4), b(99, 4), c(99, 5);
  const Matrix xa = sample(spec, 20, a).data();
  const Matrix xb = sample(spec, 20, b).data();
  const Matrix xc = sample(spec, 20, c).data();
  CHECK((xa.array() == xb.array()).all());
  CHECK_FALSE((xa.array() == xc.array()).all());
}

TEST_CASE("sampler applies location and scatter") {
  const Vector theta = Vector::LinSpaced(3, 1.0, 3.0);
  const auto spec = DistributionSpec::normal(ScatterSpec::ar1(3, 0.5)).with_theta(theta);
  RngStream rng(7, 0);
  const Index n = 40000;
  const Matrix x = sample(spec, n, rng).data();
  const Vector mean = x.colwise().mean().transpose();
  CHECK((mean - theta).cwiseAbs().maxCoeff() < 5.0 * std::sqrt(1.0 / n));
  const Matrix centered = x.rowwise() - mean.transpose();
  const Matrix cov = centered.transpose() * centered / (n - 1.0);
  CHECK(cov(0, 1) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(cov(0, 2) == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("sphere moments: identity and a coordinate projector") {
  RngStream rng(8, 0);
  const SphereMomentReport id = sphere_moment_check(Matrix::Identity(5, 5), 1000, rng);
  CHECK(id.second.expected == doctest::Approx(1.0));
  CHECK(id.second.sample_mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.second.within(4.0));
  CHECK(id.fourth_exact.expected == doctest::Approx(1.0));
  CHECK(id.fourth_exact.within(4.0));

  Matrix e1 = Matrix::Zero(3, 3);
  e1(0, 0) = 1.0;
  const SphereMomentReport r = sphere_moment_check(e1, 200000, rng);
  CHECK(r.second.expected == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(r.second.within(4.0));
  // E u_1^8 for p = 3 is 1/9
  CHECK(r.fourth_exact.expected == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(r.fourth_exact.within(4.0));
}

TEST_CASE("sphere second moment for AR(1), p = 50") {
  RngStream rng(9, 0);
  const SphereMomentReport r = sphere_moment_check(ScatterSpec::ar1(50, 0.5).matrix(), 100000, rng);
  CHECK(r.second.within(4.0));
  CHECK(r.fourth_exact.within(4.0));
}

TEST_CASE("trace fourth-moment formula differs from the exact value for M = I") {
  // u'u = 1 so E(u'u)^4 = 1, while {3p^2 + 6p}/{p(p+2)(p+4)(p+6)} = 3/((p+4)(p+6))
  RngStream rng(10, 0);
  const SphereMomentReport r = sphere_moment_check(Matrix::Identity(10, 10), 100, rng);
  CHECK(r.fourth.expected == doctest::Approx(3.0 / (14.0 * 16.0)));
  CHECK(r.fourth_exact.expected == doctest::Approx(1.0));
}

TEST_CASE("elliptical samples give uniform signs after whitening") {
  const ScatterSpec s = ScatterSpec::ar1(20, 0.5);
  const Matrix m = s.matrix();
  for (const auto& spec : {DistributionSpec::normal(s), DistributionSpec::student_t(3, s),
                           DistributionSpec::mixture_normal(0.8, 10, s)}) {
    RngStream rng(11, 0);
    const SphereMomentReport r = ellipticity_check(spec, m, 40000, rng);
    INFO(spec.label());
    CHECK(r.second.within(4.0));
    CHECK(r.fourth_exact.within(4.0));
  }
  RngStream rng(12, 0);
  CHECK_THROWS_AS(ellipticity_check(DistributionSpec::ic_student_t(3, s), m, 100, rng), UnsupportedFamily);
}

TEST_CASE("build_theta allocation") {
  CHECK(build_theta(200, ThetaPattern::Dense, 0.0).norm() == 0.0);

  const Vector sparse = build_theta(200, ThetaPattern::Sparse, 0.1, 200.0);
  CHECK((sparse.array() != 0.0).count() == 10);
  CHECK(sparse.head(190).norm() == 0.0);
  CHECK(sparse(199) == doctest::Approx(std::sqrt(0.1 * std::sqrt(200.0) / 10.0)));
  CHECK(sparse(199) == doctest::Approx(0.3761).epsilon(1e-4));

  const Vector dense = build_theta(4, ThetaPattern::Dense, 1.0);
  CHECK(dense(0) == 0.0);
  CHECK(dense(1) == 0.0);
  CHECK(dense(2) > 0.0);
  CHECK(dense(3) == dense(2));

  CHECK((build_theta(5, ThetaPattern::Dense, 1.0).array() != 0.0).count() == 3);
  CHECK((build_theta(21, ThetaPattern::Sparse, 1.0).array() != 0.0).count() == 2);

  for (Index p : {3, 10, 200, 401, 800}) {
    for (double target : {0.1, 1.0, 2.5}) {
      for (ThetaPattern pat : {ThetaPattern::Dense, ThetaPattern::Sparse}) {
        const double tr = 0.7 * static_cast<double>(p);
        const Vector th = build_theta(p, pat, target, tr);
        CHECK(oracle::relative_error(th.squaredNorm() / std::sqrt(tr), target) < 1e-12);
        CHECK(th.minCoeff() >= 0.0);
      }
    }
  }
  CHECK_THROWS_AS(build_theta(10, ThetaPattern::Dense, -1.0), InvalidInput);
}
