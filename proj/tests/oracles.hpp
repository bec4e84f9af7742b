#pragma once

// Brute-force reference computations used only by the tests. They follow the
// defining sums literally and share no code with the library's reductions.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Weight = std::function<double(double)>;

inline VectorXd sign_of(const VectorXd& x) {
  const double r = x.norm();
  if (r <= 1e-12 * std::sqrt(static_cast<double>(x.size()))) return VectorXd::Zero(x.size());
  return x / r;
}

inline double weight_of(const VectorXd& x, const Weight& k) {
  const double r = x.norm();
  if (r <= 1e-12 * std::sqrt(static_cast<double>(x.size()))) return 0.0;
  return k(r);
}

/// 2/(n(n-1)) sum_{i<j} K(r_i)K(r_j) U_i'U_j
inline double w_double_sum(const MatrixXd& x, const Weight& k) {
  const long n = x.rows();
  double s = 0.0;
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      const VectorXd xi = x.row(i).transpose(), xj = x.row(j).transpose();
      s += weight_of(xi, k) * weight_of(xj, k) * sign_of(xi).dot(sign_of(xj));
    }
  }
  return 2.0 * s / (static_cast<double>(n) * (n - 1));
}

/// 2 n^-4 sum_{i != j} K^2 K^2 {U_i - u_ij}'U_j {U_j - u_ij}'U_i with u_ij
/// summed explicitly over k != i, j.
inline double sigma2_triple_loop(const MatrixXd& x, const Weight& k) {
  const long n = x.rows();
  const long p = x.cols();
  double s = 0.0;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      if (i == j) continue;
      VectorXd u = VectorXd::Zero(p);
      for (long m = 0; m < n; ++m) {
        if (m != i && m != j) u += sign_of(x.row(m).transpose());
      }
      u /= static_cast<double>(n - 2);
      const VectorXd xi = x.row(i).transpose(), xj = x.row(j).transpose();
      const VectorXd ui = sign_of(xi), uj = sign_of(xj);
      const double wi = weight_of(xi, k), wj = weight_of(xj, k);
      s += wi * wi * wj * wj * (ui - u).dot(uj) * (uj - u).dot(ui);
    }
  }
  const double nd = static_cast<double>(n);
  return 2.0 * s / (nd * nd * nd * nd);
}

/// Unbiased per-coordinate variance of the rows other than i and j.
inline VectorXd leave_two_out_variance(const MatrixXd& x, long i, long j) {
  std::vector<long> keep;
  for (long m = 0; m < x.rows(); ++m) {
    if (m != i && m != j) keep.push_back(m);
  }
  const double cnt = static_cast<double>(keep.size());
  VectorXd mean = VectorXd::Zero(x.cols());
  for (long m : keep) mean += x.row(m).transpose();
  mean /= cnt;
  VectorXd var = VectorXd::Zero(x.cols());
  for (long m : keep) var += (x.row(m).transpose() - mean).cwiseAbs2();
  return var / (cnt - 1.0);
}

/// T_n and sigma_breve_n^2 with every D_ij recomputed from scratch.
struct ScaleInvariant {
  double t = 0.0;
  double sigma2 = 0.0;
};

inline ScaleInvariant scale_invariant_brute(const MatrixXd& x, const Weight& k) {
  const long n = x.rows();
  const long p = x.cols();
  double t = 0.0, s = 0.0;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      if (i == j) continue;
      const VectorXd d = leave_two_out_variance(x, i, j);
      const VectorXd scale = d.cwiseSqrt().cwiseInverse();
      auto standardized = [&](long m) { return VectorXd(x.row(m).transpose().cwiseProduct(scale)); };
      VectorXd u = VectorXd::Zero(p);
      for (long m = 0; m < n; ++m) {
        if (m != i && m != j) u += sign_of(standardized(m));
      }
      u /= static_cast<double>(n - 2);
      const VectorXd yi = standardized(i), yj = standardized(j);
      const VectorXd ui = sign_of(yi), uj = sign_of(yj);
      const double wi = weight_of(yi, k), wj = weight_of(yj, k);
      if (i < j) t += wi * wj * ui.dot(uj);
      s += wi * wi * wj * wj * (ui - u).dot(uj) * (uj - u).dot(ui);
    }
  }
  const double nd = static_cast<double>(n);
  return {2.0 * t / (nd * (nd - 1.0)), 2.0 * s / (nd * nd * nd * nd)};
}

/// tr(Sigma^2) by explicit double loop.
inline double trace_squared(const MatrixXd& sigma) {
  double s = 0.0;
  for (long i = 0; i < sigma.rows(); ++i) {
    for (long j = 0; j < sigma.cols(); ++j) s += sigma(i, j) * sigma(j, i);
  }
  return s;
}

inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sd(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace oracle
