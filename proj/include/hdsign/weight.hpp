#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace hdsign {

enum class WeightKind { OS, SS, CQ, Custom };

/// Radial weight K(r) applied to each observation's norm.
///
/// The named weights are K(r) = 1/r (OS), K(r) = 1 (SS) and K(r) = r (CQ).
/// Custom weights are either coef * r^exponent or an arbitrary callable.
class WeightFunction {
 public:
  static WeightFunction os();
  static WeightFunction ss();
  static WeightFunction cq();
  static WeightFunction power(double coef, double exponent);
  static WeightFunction custom(std::function<double(double)> fn, std::string name);

  /// Parses products of constants and powers of r, e.g. "r^-1", "2*r^(1/2)",
  /// "r*r", "0.5". Exponents may be decimals or fractions p/q.
  static WeightFunction parse(std::string_view expr);

  double operator()(double r) const { return fn_(r); }
  WeightKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  WeightFunction(WeightKind kind, std::function<double(double)> fn, std::string name);

  WeightKind kind_;
  std::function<double(double)> fn_;
  std::string name_;
};

}  // namespace hdsign
