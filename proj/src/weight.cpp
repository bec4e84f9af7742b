#include "hdsign/weight.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

#include "hdsign/errors.hpp"

namespace hdsign {

WeightFunction::WeightFunction(WeightKind kind, std::function<double(double)> fn,
                               std::string name)
    : kind_(kind), fn_(std::move(fn)), name_(std::move(name)) {}

WeightFunction WeightFunction::os() {
  return {WeightKind::OS, [](double r) { return 1.0 / r; }, "OS"};
}

WeightFunction WeightFunction::ss() {
  return {WeightKind::SS, [](double) { return 1.0; }, "SS"};
}

WeightFunction WeightFunction::cq() {
  return {WeightKind::CQ, [](double r) { return r; }, "CQ"};
}

WeightFunction WeightFunction::power(double coef, double exponent) {
  if (!std::isfinite(coef) || !std::isfinite(exponent)) {
    throw InvalidInput("weight coefficient and exponent must be finite");
  }
  std::ostringstream name;
  name << coef << "*r^" << exponent;
  std::function<double(double)> fn;
  if (exponent == 0.0) {
    fn = [coef](double) { return coef; };
  } else if (exponent == 1.0) {
    fn = [coef](double r) { return coef * r; };
  } else if (exponent == -1.0) {
    fn = [coef](double r) { return coef / r; };
  } else if (exponent == 0.5) {
    fn = [coef](double r) { return coef * std::sqrt(r); };
  } else {
    fn = [coef, exponent](double r) { return coef * std::pow(r, exponent); };
  }
  return {WeightKind::Custom, std::move(fn), name.str()};
}

WeightFunction WeightFunction::custom(std::function<double(double)> fn, std::string name) {
  if (!fn) throw InvalidInput("custom weight needs a callable");
  return {WeightKind::Custom, std::move(fn), std::move(name)};
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  std::pair<double, double> parse() {
    double coef = 1.0;
    double exponent = 0.0;
    factor(coef, exponent);
    skip_ws();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      factor(coef, exponent);
      skip_ws();
    }
    if (pos_ != s_.size()) fail("unexpected character");
    return {coef, exponent};
  }

 private:
  void factor(double& coef, double& exponent) {
    skip_ws();
    if (pos_ < s_.size() && (s_[pos_] == 'r' || s_[pos_] == 'R')) {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        exponent += rational();
      } else {
        exponent += 1.0;
      }
    } else {
      coef *= rational();
    }
  }

  // number, number/number, or (number/number)
  double rational() {
    skip_ws();
    bool paren = false;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      paren = true;
      ++pos_;
    }
    double value = number();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      double den = number();
      if (den == 0.0) fail("division by zero");
      value /= den;
    }
    if (paren) {
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
    }
    return value;
  }

  double number() {
    skip_ws();
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    std::ostringstream msg;
    msg << "invalid weight expression '" << s_ << "' at position " << pos_ << ": " << what;
    throw InvalidInput(msg.str());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

WeightFunction WeightFunction::parse(std::string_view expr) {
  std::string lower;
  for (char c : expr) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "os") return os();
  if (lower == "ss") return ss();
  if (lower == "cq") return cq();
  auto [coef, exponent] = ExprParser(expr).parse();
  WeightFunction w = power(coef, exponent);
  w.name_ = std::string(expr);
  return w;
}

}  // namespace hdsign
