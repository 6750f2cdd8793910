#include "homprod/rational.hpp"

#include <cmath>
#include <regex>

namespace homprod {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational PowerLaw::operator()(const Rational& x) const {
  Rational p(1);
  for (int i = 0; i < exponent; ++i) p *= x;
  return scale * p;
}

double PowerLaw::inverse(const Rational& y) const {
  if (y <= 0) return 0.0;
  return std::pow(to_double(y / scale), 1.0 / exponent);
}

std::string PowerLaw::describe() const {
  std::string s = to_string(scale) + "*x";
  if (exponent != 1) s += "^" + std::to_string(exponent);
  return s;
}

std::optional<PowerLaw> parse_power_law(const std::string& text) {
  if (text == "cubic") return PowerLaw::cubic();
  if (text == "quadratic") return PowerLaw::quadratic();
  if (text == "linear") return PowerLaw::linear();
  // "3/4*x^2" or "x^2/4"
  static const std::regex re(R"(^\s*(\d+)(?:/(\d+))?\s*\*\s*x(?:\^(\d+))?\s*$)");
  static const std::regex tail(R"(^\s*x(?:\^(\d+))?\s*(?:/\s*(\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, tail)) {
    const std::int64_t den = m[2].matched ? std::stoll(m[2]) : 1;
    const int e = m[1].matched ? std::stoi(m[1]) : 1;
    if (den == 0 || e < 1) return std::nullopt;
    return PowerLaw{e, Rational(1, den)};
  }
  if (!std::regex_match(text, m, re)) return std::nullopt;
  std::int64_t num = std::stoll(m[1]);
  std::int64_t den = m[2].matched ? std::stoll(m[2]) : 1;
  if (den == 0) return std::nullopt;
  int e = m[3].matched ? std::stoi(m[3]) : 1;
  if (e < 1 || num == 0) return std::nullopt;
  return PowerLaw{e, Rational(num, den)};
}

}  // namespace homprod
