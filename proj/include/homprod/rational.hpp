#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>

namespace homprod {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);
std::string to_string(const Rational& r);  // "p/q", or "p" when q == 1

// f(x) = scale * x^exponent on x >= 0.
struct PowerLaw {
  int exponent = 1;
  Rational scale{1};

  Rational operator()(const Rational& x) const;
  Rational operator()(std::size_t x) const { return (*this)(Rational(static_cast<std::int64_t>(x))); }
  // Inverse on [0, inf); exact when the result is rational, otherwise rounded.
  double inverse(const Rational& y) const;
  std::string describe() const;

  static PowerLaw linear() { return {1, Rational(1)}; }
  static PowerLaw quadratic() { return {2, Rational(1, 4)}; }  // x^2 / 4
  static PowerLaw cubic() { return {3, Rational(1, 4)}; }      // x^3 / 4
};

// Parses "cubic", "quadratic", "linear" or "c*x^a" with c a fraction like 1/4.
std::optional<PowerLaw> parse_power_law(const std::string& text);

}  // namespace homprod
