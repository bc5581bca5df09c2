#include "subordkit/rational.hpp"

#include <cctype>
#include <cstddef>

#include "subordkit/errors.hpp"

namespace subordkit {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw EvalError(ErrorKind::Config, "empty rational literal");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    s.erase(0, 1);
  }

  Rational magnitude;
  if (const std::size_t slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw EvalError(ErrorKind::Config, "malformed rational '" + text + "'");
    const BigInt d(den);
    if (d == 0)
      throw EvalError(ErrorKind::Config, "zero denominator in '" + text + "'");
    magnitude = Rational(BigInt(num), d);
  } else if (const std::size_t dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw EvalError(ErrorKind::Config, "malformed decimal '" + text + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt w = whole.empty() ? BigInt(0) : BigInt(whole);
    magnitude = Rational(w * scale + BigInt(frac), scale);
  } else {
    if (!all_digits(s))
      throw EvalError(ErrorKind::Config, "malformed rational '" + text + "'");
    magnitude = Rational(BigInt(s));
  }
  return negative ? Rational(-magnitude) : magnitude;
}

std::string format_rational(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double rational_to_double(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace subordkit
