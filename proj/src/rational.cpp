#include "plover/rational.hpp"

#include <cctype>
#include <sstream>

namespace plover {

Rational make_rational(long num, long den) {
  if (den == 0) throw RationalError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw RationalError("malformed fraction: " + text);
    Rational q{mpz_class(num, 10), mpz_class(den, 10)};
    if (q.get_den() == 0) throw RationalError("zero denominator: " + text);
    q.canonicalize();
    return q;
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw RationalError("malformed number: " + text);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class numerator = (whole.empty() ? mpz_class(0) : mpz_class(whole, 10)) * scale;
    numerator += mpz_class(frac, 10);
    Rational q(numerator, scale);
    q.canonicalize();
    return q;
  }
  if (!all_digits(text)) throw RationalError("malformed number: " + text);
  return Rational(mpz_class(text, 10));
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;  // gmpxx prints "n" or "n/d" with canonical sign
  return os.str();
}

std::string to_decimal_string(const Rational& q, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half away from zero
  mpz_class num = q.get_num() * scale * 2 + (sgn(q) >= 0 ? q.get_den() : -q.get_den());
  mpz_class scaled = num / (q.get_den() * 2);
  bool negative = scaled < 0;
  mpz_class mag = abs(scaled);
  std::string s = mag.get_str();
  if (s.size() <= static_cast<std::size_t>(digits))
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return negative ? "-" + s : s;
}

}  // namespace plover
