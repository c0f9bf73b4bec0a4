#include "zipshift/rational.hpp"

#include <cctype>

#include "zipshift/errors.hpp"

namespace zipshift {

namespace {

BigInt parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r = Rational(parse_int(s.substr(0, slash), text), den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt whole = ip.empty() ? BigInt(0) : parse_int(ip, text);
    BigInt frac = fp.empty() ? BigInt(0) : parse_int(fp, text);
    if (ip.empty() && fp.empty()) throw ParseError("malformed rational '" + std::string(text) + "'");
    r = Rational(whole * scale + frac, scale);
  } else {
    r = Rational(parse_int(s, text));
  }
  return neg ? Rational(-r) : r;
}

std::string format_rational(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace zipshift
