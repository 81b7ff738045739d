#include "ghz/rational.hpp"

#include <cctype>

#include "ghz/errors.hpp"

namespace ghz {

std::string to_string(const Rational& x) {
  const Integer num = numerator(x);
  const Integer den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_text(num)) throw ParseError("bad rational '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_integer(num));
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("bad rational '" + std::string(text) + "'");
  const Integer d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

}  // namespace ghz
