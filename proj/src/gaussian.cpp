#include "bfred/gaussian.hpp"

#include <cctype>
#include <stdexcept>

namespace bfred {

namespace {

mpz_class parse_integer(const std::string& text) {
  if (text.empty()) fail("malformed_document", "empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) fail("malformed_document", "sign without digits: '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail("malformed_document", "bad integer literal: '" + text + "'");
  }
  return mpz_class(text, 10);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail("malformed_document", "zero denominator: '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

mpz_class isqrt(const mpz_class& value) {
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), value.get_mpz_t());
  return root;
}

Rational sqrt_lower_bound(const Rational& value) {
  if (value < 0) fail("domain_error", "sqrt of negative rational");
  if (value == 0) return 0;
  /* sqrt(n/d) = sqrt(n d K^2) / (d K) >= floor(sqrt(n d K^2)) / (d K).
   * The scale K keeps the floor from losing more than ~2^-32 relative. */
  static const mpz_class kScale = mpz_class(1) << 32;
  mpz_class num = value.get_num() * value.get_den() * kScale * kScale;
  Rational out(isqrt(num), value.get_den() * kScale);
  out.canonicalize();
  return out;
}

std::string format_gaussian(const GaussianRational& value) {
  if (value.is_real()) return format_rational(value.re());
  std::string out = format_rational(value.re());
  if (value.im() > 0) out += "+";
  out += format_rational(value.im()) + "i";
  return out;
}

}  // namespace bfred
