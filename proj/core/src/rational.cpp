#include "arcjac/rational.hpp"

#include <cctype>

#include "arcjac/error.hpp"

namespace arcjac {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  // mpq_class accepts hex/octal-looking strings and whitespace; insist on
  // plain decimal so wire data stays unambiguous.
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  bool seen_digit = false;
  bool seen_slash = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      continue;
    }
    if (c == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
      seen_digit = false;
      continue;
    }
    throw ValidationError("bad rational literal: " + text);
  }
  if (!seen_digit) throw ValidationError("bad rational literal: " + text);
  Rational value;
  // mpq set_str rejects an explicit plus sign; the scan above allowed it.
  const std::string plain = text[0] == '+' ? text.substr(1) : text;
  if (value.set_str(plain, 10) != 0) throw ValidationError("bad rational literal: " + text);
  if (value.get_den() == 0) throw ValidationError("zero denominator: " + text);
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool rational_sqrt(const Rational& value, Rational* root) {
  if (value < 0) return false;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  // gcd(num, den) = 1 implies gcd(rn, rd) = 1, so this is already canonical.
  *root = Rational(rn) / Rational(rd);
  return true;
}

}  // namespace arcjac
