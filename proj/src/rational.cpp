#include "psipoint/rational.hpp"

#include <stdexcept>

namespace psipoint {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  auto parse_int = [](const std::string& part) {
    if (part.empty() || part == "-" || part == "+")
      throw std::invalid_argument("malformed integer '" + part + "'");
    Integer z;
    const char* p = part.c_str();
    if (*p == '+') ++p;
    if (z.set_str(p, 10) != 0)
      throw std::invalid_argument("malformed integer '" + part + "'");
    return z;
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  const Integer num = parse_int(s.substr(0, slash));
  const Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return make_rational(num, den);
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double factorial of n < -1");
  if (n <= 0) return 1;
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace psipoint
