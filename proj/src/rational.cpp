#include "thetadet/rational.hpp"

#include "thetadet/error.hpp"

namespace thetadet {

Rational make_rational(long num, long den) {
  if (den == 0) fail(ErrorKind::Domain, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const std::string& num, const std::string& den) {
  Integer n, d;
  if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
    fail(ErrorKind::Usage, "malformed rational '" + num + "/" + den + "'");
  }
  if (d == 0) fail(ErrorKind::Domain, "rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) fail(ErrorKind::Domain, "zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  // base is canonical, so num/den already is.
  return Rational(num, den);
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace thetadet
