#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetadet/laurent_poly.hpp"

namespace thetadet {

// Truncated Laurent series in the base nome q (the elliptic nome is p = q^2)
// with LaurentPoly coefficients. Every coefficient with q-exponent <= order()
// is exact; nothing above order() is represented.
//
// low() is the exponent of the first nonzero coefficient, or order() + 1 for a
// series that is zero up to its order.
class NomeSeries {
 public:
  NomeSeries(int nvars, int order);

  static NomeSeries one(int nvars, int order);
  static NomeSeries constant(const LaurentPoly& c, int order);
  // c * q^qexp truncated at order.
  static NomeSeries monomial(const LaurentPoly& c, int qexp, int order);
  // coeffs[k] is the coefficient of q^(low + k).
  static NomeSeries from_coeffs(int nvars, int low, int order, std::vector<LaurentPoly> coeffs);

  int nvars() const { return nvars_; }
  int low() const { return low_; }
  int order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of q^e; throws a usage error for e > order().
  const LaurentPoly& coeff(int e) const;

  NomeSeries truncate(int order) const;
  // Multiply by q^k.
  NomeSeries shift(int k) const;

  NomeSeries operator+(const NomeSeries& other) const;
  NomeSeries operator-(const NomeSeries& other) const;
  NomeSeries operator*(const NomeSeries& other) const;
  NomeSeries operator-() const;
  NomeSeries operator*(const Rational& scalar) const;
  NomeSeries operator*(const LaurentPoly& scalar) const;

  // Multiply by (1 - c*q^k) for a polynomial c, k >= 0; cheaper than a full
  // product when building Pochhammer symbols.
  NomeSeries times_one_minus(const LaurentPoly& c, int k) const;

  NomeSeries substitute(int var, const Rational& value) const;
  NomeSeries remap(int new_nvars, std::span<const int> map) const;

  std::string to_string() const;

 private:
  void normalize();

  int nvars_;
  int low_;
  int order_;
  std::vector<LaurentPoly> coeffs_;
  LaurentPoly zero_;
};

// Inverse of a series whose q^0 coefficient is a nonzero constant and which
// has no negative powers of q.
NomeSeries series_invert_unit(const NomeSeries& a);

struct Mismatch {
  int qexp = 0;
  std::vector<int> exps;
  Rational lhs;
  Rational rhs;
};

struct Verdict {
  bool equal = true;
  std::optional<Mismatch> first_diff;
  std::string note;  // which comparison failed, when there are several
};

// Compare a and b on all q-exponents <= order. The reported mismatch is the
// smallest q-exponent, then the lexicographically least exponent vector.
Verdict series_equal(const NomeSeries& a, const NomeSeries& b, int order);

}  // namespace thetadet
