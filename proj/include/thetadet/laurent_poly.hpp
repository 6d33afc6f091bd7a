#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thetadet/rational.hpp"

namespace thetadet {

inline constexpr int kMaxVars = 12;

// Exponent vector of a Laurent monomial. Entries past nvars are zero, so the
// defaulted ordering is lexicographic on the live entries.
class Exponents {
 public:
  Exponents() { e_.fill(0); }
  explicit Exponents(std::span<const int> exps);

  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  void set(int i, int value);

  Exponents operator+(const Exponents& other) const;
  Exponents operator-() const;
  bool is_zero() const;

  std::vector<int> to_vector(int nvars) const;

  auto operator<=>(const Exponents&) const = default;
  bool operator==(const Exponents&) const = default;

 private:
  std::array<std::int16_t, kMaxVars> e_;
};

struct Term {
  Exponents exps;
  Rational coeff;
};

// Multivariate Laurent polynomial over Q in nvars formal variables.
// Terms are kept sorted by exponent vector with no zero coefficients.
class LaurentPoly {
 public:
  explicit LaurentPoly(int nvars = 0);

  static LaurentPoly constant(int nvars, const Rational& c);
  static LaurentPoly monomial(int nvars, const Rational& c, const Exponents& exps);
  static LaurentPoly variable(int nvars, int index, int power = 1);

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& exps) const;

  LaurentPoly operator+(const LaurentPoly& other) const;
  LaurentPoly operator-(const LaurentPoly& other) const;
  LaurentPoly operator*(const LaurentPoly& other) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const Rational& scalar) const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);

  // Multiply by c * x^exps without building a temporary polynomial.
  LaurentPoly times_monomial(const Rational& c, const Exponents& exps) const;
  // this += factor * other, the inner step of series convolution.
  void add_product(const LaurentPoly& a, const LaurentPoly& b);

  // Replace variable `var` by `value`; the result has nvars - 1 variables.
  LaurentPoly substitute(int var, const Rational& value) const;
  // Rename variables into a space of `new_nvars` variables: old variable i
  // becomes new variable map[i] (or is dropped if map[i] < 0, which requires
  // its exponent to be zero everywhere).
  LaurentPoly remap(int new_nvars, std::span<const int> map) const;

  bool operator==(const LaurentPoly& other) const;

  std::string to_string() const;

 private:
  static LaurentPoly from_unsorted(int nvars, std::vector<Term> terms);
  void check_compatible(const LaurentPoly& other) const;

  int nvars_;
  std::vector<Term> terms_;
};

inline LaurentPoly operator*(const Rational& s, const LaurentPoly& p) { return p * s; }

}  // namespace thetadet
