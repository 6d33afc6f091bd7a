#pragma once

#include <random>
#include <vector>

#include "thetadet/laurent_poly.hpp"
#include "thetadet/nome_series.hpp"

namespace thetadet::testing {

inline Rational random_rational(std::mt19937_64& rng, bool nonzero = true) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  long a = num(rng);
  while (nonzero && a == 0) a = num(rng);
  return make_rational(a, den(rng));
}

inline LaurentPoly random_poly(std::mt19937_64& rng, int nvars, int terms = 4, int span = 2) {
  std::uniform_int_distribution<int> e(-span, span);
  LaurentPoly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponents x;
    for (int i = 0; i < nvars; ++i) x.set(i, e(rng));
    p += LaurentPoly::monomial(nvars, random_rational(rng), x);
  }
  return p;
}

inline NomeSeries random_series(std::mt19937_64& rng, int nvars, int low, int order) {
  std::vector<LaurentPoly> c;
  for (int k = low; k <= order; ++k) c.push_back(random_poly(rng, nvars, 2, 1));
  return NomeSeries::from_coeffs(nvars, low, order, std::move(c));
}

// Direct truncated product prod (1 - c_k x^e_k q^k) in LaurentPoly coefficients,
// built term by term without any of the library's theta helpers.
struct Factor {
  Rational c;
  Exponents e;
  int qexp;
};

inline std::vector<LaurentPoly> brute_product(int nvars, const std::vector<Factor>& factors, int order) {
  std::vector<LaurentPoly> acc(static_cast<std::size_t>(order + 1), LaurentPoly(nvars));
  acc[0] = LaurentPoly::constant(nvars, Rational(1));
  for (const auto& f : factors) {
    if (f.qexp > order) continue;
    std::vector<LaurentPoly> next = acc;
    const LaurentPoly m = LaurentPoly::monomial(nvars, f.c, f.e);
    for (int k = 0; k + f.qexp <= order; ++k) {
      next[static_cast<std::size_t>(k + f.qexp)] -= acc[static_cast<std::size_t>(k)] * m;
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace thetadet::testing
