#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thetadet/nome_series.hpp"

namespace thetadet {

// Brute-force truncated products over Q[x^{+-1}][[q]], kept apart from the
// theta and series code. Keys are (x_1..x_nvars exponents, q exponent).
struct OracleSeries {
  int nvars = 0;
  int order = 0;
  std::map<std::vector<int>, Rational> terms;
};

OracleSeries oracle_one(int nvars, int order);
// Multiply by (1 - c x^e q^k); terms past q^order are dropped.
void oracle_times_binomial(OracleSeries& s, const Rational& c, const std::vector<int>& e, int k);
void oracle_times_monomial(OracleSeries& s, const std::vector<int>& e);

// (p;p) theta(x;p) theta(p x^2; p^2), p = q^2
OracleSeries oracle_quintuple_product(int order);
// sum_m x^{3m} q^{3m(m-1)+2m} (1 - x q^{2m})
OracleSeries oracle_quintuple_sum(int order);
// (p;p)^2 theta(x_1;p) theta(x_2;p) x_1^{-1} theta(x_1 x_2;p) theta(x_1/x_2;p)
OracleSeries oracle_winquist_product(int order);

OracleSeries oracle_from_series(const NomeSeries& s);
// First key (in map order) where the two differ, nullopt if equal.
std::optional<std::vector<int>> oracle_first_diff(const OracleSeries& a, const OracleSeries& b);

}  // namespace thetadet
