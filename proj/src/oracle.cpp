#include "thetadet/oracle.hpp"

#include "thetadet/error.hpp"

namespace thetadet {

namespace {

std::vector<int> xexp(int nvars, std::initializer_list<std::pair<int, int>> xs, int sign = 1) {
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  for (auto [i, k] : xs) e[static_cast<std::size_t>(i)] += sign * k;
  return e;
}

// (c x^e q^a; q^step) with factors up to q^order
void times_poch(OracleSeries& s, const Rational& c, std::initializer_list<std::pair<int, int>> xs, int a, int step) {
  const auto e = xexp(s.nvars, xs);
  for (int k = a; k <= s.order; k += step) oracle_times_binomial(s, c, e, k);
}

// theta(c x^e q^a; q^step) = (c x^e q^a; q^step)(q^{step-a} / (c x^e); q^step), 0 <= a < step
void times_theta(OracleSeries& s, const Rational& c, std::initializer_list<std::pair<int, int>> xs, int a, int step) {
  times_poch(s, c, xs, a, step);
  const auto inv = xexp(s.nvars, xs, -1);
  for (int k = step - a; k <= s.order; k += step) oracle_times_binomial(s, Rational(1) / c, inv, k);
}

}  // namespace

OracleSeries oracle_one(int nvars, int order) {
  if (order < 0) fail(ErrorKind::Usage, "order must be >= 0");
  OracleSeries s{nvars, order, {}};
  s.terms[std::vector<int>(static_cast<std::size_t>(nvars) + 1, 0)] = Rational(1);
  return s;
}

void oracle_times_binomial(OracleSeries& s, const Rational& c, const std::vector<int>& e, int k) {
  if (k < 0) fail(ErrorKind::Usage, "negative q exponent in oracle factor");
  if (k > s.order) return;
  std::map<std::vector<int>, Rational> out = s.terms;
  for (const auto& [key, v] : s.terms) {
    if (key.back() + k > s.order) continue;
    std::vector<int> nk = key;
    for (int i = 0; i < s.nvars; ++i) nk[static_cast<std::size_t>(i)] += e[static_cast<std::size_t>(i)];
    nk.back() += k;
    Rational& slot = out[nk];
    slot -= c * v;
    if (slot == Rational(0)) out.erase(nk);
  }
  s.terms = std::move(out);
}

void oracle_times_monomial(OracleSeries& s, const std::vector<int>& e) {
  std::map<std::vector<int>, Rational> out;
  for (const auto& [key, v] : s.terms) {
    std::vector<int> nk = key;
    for (int i = 0; i < s.nvars; ++i) nk[static_cast<std::size_t>(i)] += e[static_cast<std::size_t>(i)];
    out.emplace(std::move(nk), v);
  }
  s.terms = std::move(out);
}

OracleSeries oracle_quintuple_product(int order) {
  OracleSeries s = oracle_one(1, order);
  times_poch(s, 1, {}, 2, 2);
  times_theta(s, 1, {{0, 1}}, 0, 2);
  times_theta(s, 1, {{0, 2}}, 2, 4);
  return s;
}

OracleSeries oracle_quintuple_sum(int order) {
  OracleSeries s{1, order, {}};
  auto add = [&](int xe, int qe, const Rational& c) {
    if (qe < 0 || qe > order) return;
    Rational& slot = s.terms[{xe, qe}];
    slot += c;
    if (slot == Rational(0)) s.terms.erase({xe, qe});
  };
  // q-exponents grow like 3m^2, so |m| <= order suffices
  for (int m = -order - 1; m <= order + 1; ++m) {
    const int e = 3 * m * (m - 1) + 2 * m;
    add(3 * m, e, 1);
    add(3 * m + 1, e + 2 * m, -1);
  }
  return s;
}

OracleSeries oracle_winquist_product(int order) {
  OracleSeries s = oracle_one(2, order);
  times_poch(s, 1, {}, 2, 2);
  times_poch(s, 1, {}, 2, 2);
  times_theta(s, 1, {{0, 1}}, 0, 2);
  times_theta(s, 1, {{1, 1}}, 0, 2);
  times_theta(s, 1, {{0, 1}, {1, 1}}, 0, 2);
  times_theta(s, 1, {{0, 1}, {1, -1}}, 0, 2);
  oracle_times_monomial(s, {-1, 0});
  return s;
}

OracleSeries oracle_from_series(const NomeSeries& s) {
  OracleSeries o{s.nvars(), s.order(), {}};
  if (s.is_zero()) return o;
  for (int e = s.low(); e <= s.order(); ++e) {
    for (const Term& t : s.coeff(e).terms()) {
      std::vector<int> key = t.exps.to_vector(s.nvars());
      key.push_back(e);
      o.terms.emplace(std::move(key), t.coeff);
    }
  }
  return o;
}

std::optional<std::vector<int>> oracle_first_diff(const OracleSeries& a, const OracleSeries& b) {
  if (a.nvars != b.nvars) fail(ErrorKind::Usage, "oracle series over different variable counts");
  const int order = std::min(a.order, b.order);
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  auto skip = [&](auto& it, const auto& end) {
    while (it != end && it->first.back() > order) ++it;
  };
  for (;;) {
    skip(ia, a.terms.end());
    skip(ib, b.terms.end());
    if (ia == a.terms.end() || ib == b.terms.end()) break;
    if (ia->first != ib->first || ia->second != ib->second) return std::min(ia->first, ib->first);
    ++ia;
    ++ib;
  }
  if (ia != a.terms.end()) return ia->first;
  if (ib != b.terms.end()) return ib->first;
  return std::nullopt;
}

}  // namespace thetadet
