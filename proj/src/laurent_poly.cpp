#include "thetadet/laurent_poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "thetadet/error.hpp"

namespace thetadet {

namespace {

std::int16_t narrow_exponent(int value) {
  if (value > std::numeric_limits<std::int16_t>::max() ||
      value < std::numeric_limits<std::int16_t>::min()) {
    fail(ErrorKind::Domain, "Laurent exponent out of range: " + std::to_string(value));
  }
  return static_cast<std::int16_t>(value);
}

}  // namespace

Exponents::Exponents(std::span<const int> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) {
    fail(ErrorKind::Usage, "too many formal variables (max " + std::to_string(kMaxVars) + ")");
  }
  e_.fill(0);
  for (std::size_t i = 0; i < exps.size(); ++i) e_[i] = narrow_exponent(exps[i]);
}

void Exponents::set(int i, int value) { e_[static_cast<std::size_t>(i)] = narrow_exponent(value); }

Exponents Exponents::operator+(const Exponents& other) const {
  Exponents r;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = narrow_exponent(int{e_[i]} + int{other.e_[i]});
  return r;
}

Exponents Exponents::operator-() const {
  Exponents r;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = narrow_exponent(-int{e_[i]});
  return r;
}

bool Exponents::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](std::int16_t v) { return v == 0; });
}

std::vector<int> Exponents::to_vector(int nvars) const {
  return std::vector<int>(e_.begin(), e_.begin() + nvars);
}

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxVars) {
    fail(ErrorKind::Usage, "LaurentPoly supports 0.." + std::to_string(kMaxVars) + " variables");
  }
}

LaurentPoly LaurentPoly::constant(int nvars, const Rational& c) {
  return monomial(nvars, c, Exponents{});
}

LaurentPoly LaurentPoly::monomial(int nvars, const Rational& c, const Exponents& exps) {
  LaurentPoly p(nvars);
  if (c != 0) p.terms_.push_back({exps, c});
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int index, int power) {
  if (index < 0 || index >= nvars) fail(ErrorKind::Usage, "variable index out of range");
  Exponents e;
  e.set(index, power);
  return monomial(nvars, Rational(1), e);
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exps.is_zero());
}

Rational LaurentPoly::constant_term() const { return coefficient(Exponents{}); }

Rational LaurentPoly::coefficient(const Exponents& exps) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                             [](const Term& t, const Exponents& e) { return t.exps < e; });
  if (it != terms_.end() && it->exps == exps) return it->coeff;
  return Rational(0);
}

void LaurentPoly::check_compatible(const LaurentPoly& other) const {
  if (nvars_ != other.nvars_) {
    fail(ErrorKind::Usage, "LaurentPoly variable count mismatch: " + std::to_string(nvars_) +
                               " vs " + std::to_string(other.nvars_));
  }
}

LaurentPoly LaurentPoly::from_unsorted(int nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exps < b.exps; });
  LaurentPoly r(nvars);
  r.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().exps == t.exps) {
      r.terms_.back().coeff += t.coeff;
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  check_compatible(other);
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  // Fast path for the very common constant + constant case.
  if (terms_.size() == 1 && other.terms_.size() == 1 && terms_[0].exps == other.terms_[0].exps) {
    terms_[0].coeff += other.terms_[0].coeff;
    if (terms_[0].coeff == 0) terms_.clear();
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exps < b->exps)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exps < a->exps) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (c != 0) merged.push_back({a->exps, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) { return *this += -other; }

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const {
  LaurentPoly r = *this;
  r += other;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& other) const {
  LaurentPoly r = *this;
  r += -other;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentPoly LaurentPoly::operator*(const Rational& scalar) const {
  if (scalar == 0) return LaurentPoly(nvars_);
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= scalar;
  return r;
}

LaurentPoly LaurentPoly::times_monomial(const Rational& c, const Exponents& exps) const {
  if (c == 0) return LaurentPoly(nvars_);
  LaurentPoly r(nvars_);
  r.terms_.reserve(terms_.size());
  // Adding a fixed exponent vector preserves the lexicographic order.
  for (const auto& t : terms_) r.terms_.push_back({t.exps + exps, t.coeff * c});
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& other) const {
  check_compatible(other);
  if (terms_.empty() || other.terms_.empty()) return LaurentPoly(nvars_);
  if (other.terms_.size() == 1) return times_monomial(other.terms_[0].coeff, other.terms_[0].exps);
  if (terms_.size() == 1) return other.times_monomial(terms_[0].coeff, terms_[0].exps);
  std::vector<Term> products;
  products.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) products.push_back({a.exps + b.exps, a.coeff * b.coeff});
  }
  return from_unsorted(nvars_, std::move(products));
}

void LaurentPoly::add_product(const LaurentPoly& a, const LaurentPoly& b) {
  check_compatible(a);
  a.check_compatible(b);
  if (a.terms_.empty() || b.terms_.empty()) return;
  if (a.is_constant() && b.is_constant() && (terms_.empty() || is_constant())) {
    Rational c = a.terms_[0].coeff * b.terms_[0].coeff;
    if (terms_.empty()) {
      terms_.push_back({Exponents{}, std::move(c)});
    } else {
      terms_[0].coeff += c;
      if (terms_[0].coeff == 0) terms_.clear();
    }
    return;
  }
  *this += a * b;
}

LaurentPoly LaurentPoly::substitute(int var, const Rational& value) const {
  if (var < 0 || var >= nvars_) fail(ErrorKind::Usage, "substitution variable out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const int e = t.exps[var];
    if (value == 0 && e < 0) {
      fail(ErrorKind::Domain, "substituting 0 into a variable with negative exponent");
    }
    Exponents reduced;
    int k = 0;
    for (int i = 0; i < nvars_; ++i) {
      if (i == var) continue;
      reduced.set(k++, t.exps[i]);
    }
    Rational c = t.coeff * pow(value, e);
    if (c != 0) out.push_back({reduced, std::move(c)});
  }
  return from_unsorted(nvars_ - 1, std::move(out));
}

LaurentPoly LaurentPoly::remap(int new_nvars, std::span<const int> map) const {
  if (map.size() != static_cast<std::size_t>(nvars_)) fail(ErrorKind::Usage, "remap size mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e;
    for (int i = 0; i < nvars_; ++i) {
      const int target = map[static_cast<std::size_t>(i)];
      if (target < 0) {
        if (t.exps[i] != 0) fail(ErrorKind::Usage, "remap drops a live variable");
        continue;
      }
      e.set(target, e[target] + t.exps[i]);
    }
    out.push_back({e, t.coeff});
  }
  return from_unsorted(new_nvars, std::move(out));
}

bool LaurentPoly::operator==(const LaurentPoly& other) const {
  if (nvars_ != other.nvars_ || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exps != other.terms_[i].exps || terms_[i].coeff != other.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    out << t.coeff.get_str();
    for (int i = 0; i < nvars_; ++i) {
      if (t.exps[i] == 0) continue;
      out << "*x" << (i + 1);
      if (t.exps[i] != 1) out << "^" << t.exps[i];
    }
  }
  return out.str();
}

}  // namespace thetadet
