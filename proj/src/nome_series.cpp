#include "thetadet/nome_series.hpp"

#include <algorithm>
#include <sstream>

#include "thetadet/error.hpp"

namespace thetadet {

NomeSeries::NomeSeries(int nvars, int order)
    : nvars_(nvars), low_(order + 1), order_(order), zero_(nvars) {}

NomeSeries NomeSeries::one(int nvars, int order) {
  return constant(LaurentPoly::constant(nvars, Rational(1)), order);
}

NomeSeries NomeSeries::constant(const LaurentPoly& c, int order) { return monomial(c, 0, order); }

NomeSeries NomeSeries::monomial(const LaurentPoly& c, int qexp, int order) {
  NomeSeries s(c.nvars(), order);
  if (qexp <= order && !c.is_zero()) {
    s.low_ = qexp;
    s.coeffs_.push_back(c);
  }
  return s;
}

NomeSeries NomeSeries::from_coeffs(int nvars, int low, int order, std::vector<LaurentPoly> coeffs) {
  NomeSeries s(nvars, order);
  for (const auto& c : coeffs) {
    if (c.nvars() != nvars) fail(ErrorKind::Usage, "series coefficient variable count mismatch");
  }
  const int keep = std::max(0, order - low + 1);
  if (static_cast<int>(coeffs.size()) > keep) coeffs.resize(static_cast<std::size_t>(keep));
  s.low_ = low;
  s.coeffs_ = std::move(coeffs);
  s.normalize();
  return s;
}

void NomeSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    low_ = order_ + 1;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const LaurentPoly& NomeSeries::coeff(int e) const {
  if (e > order_) {
    fail(ErrorKind::Usage, "coefficient q^" + std::to_string(e) + " beyond truncation order " +
                               std::to_string(order_));
  }
  const int k = e - low_;
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero_;
  return coeffs_[static_cast<std::size_t>(k)];
}

NomeSeries NomeSeries::truncate(int order) const {
  if (order > order_) {
    fail(ErrorKind::Usage, "cannot raise truncation order from " + std::to_string(order_) +
                               " to " + std::to_string(order));
  }
  NomeSeries r = *this;
  r.order_ = order;
  const int keep = std::max(0, order - low_ + 1);
  if (static_cast<int>(r.coeffs_.size()) > keep) r.coeffs_.resize(static_cast<std::size_t>(keep));
  r.normalize();
  return r;
}

NomeSeries NomeSeries::shift(int k) const {
  NomeSeries r = *this;
  r.low_ += k;
  r.order_ += k;
  return r;
}

NomeSeries NomeSeries::operator+(const NomeSeries& other) const {
  if (nvars_ != other.nvars_) fail(ErrorKind::Usage, "series variable count mismatch");
  const int order = std::min(order_, other.order_);
  const int low = std::min(low_, other.low_);
  std::vector<LaurentPoly> out;
  for (int e = low; e <= order; ++e) {
    out.push_back(coeff(e) + other.coeff(e));
  }
  return from_coeffs(nvars_, low, order, std::move(out));
}

NomeSeries NomeSeries::operator-() const {
  NomeSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

NomeSeries NomeSeries::operator-(const NomeSeries& other) const { return *this + (-other); }

NomeSeries NomeSeries::operator*(const NomeSeries& other) const {
  if (nvars_ != other.nvars_) fail(ErrorKind::Usage, "series variable count mismatch");
  // Coefficient e of the product needs a_i for i <= e - other.low and b_j for
  // j <= e - low, hence this bound on what is exact.
  const int order = std::min(order_ + other.low_, other.order_ + low_);
  if (is_zero() || other.is_zero()) return NomeSeries(nvars_, order);
  const int low = low_ + other.low_;
  if (order < low) return NomeSeries(nvars_, order);
  std::vector<LaurentPoly> out(static_cast<std::size_t>(order - low + 1), LaurentPoly(nvars_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int ei = low_ + static_cast<int>(i);
    if (ei + other.low_ > order) break;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      const int e = ei + other.low_ + static_cast<int>(j);
      if (e > order) break;
      out[static_cast<std::size_t>(e - low)].add_product(coeffs_[i], other.coeffs_[j]);
    }
  }
  return from_coeffs(nvars_, low, order, std::move(out));
}

NomeSeries NomeSeries::operator*(const Rational& scalar) const {
  NomeSeries r = *this;
  for (auto& c : r.coeffs_) c = c * scalar;
  r.normalize();
  return r;
}

NomeSeries NomeSeries::operator*(const LaurentPoly& scalar) const {
  if (scalar.nvars() != nvars_) fail(ErrorKind::Usage, "series variable count mismatch");
  NomeSeries r = *this;
  for (auto& c : r.coeffs_) c = c * scalar;
  r.normalize();
  return r;
}

NomeSeries NomeSeries::times_one_minus(const LaurentPoly& c, int k) const {
  if (k < 0) fail(ErrorKind::Usage, "times_one_minus needs a nonnegative q-power");
  if (is_zero()) return *this;
  NomeSeries r = *this;
  // Walk downwards so each source coefficient is read before it is updated.
  const int top = std::min(order_, low_ + static_cast<int>(coeffs_.size()) - 1 + k);
  r.coeffs_.resize(static_cast<std::size_t>(top - low_ + 1), LaurentPoly(nvars_));
  for (int e = top; e >= low_ + k; --e) {
    const LaurentPoly& src = coeff(e - k);
    if (src.is_zero()) continue;
    r.coeffs_[static_cast<std::size_t>(e - low_)] -= src * c;
  }
  r.normalize();
  return r;
}

NomeSeries NomeSeries::substitute(int var, const Rational& value) const {
  std::vector<LaurentPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.substitute(var, value));
  return from_coeffs(nvars_ - 1, low_, order_, std::move(out));
}

NomeSeries NomeSeries::remap(int new_nvars, std::span<const int> map) const {
  std::vector<LaurentPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.remap(new_nvars, map));
  return from_coeffs(new_nvars, low_, order_, std::move(out));
}

std::string NomeSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << coeffs_[i].to_string() << ")*q^" << (low_ + static_cast<int>(i));
  }
  if (first) out << "0";
  out << " + O(q^" << (order_ + 1) << ")";
  return out.str();
}

NomeSeries series_invert_unit(const NomeSeries& a) {
  if (a.is_zero() || a.low() != 0 || !a.coeff(0).is_constant()) {
    fail(ErrorKind::Invert, "series is not a unit (needs a nonzero constant q^0 coefficient)");
  }
  const int nvars = a.nvars();
  const int order = a.order();
  const Rational inv0 = Rational(1) / a.coeff(0).constant_term();
  std::vector<LaurentPoly> b;
  b.reserve(static_cast<std::size_t>(order + 1));
  b.push_back(LaurentPoly::constant(nvars, inv0));
  // b_k = -inv0 * sum_{i=1..k} a_i b_{k-i}
  for (int k = 1; k <= order; ++k) {
    LaurentPoly acc(nvars);
    for (int i = 1; i <= k; ++i) {
      const LaurentPoly& ai = a.coeff(i);
      if (ai.is_zero()) continue;
      acc.add_product(ai, b[static_cast<std::size_t>(k - i)]);
    }
    b.push_back(acc * (-inv0));
  }
  return NomeSeries::from_coeffs(nvars, 0, order, std::move(b));
}

Verdict series_equal(const NomeSeries& a, const NomeSeries& b, int order) {
  if (order > a.order() || order > b.order()) {
    fail(ErrorKind::Usage, "comparison order " + std::to_string(order) +
                               " exceeds a truncation order (" + std::to_string(a.order()) + ", " +
                               std::to_string(b.order()) + ")");
  }
  if (a.nvars() != b.nvars()) fail(ErrorKind::Usage, "series variable count mismatch");
  Verdict v;
  for (int e = std::min(a.low(), b.low()); e <= order; ++e) {
    const LaurentPoly& ca = a.coeff(e);
    const LaurentPoly& cb = b.coeff(e);
    if (ca == cb) continue;
    const LaurentPoly diff = ca - cb;
    const Exponents& first = diff.terms().front().exps;
    v.equal = false;
    v.first_diff = Mismatch{e, first.to_vector(a.nvars()), ca.coefficient(first), cb.coefficient(first)};
    return v;
  }
  return v;
}

}  // namespace thetadet
