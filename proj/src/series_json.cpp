#include "thetadet/series_json.hpp"

#include "thetadet/error.hpp"

namespace thetadet {

using nlohmann::json;

json series_to_json(const NomeSeries& s) {
  json terms = json::array();
  for (int e = s.low(); e <= s.order(); ++e) {
    for (const auto& t : s.coeff(e).terms()) {
      terms.push_back({{"q", e},
                       {"exps", t.exps.to_vector(s.nvars())},
                       {"num", t.coeff.get_num().get_str()},
                       {"den", t.coeff.get_den().get_str()}});
    }
  }
  // low is reported as stored: the first nonzero exponent, or order+1 if zero.
  return {{"nvars", s.nvars()}, {"low", s.low()}, {"order", s.order()}, {"terms", terms}};
}

NomeSeries series_from_json(const json& j) {
  try {
    const int nvars = j.at("nvars").get<int>();
    const int low = j.at("low").get<int>();
    const int order = j.at("order").get<int>();
    const int base = std::min(low, order + 1);
    std::vector<LaurentPoly> coeffs(static_cast<std::size_t>(std::max(0, order - base + 1)),
                                    LaurentPoly(nvars));
    for (const auto& t : j.at("terms")) {
      const int q = t.at("q").get<int>();
      if (q < base || q > order) fail(ErrorKind::Usage, "series term outside [low, order]");
      const auto exps = t.at("exps").get<std::vector<int>>();
      if (static_cast<int>(exps.size()) != nvars) fail(ErrorKind::Usage, "exponent vector length");
      const Rational c = make_rational(t.at("num").get<std::string>(), t.at("den").get<std::string>());
      auto& slot = coeffs[static_cast<std::size_t>(q - base)];
      slot += LaurentPoly::monomial(nvars, c, Exponents(exps));
    }
    return NomeSeries::from_coeffs(nvars, base, order, std::move(coeffs));
  } catch (const json::exception& e) {
    fail(ErrorKind::Usage, std::string("malformed series JSON: ") + e.what());
  }
}

json verdict_to_json(const Verdict& v) {
  json diff = nullptr;
  if (v.first_diff) {
    const auto& d = *v.first_diff;
    diff = {{"q", d.qexp},
            {"exps", d.exps},
            {"lhs", {{"num", d.lhs.get_num().get_str()}, {"den", d.lhs.get_den().get_str()}}},
            {"rhs", {{"num", d.rhs.get_num().get_str()}, {"den", d.rhs.get_den().get_str()}}}};
  }
  json out = {{"status", v.equal ? "pass" : "fail"}, {"first_diff", diff}};
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

}  // namespace thetadet
