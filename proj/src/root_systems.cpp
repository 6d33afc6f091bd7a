#include "thetadet/root_systems.hpp"

#include "thetadet/error.hpp"
#include "thetadet/sampling.hpp"

namespace thetadet {

namespace {

Mono x_(int i, int e = 1) { return Mono::var(i, e); }

// prod_{i<j} x_i^{-1} theta(x_i x_j^{+-})
std::vector<Expr> pair_factors(const std::vector<int>& x) {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      out.push_back(mono(x_(x[i], -1)));
      out.push_back(theta_pm(x_(x[i]), x_(x[j])));
    }
  }
  return out;
}

// The family-specific single-variable factor of W_R and of the factorized
// R theta functions.
Expr single_factor(Family f, const Mono& x) {
  switch (f) {
    case Family::A:
    case Family::D:
      return product({});
    case Family::B:
      return theta(x);
    case Family::Bvee:
      return x.inverse() * theta(x.pow(2), 4);
    case Family::C:
      return x.inverse() * theta(x.pow(2));
    case Family::Cvee:
      return theta(x, 1);
    case Family::BC:
      return theta(x) * theta(x.pow(2) * Mono::q(2), 4);
  }
  fail(ErrorKind::Internal, "unknown family");
}

Mono prod_of(const std::vector<Mono>& ms) {
  Mono r;
  for (const auto& m : ms) r = r * m;
  return r;
}

}  // namespace

const std::vector<Family>& all_families() {
  static const std::vector<Family> f{Family::A, Family::B, Family::Bvee, Family::C,
                                     Family::Cvee, Family::BC, Family::D};
  return f;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::Bvee: return "Bvee";
    case Family::C: return "C";
    case Family::Cvee: return "Cvee";
    case Family::BC: return "BC";
    case Family::D: return "D";
  }
  fail(ErrorKind::Internal, "unknown family");
}

Family parse_family(const std::string& name) {
  for (Family f : all_families()) {
    if (family_name(f) == name) return f;
  }
  fail(ErrorKind::Usage, "unknown family '" + name + "' (expected A, B, Bvee, C, Cvee, BC or D)");
}

Expr w_expr(Family f, const std::vector<int>& x) {
  std::vector<Expr> factors;
  if (f == Family::A) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        factors.push_back(mono(x_(x[j])));
        factors.push_back(theta(x_(x[i]) / x_(x[j])));
      }
    }
    return product(std::move(factors));
  }
  for (int xi : x) factors.push_back(single_factor(f, x_(xi)));
  for (auto& e : pair_factors(x)) factors.push_back(std::move(e));
  return product(std::move(factors));
}

NomeSeries macdonald_denominator(Family f, int n, int order) {
  if (n < 1) fail(ErrorKind::Usage, "n must be >= 1");
  std::vector<int> x;
  for (int i = 0; i < n; ++i) x.push_back(i);
  ExactEvaluator ev(std::vector<std::optional<ExactValue>>(static_cast<std::size_t>(n)));
  return ev.eval(w_expr(f, x), order);
}

LaurentPoly weyl_denominator_product(Family classical, int n) {
  if (n < 1) fail(ErrorKind::Usage, "n must be >= 1");
  auto var = [&](int i, int e = 1) { return LaurentPoly::variable(n, i, e); };
  const LaurentPoly one = LaurentPoly::constant(n, 1);
  LaurentPoly r = one;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      r = r * (var(j) - var(i));
      if (classical != Family::A) r = r * (one - var(i) * var(j));
    }
  }
  switch (classical) {
    case Family::A:
      return r;
    case Family::B:
      for (int i = 0; i < n; ++i) r = r * var(i, 1 - n) * (one - var(i));
      return r;
    case Family::C:
      for (int i = 0; i < n; ++i) r = r * var(i, -n) * (one - var(i, 2));
      return r;
    case Family::D:
      for (int i = 0; i < n; ++i) r = r * var(i, 1 - n);
      return r * Rational(2);
    default:
      fail(ErrorKind::Usage, "classical Weyl denominators exist for A, B, C and D only");
  }
}

Expr weyl_determinant(Family classical, const std::vector<int>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Expr> m;
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int xi = x[static_cast<std::size_t>(i)];
      switch (classical) {
        case Family::A:
          m.push_back(mono(x_(xi, j - 1)));
          break;
        case Family::B:
          m.push_back(mono(x_(xi, j - n)) - mono(x_(xi, n + 1 - j)));
          break;
        case Family::C:
          m.push_back(mono(x_(xi, j - n - 1)) - mono(x_(xi, n + 1 - j)));
          break;
        case Family::D:
          m.push_back(mono(x_(xi, j - n)) + mono(x_(xi, n - j)));
          break;
        default:
          fail(ErrorKind::Usage, "classical Weyl determinants exist for A, B, C and D only");
      }
    }
  }
  return det(n, std::move(m));
}

std::pair<Family, Rational> classical_reduction(Family f) {
  switch (f) {
    case Family::A: return {Family::A, 1};
    case Family::B: return {Family::B, 1};
    case Family::Bvee: return {Family::C, 1};
    case Family::C: return {Family::C, 1};
    case Family::Cvee: return {Family::B, 1};
    case Family::BC: return {Family::B, 1};
    case Family::D: return {Family::D, make_rational(1, 2)};
  }
  fail(ErrorKind::Internal, "unknown family");
}

Expr build_r_theta(const RThetaSpec& spec, int x) {
  if (spec.n < 1) fail(ErrorKind::Usage, "n must be >= 1");
  const Mono X = x_(x);
  std::vector<Expr> factors{mono(spec.constant)};
  if (spec.family == Family::A) {
    if (!spec.norm) fail(ErrorKind::Usage, "an A family theta function needs a norm");
    if (static_cast<int>(spec.b.size()) != spec.n) {
      fail(ErrorKind::Usage, "an A_{n-1} theta function needs n factors");
    }
    if (!(prod_of(spec.b) == *spec.norm)) {
      fail(ErrorKind::Constraint, "product of the factors differs from the norm");
    }
    for (const auto& b : spec.b) factors.push_back(theta(b * X));
    return product(std::move(factors));
  }
  if (static_cast<int>(spec.b.size()) != spec.n - 1) {
    fail(ErrorKind::Usage, family_name(spec.family) + "_n theta functions need n - 1 factors");
  }
  factors.push_back(single_factor(spec.family, X));
  for (const auto& b : spec.b) factors.push_back(theta_pm(b, X));
  return product(std::move(factors));
}

Expr lift_from_g(const Expr& g, Family f, int x) {
  const Expr reflected = substitute(g, x, x_(x, -1));
  switch (f) {
    case Family::B:
    case Family::Cvee:
    case Family::BC:
      return g - x_(x) * reflected;
    case Family::Bvee:
    case Family::C:
      return g - reflected;
    case Family::D:
      return g + reflected;
    case Family::A:
      break;
  }
  fail(ErrorKind::Usage, "no lift rule for family A");
}

Mono quasi_period_factor(Family f, int n, int x, const std::optional<Mono>& norm) {
  switch (f) {
    case Family::A: {
      if (!norm) fail(ErrorKind::Usage, "family A needs a norm");
      const Mono sign = Mono::constant(n % 2 == 0 ? 1 : -1);
      return sign * norm->inverse() * x_(x, -n);
    }
    case Family::B: return -(Mono::q(-2 * (n - 1)) * x_(x, -(2 * n - 1)));
    case Family::Bvee: return -(Mono::q(-2 * n) * x_(x, -2 * n));
    case Family::C: return Mono::q(-2 * (n + 1)) * x_(x, -(2 * n + 2));
    case Family::Cvee: return Mono::q(-(2 * n - 1)) * x_(x, -2 * n);
    case Family::BC: return Mono::q(-2 * n) * x_(x, -(2 * n + 1));
    case Family::D: return Mono::q(-2 * (n - 1)) * x_(x, -(2 * n - 2));
  }
  fail(ErrorKind::Internal, "unknown family");
}

Mono inversion_factor(Family f, int x) {
  switch (f) {
    case Family::B:
    case Family::Cvee:
    case Family::BC:
      return -x_(x, -1);
    case Family::Bvee:
    case Family::C:
      return Mono::constant(-1);
    case Family::D:
      return Mono::constant(1);
    case Family::A:
      break;
  }
  fail(ErrorKind::Usage, "family A has no inversion equation");
}

Verdict check_r_theta(const Expr& f, int x, std::vector<std::optional<ExactValue>> values,
                      const RThetaCheck& check) {
  if (x < 0 || static_cast<std::size_t>(x) >= values.size()) fail(ErrorKind::Usage, "variable out of range");
  std::mt19937_64 rng(check.seed);
  const Expr shifted = substitute(f, x, x_(x) * Mono::q(2));
  const Expr shifted_rhs = quasi_period_factor(check.family, check.n, x, check.norm) * f;
  std::optional<Expr> inverted, inverted_rhs;
  if (check.family != Family::A) {
    inverted = substitute(f, x, x_(x, -1));
    inverted_rhs = inversion_factor(check.family, x) * f;
  }
  for (int t = 0; t < check.trials; ++t) {
    const Rational x0 = sample_rational(rng);
    values[static_cast<std::size_t>(x)] = ExactValue{x0, 0};
    ExactEvaluator ev(values);
    Verdict v = series_equal(ev.eval(shifted, check.order), ev.eval(shifted_rhs, check.order), check.order);
    if (!v.equal) {
      v.note = "quasi-periodicity fails at x = " + x0.get_str();
      return v;
    }
    if (inverted) {
      v = series_equal(ev.eval(*inverted, check.order), ev.eval(*inverted_rhs, check.order), check.order);
      if (!v.equal) {
        v.note = "inversion fails at x = " + x0.get_str();
        return v;
      }
    }
  }
  return Verdict{};
}

Mono random_q_monomial(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(-2, 2);
  return Mono{sample_rational(rng), {}, k(rng)};
}

RThetaSpec random_r_theta_spec(Family f, int n, std::mt19937_64& rng) {
  RThetaSpec spec;
  spec.family = f;
  spec.n = n;
  spec.constant = Mono::constant(sample_rational(rng));
  const int count = f == Family::A ? n : n - 1;
  for (int k = 0; k < count; ++k) spec.b.push_back(random_q_monomial(rng));
  if (f == Family::A) {
    spec.norm = random_q_monomial(rng);
    spec.b.back() = Mono();
    spec.b.back() = *spec.norm / prod_of(spec.b);
  }
  return spec;
}

Expr random_lift_seed(Family f, int n, int x, std::mt19937_64& rng) {
  int count = 0;
  Mono target;
  switch (f) {
    case Family::B: count = 2 * n - 1; target = Mono::q(2 * (n - 1)); break;
    case Family::Bvee: count = 2 * n; target = -Mono::q(2 * n); break;
    case Family::C: count = 2 * n + 2; target = Mono::q(2 * (n + 1)); break;
    case Family::Cvee: count = 2 * n; target = Mono::q(2 * n - 1); break;
    case Family::BC: count = 2 * n + 1; target = -Mono::q(2 * n); break;
    case Family::D: count = 2 * n - 2; target = Mono::q(2 * (n - 1)); break;
    case Family::A: fail(ErrorKind::Usage, "no lift rule for family A");
  }
  std::vector<Mono> b;
  for (int k = 0; k + 1 < count; ++k) b.push_back(random_q_monomial(rng));
  if (count > 0) b.push_back(target / prod_of(b));
  std::vector<Expr> factors{constant(sample_rational(rng))};
  for (const auto& bk : b) factors.push_back(theta(bk * x_(x)));
  return product(std::move(factors));
}

}  // namespace thetadet
