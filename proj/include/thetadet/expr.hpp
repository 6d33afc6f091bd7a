#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetadet/theta.hpp"

namespace thetadet {

// Named variables of an identity. Expressions refer to variables by index.
class VarSpace {
 public:
  int add(const std::string& name);
  // Adds name1..name_count and returns their indices.
  std::vector<int> add_family(const std::string& name, int count);
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  std::optional<int> find(const std::string& name) const;

 private:
  std::vector<std::string> names_;
};

// c * prod v_i^e_i * q^qpow with sparse variable exponents.
struct Mono {
  Rational coeff{1};
  std::vector<std::pair<int, int>> vars;  // sorted by index, exponents nonzero
  int qpow = 0;

  static Mono constant(const Rational& c) { return Mono{c, {}, 0}; }
  static Mono var(int index, int exponent = 1);
  static Mono q(int k) { return Mono{Rational(1), {}, k}; }
  // Product of the given variables.
  static Mono prod(const std::vector<int>& indices, int exponent = 1);

  Mono operator*(const Mono& other) const;
  Mono operator/(const Mono& other) const { return *this * other.inverse(); }
  Mono operator-() const { return Mono{-coeff, vars, qpow}; }
  Mono inverse() const;
  Mono pow(int k) const;
  int exponent(int index) const;
  bool operator==(const Mono&) const = default;
};

Mono operator*(const Rational& c, const Mono& m);

enum class NodeKind { Mono, Theta, ThetaSum, Poch, Sum, Product, Det };

struct Node;

// Immutable expression handle. The empty-children Product is 1 and the
// empty-children Sum is 0.
class Expr {
 public:
  Expr();
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }
  NodeKind kind() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Node {
  NodeKind kind = NodeKind::Product;
  Mono mono;                    // Mono leaf, or theta/Pochhammer argument
  int step = 2;                 // nome q^step for Theta, ThetaSum, Poch
  int dim = 0;                  // Det size
  std::vector<Expr> children;   // Sum/Product operands or Det entries row-major
};

Expr mono(const Mono& m);
Expr constant(const Rational& c);
Expr theta(const Mono& arg, int step = 2);
// Same function as theta() but expanded through the triple product sum.
Expr theta_sum(const Mono& arg, int step = 2);
Expr poch(const Mono& arg, int step = 2);
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr det(int n, std::vector<Expr> entries);
Expr power(const Expr& e, int k);
// theta(x y) theta(x / y)
Expr theta_pm(const Mono& x, const Mono& y, int step = 2);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator*(const Mono& m, const Expr& e);

// Replace variable `index` by the monomial `value` everywhere.
Expr substitute(const Expr& e, int index, const Mono& value);

// Exact point value c * q^qpow for a variable.
struct ExactValue {
  Rational coeff{1};
  int qpow = 0;
};

// Evaluates expressions to NomeSeries. Variables with a value are replaced by
// it; the others stay formal and are numbered in increasing index order.
// Theta expansions are cached per evaluator.
class ExactEvaluator {
 public:
  explicit ExactEvaluator(std::vector<std::optional<ExactValue>> values);

  int nvars() const { return nformal_; }
  // Variable index of each formal slot.
  const std::vector<int>& formal_vars() const { return formal_; }

  MonomialArg arg(const Mono& m) const;
  int min_qexp(const Expr& e);
  // All coefficients up to q^order are exact; the result has order() == order.
  NomeSeries eval(const Expr& e, int order);

  // A description of the first vanishing factor (theta or Pochhammer at a
  // zero, or a sum of constants that cancels), if any.
  std::optional<std::string> degeneracy(const Expr& e);

 private:
  NomeSeries eval_node(const Node& n, int order);
  NomeSeries cached(NodeKind kind, const MonomialArg& a, int step, int order);

  std::vector<std::optional<ExactValue>> values_;
  std::vector<int> formal_;
  std::vector<int> slot_;
  int nformal_ = 0;

  struct Key {
    NodeKind kind;
    Rational coeff;
    Exponents exps;
    int qpow;
    int step;
    bool operator<(const Key& o) const;
  };
  std::map<Key, NomeSeries> cache_;
};

// Division-free determinant of an n x n matrix (row-major), 1 <= n <= 6.
NomeSeries det_division_free(const std::vector<NomeSeries>& entries, int n);

}  // namespace thetadet
