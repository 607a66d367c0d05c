// Exact multivariate Laurent arithmetic for the localization calculus, in two
// interchangeable flavors:
//
//  * EvalScalar -- a rational function represented by its exact values at a
//    fixed list of sample points (identity-testing mode). The point list is
//    arranged as m points followed by their coordinatewise inverses, so the
//    involution x -> 1/x, t -> 1/t is a half-swap of the value vector.
//
//  * FactoredRat -- a fully symbolic rational function: a sparse Laurent
//    polynomial numerator over a multiset of normalized polynomial
//    denominator factors. Denominators stay factored through products and
//    sums, which keeps the Euler-class bookkeeping cancellable without a
//    general multivariate gcd.

#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "qkt/qlaurent.hpp"

namespace qkt {

/// Exponent vector with trailing zeros trimmed, so monomials compare
/// independently of how many variables a context declares.
using Mono = std::vector<long>;

Mono monoMul(const Mono& a, const Mono& b);
Mono monoNeg(const Mono& a);
bool monoDivides(const Mono& a, const Mono& b);  // b - a componentwise >= 0?

/// Sparse multivariate Laurent polynomial over Q.
class MPoly {
 public:
  using TermMap = std::map<Mono, mpq_class>;

  MPoly() = default;
  MPoly(int n) { setTerm({}, n); }
  explicit MPoly(const mpq_class& c) { setTerm({}, c); }
  static MPoly monomial(const Mono& m, const mpq_class& c = 1) {
    MPoly p;
    p.setTerm(m, c);
    return p;
  }

  bool isZero() const { return terms_.empty(); }
  bool isOne() const;
  const TermMap& terms() const { return terms_; }
  void setTerm(Mono m, const mpq_class& c);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.terms_ == b.terms_;
  }
  /// Arbitrary total order so polynomials can key factor multisets.
  friend bool operator<(const MPoly& a, const MPoly& b) {
    return a.terms_ < b.terms_;
  }

  MPoly scaled(const mpq_class& c) const;
  MPoly shifted(const Mono& m) const;  // multiply by a monomial
  /// Negate every exponent (the involution x -> x^{-1}).
  MPoly dualed() const;

  /// Largest monomial in lex order (the leading term used for division).
  const Mono& leadMono() const;
  const mpq_class& leadCoeff() const;

  /// Componentwise minimum of all exponents: the monomial content.
  Mono contentMono() const;

  /// Exact division test; nullopt when not divisible.
  std::optional<MPoly> divideExact(const MPoly& d) const;

  mpq_class evalAt(const std::vector<mpq_class>& point) const;

  /// Terms in descending lex order, e.g. "x1^2 x2 t^-1 - 3".
  std::string str(const std::vector<std::string>& varNames) const;

 private:
  TermMap terms_;
};

/// Symbolic rational function with a factored denominator.
class FactoredRat {
 public:
  FactoredRat() = default;
  FactoredRat(int n) : num_(n) {}
  explicit FactoredRat(MPoly p) : num_(std::move(p)) {}

  static FactoredRat fromMonomial(const Mono& m, const mpq_class& c = 1) {
    return FactoredRat(MPoly::monomial(m, c));
  }

  const MPoly& num() const { return num_; }
  const std::map<MPoly, int>& denFactors() const { return den_; }
  bool isZero() const { return num_.isZero(); }

  FactoredRat operator-() const;
  FactoredRat& operator+=(const FactoredRat& o);
  FactoredRat& operator-=(const FactoredRat& o);
  FactoredRat& operator*=(const FactoredRat& o);
  FactoredRat& operator/=(const FactoredRat& o);
  friend FactoredRat operator+(FactoredRat a, const FactoredRat& b) {
    return a += b;
  }
  friend FactoredRat operator-(FactoredRat a, const FactoredRat& b) {
    return a -= b;
  }
  friend FactoredRat operator*(FactoredRat a, const FactoredRat& b) {
    return a *= b;
  }
  friend FactoredRat operator/(FactoredRat a, const FactoredRat& b) {
    return a /= b;
  }
  /// Exact cross-multiplied comparison.
  friend bool operator==(const FactoredRat& a, const FactoredRat& b);
  friend bool operator!=(const FactoredRat& a, const FactoredRat& b) {
    return !(a == b);
  }

  FactoredRat inverse() const;
  FactoredRat dualed() const;

  MPoly denExpanded() const;
  std::string str(const std::vector<std::string>& varNames) const;

  /// Divide den factor copies into the numerator wherever the division is
  /// exact.
  void reduce();

  /// Multiply by a polynomial pushed into the denominator (normalizing it).
  void divByPoly(const MPoly& p);

 private:
  MPoly num_;
  std::map<MPoly, int> den_;
};

/// Value-vector scalar for identity-testing mode. An empty value vector means
/// a constant broadcast to any arity.
class EvalScalar {
 public:
  EvalScalar() : cst_(0) {}
  EvalScalar(int n) : cst_(n) {}
  explicit EvalScalar(const mpq_class& c) : cst_(c) {}
  explicit EvalScalar(std::vector<mpq_class> vals) : vals_(std::move(vals)) {}

  bool isConstant() const { return vals_.empty(); }
  const std::vector<mpq_class>& values() const { return vals_; }
  const mpq_class& constant() const { return cst_; }
  mpq_class at(size_t i) const { return vals_.empty() ? cst_ : vals_.at(i); }
  size_t arity() const { return vals_.size(); }

  bool isZero() const;
  EvalScalar operator-() const;
  EvalScalar& operator+=(const EvalScalar& o);
  EvalScalar& operator-=(const EvalScalar& o);
  EvalScalar& operator*=(const EvalScalar& o);
  EvalScalar& operator/=(const EvalScalar& o);
  friend EvalScalar operator+(EvalScalar a, const EvalScalar& b) {
    return a += b;
  }
  friend EvalScalar operator-(EvalScalar a, const EvalScalar& b) {
    return a -= b;
  }
  friend EvalScalar operator*(EvalScalar a, const EvalScalar& b) {
    return a *= b;
  }
  friend EvalScalar operator/(EvalScalar a, const EvalScalar& b) {
    return a /= b;
  }
  friend bool operator==(const EvalScalar& a, const EvalScalar& b);
  friend bool operator!=(const EvalScalar& a, const EvalScalar& b) {
    return !(a == b);
  }

  /// Swap the two halves of the value vector (the x -> 1/x involution when
  /// the second half of the sample points inverts the first).
  EvalScalar halfSwapped() const;

  std::string str() const;

 private:
  mpq_class cst_;
  std::vector<mpq_class> vals_;
};

}  // namespace qkt
