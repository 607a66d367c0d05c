// Exact Laurent polynomials in one variable q over the rationals, and the
// quantum combinatorics built from them ([n], [n]!, quantum binomials).
// All arithmetic is exact; there is no floating point anywhere in this type.

#pragma once

#include <gmpxx.h>

#include <map>
#include <ostream>
#include <optional>
#include <stdexcept>
#include <string>

namespace qkt {

/// Raised when an exactness invariant is violated (signals an arithmetic bug,
/// not bad user input).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Raised on invalid user input (bad graph, bad vertex, out-of-range args).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sparse Laurent polynomial in q with exact rational coefficients.
/// Stored as exponent -> coefficient with no zero coefficients kept.
class QLaurent {
 public:
  using CoeffMap = std::map<long, mpq_class>;

  QLaurent() = default;
  QLaurent(int n) { setTerm(0, mpq_class(n)); }
  QLaurent(long n) { setTerm(0, mpq_class(static_cast<long>(n))); }
  explicit QLaurent(const mpq_class& c) { setTerm(0, c); }

  /// c * q^e
  static QLaurent term(const mpq_class& c, long e) {
    QLaurent r;
    r.setTerm(e, c);
    return r;
  }
  static QLaurent q(long e = 1) { return term(1, e); }

  bool isZero() const { return coeffs_.empty(); }
  bool isOne() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
           coeffs_.begin()->second == 1;
  }
  const CoeffMap& coeffs() const { return coeffs_; }

  /// Lowest/highest exponent; only valid on nonzero polynomials.
  long minExp() const;
  long maxExp() const;
  mpq_class coeff(long e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? mpq_class(0) : it->second;
  }
  mpq_class leadingCoeff() const;

  QLaurent operator-() const;
  QLaurent& operator+=(const QLaurent& o);
  QLaurent& operator-=(const QLaurent& o);
  QLaurent& operator*=(const QLaurent& o);
  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
  friend bool operator==(const QLaurent& a, const QLaurent& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const QLaurent& a, const QLaurent& b) {
    return !(a == b);
  }

  /// Multiply by c * q^e.
  QLaurent shifted(long e) const;
  QLaurent scaled(const mpq_class& c) const;

  /// The involution q -> q^{-1}.
  QLaurent bar() const;

  /// Exact evaluation at a rational point.
  mpq_class eval(const mpq_class& x) const;

  /// Exact division; returns nullopt when the division is not exact.
  std::optional<QLaurent> divideExact(const QLaurent& d) const;

  /// Canonical text form: terms by descending exponent, e.g. "q^2 + 2 + q^-2".
  std::string str() const;
  static QLaurent parse(const std::string& text);

  void setTerm(long e, const mpq_class& c) {
    if (c == 0)
      coeffs_.erase(e);
    else
      coeffs_[e] = c;
  }

 private:
  CoeffMap coeffs_;
};

/// Quantum integer [n] = (q^n - q^{-n}) / (q - q^{-1}); [0] = 0, [-n] = -[n].
QLaurent qint(long n);

/// Quantum factorial [n]! = [n][n-1]...[1].
QLaurent qfactorial(long n);

/// Quantum binomial [n]! / ([k]! [n-k]!), computed by exact division.
/// Requires 0 <= k <= n; the division is asserted exact.
QLaurent qbinom(long n, long k);

/// Symmetric graded class of projective n-space; n = -1 (empty space) gives 0,
/// otherwise qint(n + 1).
QLaurent cohomologyClass(long n);

/// Fraction of Laurent polynomials, kept in a canonical reduced form:
/// gcd(num, den) = 1, den has minimal exponent 0 and leading coefficient 1.
/// Equality of canonical forms is therefore plain componentwise equality.
class QFraction {
 public:
  QFraction() : num_(), den_(1) {}
  QFraction(int n) : num_(n), den_(1) {}
  QFraction(long n) : num_(n), den_(1) {}
  QFraction(const QLaurent& p) : num_(p), den_(1) {}
  QFraction(const QLaurent& num, const QLaurent& den);

  const QLaurent& num() const { return num_; }
  const QLaurent& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }
  bool isLaurent() const { return den_.isOne(); }

  QFraction operator-() const;
  QFraction& operator+=(const QFraction& o);
  QFraction& operator-=(const QFraction& o);
  QFraction& operator*=(const QFraction& o);
  QFraction& operator/=(const QFraction& o);
  friend QFraction operator+(QFraction a, const QFraction& b) { return a += b; }
  friend QFraction operator-(QFraction a, const QFraction& b) { return a -= b; }
  friend QFraction operator*(QFraction a, const QFraction& b) { return a *= b; }
  friend QFraction operator/(QFraction a, const QFraction& b) { return a /= b; }
  friend bool operator==(const QFraction& a, const QFraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const QFraction& a, const QFraction& b) {
    return !(a == b);
  }

  QFraction inverse() const;
  mpq_class eval(const mpq_class& x) const;

  /// "(num)/(den)" when the denominator is nontrivial, plain Laurent text
  /// otherwise.
  std::string str() const;
  static QFraction parse(const std::string& text);

 private:
  void reduce();
  QLaurent num_, den_;
};

/// gcd in Q[q, q^{-1}], normalized to minimal exponent 0 and leading
/// coefficient 1. gcd(0, 0) = 0.
QLaurent laurentGcd(const QLaurent& a, const QLaurent& b);

inline std::ostream& operator<<(std::ostream& os, const QLaurent& p) {
  return os << p.str();
}
inline std::ostream& operator<<(std::ostream& os, const QFraction& f) {
  return os << f.str();
}

}  // namespace qkt
