#include "qkt/qlaurent.hpp"

#include <cctype>
#include <sstream>

namespace qkt {

long QLaurent::minExp() const {
  if (isZero()) throw InternalError("minExp of zero polynomial");
  return coeffs_.begin()->first;
}

long QLaurent::maxExp() const {
  if (isZero()) throw InternalError("maxExp of zero polynomial");
  return coeffs_.rbegin()->first;
}

mpq_class QLaurent::leadingCoeff() const {
  if (isZero()) throw InternalError("leadingCoeff of zero polynomial");
  return coeffs_.rbegin()->second;
}

QLaurent QLaurent::operator-() const {
  QLaurent r;
  for (auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
  return r;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
  for (auto& [e, c] : o.coeffs_) {
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      coeffs_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) {
  for (auto& [e, c] : o.coeffs_) {
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      coeffs_.emplace(e, -c);
    } else {
      it->second -= c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  QLaurent r;
  for (auto& [e1, c1] : a.coeffs_)
    for (auto& [e2, c2] : b.coeffs_) {
      long e = e1 + e2;
      auto it = r.coeffs_.find(e);
      if (it == r.coeffs_.end()) {
        mpq_class p = c1 * c2;
        if (p != 0) r.coeffs_.emplace(e, std::move(p));
      } else {
        it->second += c1 * c2;
        if (it->second == 0) r.coeffs_.erase(it);
      }
    }
  return r;
}

QLaurent& QLaurent::operator*=(const QLaurent& o) {
  *this = *this * o;
  return *this;
}

QLaurent QLaurent::shifted(long e) const {
  QLaurent r;
  for (auto& [e1, c] : coeffs_) r.coeffs_[e1 + e] = c;
  return r;
}

QLaurent QLaurent::scaled(const mpq_class& c) const {
  QLaurent r;
  if (c == 0) return r;
  for (auto& [e, c1] : coeffs_) r.coeffs_[e] = c1 * c;
  return r;
}

QLaurent QLaurent::bar() const {
  QLaurent r;
  for (auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
  return r;
}

mpq_class QLaurent::eval(const mpq_class& x) const {
  if (x == 0) throw ValidationError("cannot evaluate a Laurent polynomial at 0");
  mpq_class acc = 0;
  for (auto& [e, c] : coeffs_) {
    mpq_class p = 1;
    long n = e >= 0 ? e : -e;
    for (long i = 0; i < n; ++i) p *= x;
    if (e < 0) p = 1 / p;
    acc += c * p;
  }
  return acc;
}

std::optional<QLaurent> QLaurent::divideExact(const QLaurent& d) const {
  if (d.isZero()) throw InternalError("division by zero polynomial");
  if (isZero()) return QLaurent();
  QLaurent rem = *this;
  QLaurent quot;
  const long dmax = d.maxExp();
  const mpq_class dlead = d.leadingCoeff();
  // Laurent division is ordinary division up to a power of q, so divide from
  // the top exponent down and stop when the remainder drops below.
  while (!rem.isZero() && rem.maxExp() - rem.minExp() >= dmax - d.minExp()) {
    long e = rem.maxExp() - dmax;
    mpq_class c = rem.leadingCoeff() / dlead;
    quot.setTerm(e, c);
    rem -= d.shifted(e).scaled(c);
  }
  if (!rem.isZero()) return std::nullopt;
  return quot;
}

std::string QLaurent::str() const {
  if (isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    mpq_class c = it->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    long e = it->first;
    if (e == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << " ";
      os << "q";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {

void skipSpace(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// coefficient := integer [ "/" integer ]
bool parseRational(const std::string& s, size_t& i, mpq_class& out) {
  size_t j = i;
  if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
  size_t digits = j;
  while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
  if (j == digits) return false;
  if (j < s.size() && s[j] == '/') {
    ++j;
    size_t d2 = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == d2) return false;
  }
  out = mpq_class(s.substr(i, j - i));
  out.canonicalize();
  i = j;
  return true;
}

bool parseExponent(const std::string& s, size_t& i, long& out) {
  size_t j = i;
  if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
  size_t digits = j;
  while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
  if (j == digits) return false;
  out = std::stol(s.substr(i, j - i));
  i = j;
  return true;
}

}  // namespace

QLaurent QLaurent::parse(const std::string& text) {
  QLaurent result;
  size_t i = 0;
  skipSpace(text, i);
  if (i >= text.size()) throw ValidationError("empty polynomial text");
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skipSpace(text, i);
    if (!first || text[i] == '+' || text[i] == '-') {
      if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
        throw ValidationError("expected '+' or '-' in polynomial: " + text);
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skipSpace(text, i);
    }
    first = false;
    mpq_class coef = 1;
    bool haveCoef = parseRational(text, i, coef);
    skipSpace(text, i);
    if (i < text.size() && text[i] == '*') {
      ++i;
      skipSpace(text, i);
    }
    long exp = 0;
    if (i < text.size() && text[i] == 'q') {
      ++i;
      exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (!parseExponent(text, i, exp))
          throw ValidationError("bad exponent in polynomial: " + text);
      }
    } else if (!haveCoef) {
      throw ValidationError("bad term in polynomial: " + text);
    }
    result += QLaurent::term(sign * coef, exp);
    skipSpace(text, i);
  }
  return result;
}

QLaurent qint(long n) {
  if (n < 0) return -qint(-n);
  QLaurent r;
  for (long e = n - 1; e >= 1 - n; e -= 2) r.setTerm(e, 1);
  return r;
}

QLaurent qfactorial(long n) {
  if (n < 0) throw ValidationError("quantum factorial of a negative integer");
  QLaurent r(1);
  for (long k = 2; k <= n; ++k) r *= qint(k);
  return r;
}

QLaurent qbinom(long n, long k) {
  if (k < 0 || k > n)
    throw ValidationError("quantum binomial requires 0 <= k <= n");
  QLaurent num = qfactorial(n);
  QLaurent den = qfactorial(k) * qfactorial(n - k);
  auto q = num.divideExact(den);
  if (!q) throw InternalError("quantum binomial division was not exact");
  return *q;
}

QLaurent cohomologyClass(long n) {
  if (n < -1)
    throw ValidationError("projective space class requires n >= -1");
  return qint(n + 1);
}

QLaurent laurentGcd(const QLaurent& a, const QLaurent& b) {
  auto normalize = [](const QLaurent& p) {
    if (p.isZero()) return p;
    return p.shifted(-p.minExp()).scaled(1 / p.leadingCoeff());
  };
  QLaurent x = normalize(a), y = normalize(b);
  while (!y.isZero()) {
    // Remainder of x by y as ordinary polynomials (both have minExp 0).
    QLaurent rem = x;
    long dmax = y.maxExp();
    while (!rem.isZero() && rem.maxExp() >= dmax) {
      long e = rem.maxExp() - dmax;
      mpq_class c = rem.leadingCoeff() / y.leadingCoeff();
      rem -= y.shifted(e).scaled(c);
    }
    x = y;
    y = normalize(rem);
  }
  return normalize(x);
}

QFraction::QFraction(const QLaurent& num, const QLaurent& den)
    : num_(num), den_(den) {
  if (den_.isZero()) throw InternalError("fraction with zero denominator");
  reduce();
}

void QFraction::reduce() {
  if (num_.isZero()) {
    den_ = QLaurent(1);
    return;
  }
  QLaurent g = laurentGcd(num_, den_);
  if (!g.isOne()) {
    auto qn = num_.divideExact(g);
    auto qd = den_.divideExact(g);
    if (!qn || !qd) throw InternalError("gcd does not divide its arguments");
    num_ = *qn;
    den_ = *qd;
  }
  // Canonical scaling: denominator gets minimal exponent 0, leading coeff 1.
  long sh = den_.minExp();
  mpq_class lc = den_.leadingCoeff();
  den_ = den_.shifted(-sh).scaled(1 / lc);
  num_ = num_.shifted(-sh).scaled(1 / lc);
}

QFraction QFraction::operator-() const {
  QFraction r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

QFraction& QFraction::operator+=(const QFraction& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  reduce();
  return *this;
}

QFraction& QFraction::operator-=(const QFraction& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ = den_ * o.den_;
  reduce();
  return *this;
}

QFraction& QFraction::operator*=(const QFraction& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  reduce();
  return *this;
}

QFraction& QFraction::operator/=(const QFraction& o) {
  if (o.isZero()) throw InternalError("division by zero fraction");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  reduce();
  return *this;
}

QFraction QFraction::inverse() const {
  if (isZero()) throw InternalError("inverse of zero fraction");
  QFraction r;
  r.num_ = den_;
  r.den_ = num_;
  r.reduce();
  return r;
}

mpq_class QFraction::eval(const mpq_class& x) const {
  mpq_class d = den_.eval(x);
  if (d == 0) throw InternalError("fraction denominator vanishes at sample point");
  return num_.eval(x) / d;
}

std::string QFraction::str() const {
  if (isLaurent()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

QFraction QFraction::parse(const std::string& text) {
  size_t i = 0;
  skipSpace(text, i);
  if (i < text.size() && text[i] == '(') {
    // "(num)/(den)"
    int depth = 0;
    size_t start = i;
    size_t close = std::string::npos;
    for (size_t j = i; j < text.size(); ++j) {
      if (text[j] == '(') ++depth;
      if (text[j] == ')') {
        --depth;
        if (depth == 0) {
          close = j;
          break;
        }
      }
    }
    if (close == std::string::npos)
      throw ValidationError("unbalanced parentheses in fraction: " + text);
    std::string numText = text.substr(start + 1, close - start - 1);
    size_t j = close + 1;
    skipSpace(text, j);
    if (j < text.size() && text[j] == '/') {
      ++j;
      skipSpace(text, j);
      if (j >= text.size() || text[j] != '(')
        throw ValidationError("expected '(' after '/': " + text);
      size_t close2 = text.rfind(')');
      if (close2 == std::string::npos || close2 <= j)
        throw ValidationError("unbalanced parentheses in fraction: " + text);
      std::string denText = text.substr(j + 1, close2 - j - 1);
      return QFraction(QLaurent::parse(numText), QLaurent::parse(denText));
    }
  }
  return QFraction(QLaurent::parse(text));
}

}  // namespace qkt
