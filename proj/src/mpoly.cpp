#include "qkt/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace qkt {

namespace {

void trim(Mono& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

Mono monoMul(const Mono& a, const Mono& b) {
  Mono r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Mono monoNeg(const Mono& a) {
  Mono r = a;
  for (auto& e : r) e = -e;
  return r;
}

bool monoDivides(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    long be = i < b.size() ? b[i] : 0;
    if (be < a[i]) return false;
  }
  return true;
}

bool MPoly::isOne() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() &&
         terms_.begin()->second == 1;
}

void MPoly::setTerm(Mono m, const mpq_class& c) {
  trim(m);
  if (c == 0)
    terms_.erase(m);
  else
    terms_[std::move(m)] = c;
}

MPoly MPoly::operator-() const {
  MPoly r;
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, -c);
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (auto& [m1, c1] : a.terms_)
    for (auto& [m2, c2] : b.terms_) {
      Mono m = monoMul(m1, m2);
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        mpq_class p = c1 * c2;
        if (p != 0) r.terms_.emplace(std::move(m), std::move(p));
      } else {
        it->second += c1 * c2;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  return r;
}

MPoly MPoly::scaled(const mpq_class& c) const {
  MPoly r;
  if (c == 0) return r;
  for (auto& [m, c1] : terms_) r.terms_[m] = c1 * c;
  return r;
}

MPoly MPoly::shifted(const Mono& m) const {
  MPoly r;
  for (auto& [m1, c] : terms_) r.terms_[monoMul(m1, m)] = c;
  return r;
}

MPoly MPoly::dualed() const {
  MPoly r;
  for (auto& [m, c] : terms_) r.terms_[monoNeg(m)] = c;
  return r;
}

const Mono& MPoly::leadMono() const {
  if (isZero()) throw InternalError("leading monomial of zero polynomial");
  return terms_.rbegin()->first;
}

const mpq_class& MPoly::leadCoeff() const {
  if (isZero()) throw InternalError("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

Mono MPoly::contentMono() const {
  if (isZero()) return {};
  size_t width = 0;
  for (auto& [m, c] : terms_) width = std::max(width, m.size());
  Mono content(width, 0);
  bool first = true;
  for (auto& [m, c] : terms_) {
    for (size_t i = 0; i < width; ++i) {
      long e = i < m.size() ? m[i] : 0;
      content[i] = first ? e : std::min(content[i], e);
    }
    first = false;
  }
  trim(content);
  return content;
}

std::optional<MPoly> MPoly::divideExact(const MPoly& d) const {
  if (d.isZero()) throw InternalError("division by zero polynomial");
  if (isZero()) return MPoly();
  // Normalize monomial content so the division runs over plain exponents.
  Mono cg = contentMono(), cd = d.contentMono();
  MPoly g = shifted(monoNeg(cg));
  MPoly f = d.shifted(monoNeg(cd));
  const Mono& lf = f.leadMono();
  const mpq_class& cf = f.leadCoeff();
  MPoly quot;
  while (!g.isZero()) {
    const Mono& lg = g.leadMono();
    if (!monoDivides(lf, lg)) return std::nullopt;
    Mono m = monoMul(lg, monoNeg(lf));
    mpq_class c = g.leadCoeff() / cf;
    quot.setTerm(m, c);
    g -= f * MPoly::monomial(m, c);
  }
  return quot.shifted(monoMul(cg, monoNeg(cd)));
}

mpq_class MPoly::evalAt(const std::vector<mpq_class>& point) const {
  mpq_class acc = 0;
  for (auto& [m, c] : terms_) {
    mpq_class t = c;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= point.size())
        throw InternalError("evaluation point has too few coordinates");
      if (point[i] == 0) throw InternalError("evaluation point coordinate is 0");
      mpq_class p = 1;
      long n = m[i] >= 0 ? m[i] : -m[i];
      for (long s = 0; s < n; ++s) p *= point[i];
      if (m[i] < 0) p = 1 / p;
      t *= p;
    }
    acc += t;
  }
  return acc;
}

std::string MPoly::str(const std::vector<std::string>& varNames) const {
  if (isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    mpq_class c = it->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    const Mono& m = it->first;
    bool wrote = false;
    std::ostringstream vars;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) vars << " ";
      wrote = true;
      vars << (i < varNames.size() ? varNames[i]
                                   : "x" + std::to_string(i + 1));
      if (m[i] != 1) vars << "^" << m[i];
    }
    if (!wrote) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << " ";
      os << vars.str();
    }
  }
  return os.str();
}

namespace {

// Canonical form of a denominator factor: content-free exponents and leading
// coefficient one; the peeled-off monomial and scalar go to the caller.
struct FactorParts {
  MPoly canonical;
  Mono mono;
  mpq_class scale;
};

FactorParts canonicalFactor(const MPoly& p) {
  if (p.isZero()) throw InternalError("zero denominator factor");
  FactorParts parts;
  parts.mono = p.contentMono();
  MPoly base = p.shifted(monoNeg(parts.mono));
  parts.scale = base.leadCoeff();
  parts.canonical = base.scaled(1 / parts.scale);
  return parts;
}

}  // namespace

FactoredRat FactoredRat::operator-() const {
  FactoredRat r = *this;
  r.num_ = -r.num_;
  return r;
}

void FactoredRat::reduce() {
  if (num_.isZero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = num_.divideExact(it->first);
      if (!q) break;
      num_ = *q;
      --it->second;
    }
    if (it->second == 0)
      it = den_.erase(it);
    else
      ++it;
  }
}

void FactoredRat::divByPoly(const MPoly& p) {
  FactorParts parts = canonicalFactor(p);
  num_ = num_.shifted(monoNeg(parts.mono)).scaled(1 / parts.scale);
  if (!parts.canonical.isOne()) den_[parts.canonical] += 1;
  reduce();
}

FactoredRat& FactoredRat::operator*=(const FactoredRat& o) {
  num_ = num_ * o.num_;
  for (auto& [f, k] : o.den_) den_[f] += k;
  reduce();
  return *this;
}

FactoredRat& FactoredRat::operator+=(const FactoredRat& o) {
  // Common denominator by factor-multiset max.
  MPoly mineExtra(1), theirsExtra(1);
  std::map<MPoly, int> common = den_;
  for (auto& [f, k] : o.den_) {
    int& c = common[f];
    c = std::max(c, k);
  }
  for (auto& [f, k] : common) {
    int have = 0, oHave = 0;
    if (auto it = den_.find(f); it != den_.end()) have = it->second;
    if (auto it = o.den_.find(f); it != o.den_.end()) oHave = it->second;
    for (int s = 0; s < k - have; ++s) mineExtra = mineExtra * f;
    for (int s = 0; s < k - oHave; ++s) theirsExtra = theirsExtra * f;
  }
  num_ = num_ * mineExtra + o.num_ * theirsExtra;
  den_ = std::move(common);
  reduce();
  return *this;
}

FactoredRat& FactoredRat::operator-=(const FactoredRat& o) {
  *this += -o;
  return *this;
}

FactoredRat FactoredRat::inverse() const {
  if (isZero()) throw InternalError("inverse of zero rational function");
  FactoredRat r;
  r.num_ = denExpanded();
  r.divByPoly(num_);
  r.reduce();
  return r;
}

FactoredRat& FactoredRat::operator/=(const FactoredRat& o) {
  *this *= o.inverse();
  return *this;
}

MPoly FactoredRat::denExpanded() const {
  MPoly d(1);
  for (auto& [f, k] : den_)
    for (int s = 0; s < k; ++s) d = d * f;
  return d;
}

bool operator==(const FactoredRat& a, const FactoredRat& b) {
  if (a.num_.isZero()) return b.num_.isZero();
  if (b.num_.isZero()) return false;
  // Strip shared factors, then cross-multiply.
  FactoredRat x = a, y = b;
  for (auto& [f, k] : a.den_) {
    auto it = b.den_.find(f);
    if (it == b.den_.end()) continue;
    int shared = std::min(k, it->second);
    x.den_[f] -= shared;
    y.den_[f] -= shared;
  }
  return x.num_ * y.denExpanded() == y.num_ * x.denExpanded();
}

FactoredRat FactoredRat::dualed() const {
  FactoredRat r;
  r.num_ = num_.dualed();
  for (auto& [f, k] : den_) {
    MPoly fd = f.dualed();
    FactorParts parts = canonicalFactor(fd);
    for (int s = 0; s < k; ++s) {
      r.num_ = r.num_.shifted(monoNeg(parts.mono)).scaled(1 / parts.scale);
      if (!parts.canonical.isOne()) r.den_[parts.canonical] += 1;
    }
  }
  r.reduce();
  return r;
}

std::string FactoredRat::str(const std::vector<std::string>& varNames) const {
  if (den_.empty()) return num_.str(varNames);
  std::ostringstream os;
  os << "(" << num_.str(varNames) << ") / (";
  bool first = true;
  for (auto& [f, k] : den_) {
    if (!first) os << " ";
    first = false;
    os << "(" << f.str(varNames) << ")";
    if (k != 1) os << "^" << k;
  }
  os << ")";
  return os.str();
}

bool EvalScalar::isZero() const {
  if (vals_.empty()) return cst_ == 0;
  for (auto& v : vals_)
    if (v != 0) return false;
  return true;
}

EvalScalar EvalScalar::operator-() const {
  EvalScalar r = *this;
  r.cst_ = -r.cst_;
  for (auto& v : r.vals_) v = -v;
  return r;
}

namespace {

void alignArity(EvalScalar& a, const EvalScalar& b, std::vector<mpq_class>& av,
                std::vector<mpq_class>& bv) {
  size_t n = std::max(a.arity(), b.arity());
  if (a.arity() != 0 && b.arity() != 0 && a.arity() != b.arity())
    throw InternalError("evaluation scalars with mismatched sample counts");
  av.resize(n);
  bv.resize(n);
  for (size_t i = 0; i < n; ++i) {
    av[i] = a.at(a.arity() ? i : 0);
    bv[i] = b.at(b.arity() ? i : 0);
  }
  if (a.arity() == 0 && n > 0) {
    for (size_t i = 0; i < n; ++i) av[i] = a.constant();
  }
  if (b.arity() == 0 && n > 0) {
    for (size_t i = 0; i < n; ++i) bv[i] = b.constant();
  }
}

}  // namespace

EvalScalar& EvalScalar::operator+=(const EvalScalar& o) {
  if (vals_.empty() && o.vals_.empty()) {
    cst_ += o.cst_;
    return *this;
  }
  std::vector<mpq_class> av, bv;
  alignArity(*this, o, av, bv);
  for (size_t i = 0; i < av.size(); ++i) av[i] += bv[i];
  vals_ = std::move(av);
  return *this;
}

EvalScalar& EvalScalar::operator-=(const EvalScalar& o) {
  *this += -o;
  return *this;
}

EvalScalar& EvalScalar::operator*=(const EvalScalar& o) {
  if (vals_.empty() && o.vals_.empty()) {
    cst_ *= o.cst_;
    return *this;
  }
  std::vector<mpq_class> av, bv;
  alignArity(*this, o, av, bv);
  for (size_t i = 0; i < av.size(); ++i) av[i] *= bv[i];
  vals_ = std::move(av);
  return *this;
}

EvalScalar& EvalScalar::operator/=(const EvalScalar& o) {
  if (vals_.empty() && o.vals_.empty()) {
    if (o.cst_ == 0) throw InternalError("division by zero scalar");
    cst_ /= o.cst_;
    return *this;
  }
  std::vector<mpq_class> av, bv;
  alignArity(*this, o, av, bv);
  for (size_t i = 0; i < av.size(); ++i) {
    if (bv[i] == 0)
      throw InternalError(
          "a sample point hit a zero denominator; rerun with another seed");
    av[i] /= bv[i];
  }
  vals_ = std::move(av);
  return *this;
}

bool operator==(const EvalScalar& a, const EvalScalar& b) {
  if (a.arity() == 0 && b.arity() == 0) return a.constant() == b.constant();
  size_t n = std::max(a.arity(), b.arity());
  if (a.arity() != 0 && b.arity() != 0 && a.arity() != b.arity()) return false;
  for (size_t i = 0; i < n; ++i) {
    mpq_class av = a.arity() ? a.at(i) : a.constant();
    mpq_class bv = b.arity() ? b.at(i) : b.constant();
    if (av != bv) return false;
  }
  return true;
}

EvalScalar EvalScalar::halfSwapped() const {
  if (vals_.empty()) return *this;
  if (vals_.size() % 2 != 0)
    throw InternalError("half swap needs an even number of sample values");
  EvalScalar r = *this;
  size_t m = vals_.size() / 2;
  for (size_t i = 0; i < m; ++i) std::swap(r.vals_[i], r.vals_[i + m]);
  return r;
}

std::string EvalScalar::str() const {
  if (vals_.empty()) return cst_.get_str();
  std::string s = "[";
  for (size_t i = 0; i < vals_.size(); ++i) {
    if (i) s += ", ";
    s += vals_[i].get_str();
  }
  return s + "]";
}

}  // namespace qkt
