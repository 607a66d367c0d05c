// Torus-fixed-point model of the equivariant K-theory of cotangent bundles of
// Grassmannians, with the Hecke kernels, the line-bundle twist operator, and
// the alternating braid kernel acting by exact localized matrices.
//
// Conventions. The full torus (C^x)^N x C^x is used so fixed points are the
// coordinate subspaces; x_1..x_N are the coordinate characters and tau is the
// extra circle variable. A kernel is stored as its operator matrix in the
// fixed-point basis: entry(target, source) equals the restriction of the
// kernel class at the fixed-point pair divided by the Euler class of the
// source tangent space, so that composition is plain matrix product and the
// diagonal structure sheaf is the identity matrix. Three sign conventions are
// not assumed but calibrated at startup: the sign of the circle weight on
// cotangent fibres, the sign realizing a grading shift {1} as a power of tau,
// and the sign of the embedding t -> (+/-) tau of the scalar variable t used
// by the quantum-integer identities. The calibration demands the commutator
// identity with positive quantum integers and is reported with every run.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qkt/eigen.hpp"
#include "qkt/mpoly.hpp"
#include "qkt/qlaurent.hpp"

namespace Eigen {

template <>
struct NumTraits<qkt::EvalScalar> : GenericNumTraits<qkt::EvalScalar> {
  typedef qkt::EvalScalar Real;
  typedef qkt::EvalScalar NonInteger;
  typedef qkt::EvalScalar Nested;
  typedef qkt::EvalScalar Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60
  };
  static inline Real epsilon() { return qkt::EvalScalar(); }
  static inline Real dummy_precision() { return qkt::EvalScalar(); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<qkt::FactoredRat> : GenericNumTraits<qkt::FactoredRat> {
  typedef qkt::FactoredRat Real;
  typedef qkt::FactoredRat NonInteger;
  typedef qkt::FactoredRat Nested;
  typedef qkt::FactoredRat Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 200,
    MulCost = 400
  };
  static inline Real epsilon() { return qkt::FactoredRat(); }
  static inline Real dummy_precision() { return qkt::FactoredRat(); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qkt::kt {

struct Conventions {
  int fibreTSign = 1;   // cotangent fibre carries tau^(2*fibreTSign)
  int shiftTSign = 1;   // {m} multiplies by tau^(shiftTSign*m)
  int tEmbedSign = -1;  // scalar variable embeds as t = tEmbedSign * tau
  std::string str() const {
    auto pm = [](int s) { return s > 0 ? std::string("+1") : std::string("-1"); };
    return "fibre tau^(2*" + pm(fibreTSign) + "), {1} -> tau^(" +
           pm(shiftTSign) + "), t -> " + pm(tEmbedSign) + "*tau";
  }
};

/// Fixed point of the torus on T*G(k,N): a coordinate subspace, stored as a
/// bitmask over {0..N-1}. Listed in increasing mask order.
std::vector<uint32_t> fixedPointSets(int N, int k);
std::string subsetStr(uint32_t s, int N);
long binomial(int n, int k);

/// Torus characters on the tangent space at a fixed point, as exponent
/// vectors (x_1..x_N then tau); 2k(N-k) weights in total.
std::vector<Mono> tangentWeights(int N, int k, uint32_t S,
                                 const Conventions& conv);

/// Tangent characters of the Hecke correspondence at a pair Sp subset S:
/// the two-step flag directions plus the twisted fibre Hom(C^N/V, V').
std::vector<Mono> heckeTangentWeights(int N, uint32_t S, uint32_t Sp,
                                      const Conventions& conv);

/// Identity-testing scalar context: sample points with prime coordinates
/// (so no nontrivial monomial evaluates to 1), followed by their inverses.
class EvalField {
 public:
  using Scalar = EvalScalar;
  EvalField(int N, int points, uint64_t seed, const Conventions& conv);

  Scalar monomial(const Mono& m) const;             // plain tau-monomial
  Scalar fromTLaurent(const QLaurent& p) const;     // t -> tEmbedSign * tau
  Scalar tArtPow(long e) const;                     // (tEmbedSign * tau)^e
  Scalar dual(const Scalar& s) const { return s.halfSwapped(); }
  bool invertible(const Scalar& s) const;
  std::string scalarStr(const Scalar& s) const { return s.str(); }
  std::vector<std::string> pointStrings() const;
  const Conventions& conventions() const { return conv_; }

 private:
  int n_;
  Conventions conv_;
  std::vector<std::vector<mpq_class>> points_;  // N+1 coordinates each
};

/// Fully symbolic scalar context.
class SymbolicField {
 public:
  using Scalar = FactoredRat;
  SymbolicField(int N, const Conventions& conv);

  Scalar monomial(const Mono& m) const {
    return FactoredRat::fromMonomial(m);
  }
  Scalar fromTLaurent(const QLaurent& p) const;
  Scalar tArtPow(long e) const;
  Scalar dual(const Scalar& s) const { return s.dualed(); }
  bool invertible(const Scalar& s) const { return !s.isZero(); }
  std::string scalarStr(const Scalar& s) const { return s.str(names_); }
  const Conventions& conventions() const { return conv_; }

 private:
  int n_;
  Conventions conv_;
  std::vector<std::string> names_;
};

template <class Field>
struct Kernel {
  using Scalar = typename Field::Scalar;
  int srcK = 0;
  int tgtK = 0;
  MatrixX<Scalar> M;  // rows: target fixed points, cols: source fixed points
};

template <class Field>
class LocalizationEngine {
 public:
  using Scalar = typename Field::Scalar;
  using Mat = MatrixX<Scalar>;
  using K = Kernel<Field>;

  LocalizationEngine(int N, const Field& field)
      : n_(N), field_(field), conv_(field.conventions()) {}

  int N() const { return n_; }
  const Field& field() const { return field_; }

  const std::vector<uint32_t>& points(int k) const {
    auto it = points_.find(k);
    if (it == points_.end())
      it = points_.emplace(k, fixedPointSets(n_, k)).first;
    return it->second;
  }

  Scalar eulerTangent(int k, uint32_t S) const {
    auto key = std::make_pair(k, S);
    auto it = euler_.find(key);
    if (it == euler_.end()) {
      Scalar e(1);
      for (const Mono& w : tangentWeights(n_, k, S, conv_))
        e *= Scalar(1) - field_.monomial(monoNeg(w));
      it = euler_.emplace(key, e).first;
    }
    return it->second;
  }

  /// Class of the canonical bundle at any fixed point of T*G(k,N): the top
  /// inverse tangent character (the x-parts cancel in base/fibre pairs).
  Scalar omega(int k) const {
    Mono m;
    m.assign(static_cast<size_t>(n_) + 1, 0);
    m[n_] = -conv_.fibreTSign * 2 * static_cast<long>(k) * (n_ - k);
    return field_.monomial(m);
  }

  K identityKernel(int k) const {
    K r;
    r.srcK = r.tgtK = k;
    long d = binomial(n_, k);
    r.M = Mat::Identity(d, d);
    return r;
  }

  /// Diagonal twist by det(V): the product of the coordinate characters of
  /// the subspace, with an optional grading shift.
  K thetaKernel(int k, long shift = 0) const {
    K r;
    r.srcK = r.tgtK = k;
    const auto& pts = points(k);
    long d = static_cast<long>(pts.size());
    r.M = Mat::Zero(d, d);
    for (long p = 0; p < d; ++p) {
      Mono m(static_cast<size_t>(n_) + 1, 0);
      for (int i = 0; i < n_; ++i)
        if (pts[p] & (1u << i)) m[i] = 1;
      m[n_] = conv_.shiftTSign * shift;
      r.M(p, p) = field_.monomial(m);
    }
    return r;
  }

  /// Hecke kernels. The raising kernel for power r maps D_k to D_{k-r} and is
  /// twisted by (det V det V' det(C^N)^dual)^r {r(k-r)}; the lowering kernel
  /// maps D_{k-r} to D_k and is twisted by det(V'/V)^{N-2k+r} {r(N-k)}.
  K eKernel(long r, int k) const {
    if (r == 0) return identityKernel(k);
    if (r < 0 || k - r < 0 || k > n_)
      throw ValidationError("raising kernel parameters out of range");
    K out;
    out.srcK = k;
    out.tgtK = k - static_cast<int>(r);
    const auto& src = points(k);
    const auto& tgt = points(out.tgtK);
    out.M = Mat::Zero(tgt.size(), src.size());
    for (size_t p = 0; p < src.size(); ++p) {
      Scalar e = eulerTangent(k, src[p]);
      for (size_t q = 0; q < tgt.size(); ++q) {
        if ((tgt[q] & src[p]) != tgt[q]) continue;  // need Sp subset S
        Mono twist(static_cast<size_t>(n_) + 1, 0);
        for (int i = 0; i < n_; ++i) {
          long inS = (src[p] >> i) & 1, inSp = (tgt[q] >> i) & 1;
          twist[i] = r * (inS + inSp - 1);
        }
        twist[n_] = conv_.shiftTSign * r * (k - r);
        out.M(q, p) =
            field_.monomial(twist) * conormalEuler(k, src[p], tgt[q]) / e;
      }
    }
    return out;
  }

  K fKernel(long r, int k) const {
    if (r == 0) return identityKernel(k);
    if (r < 0 || k - r < 0 || k > n_)
      throw ValidationError("lowering kernel parameters out of range");
    K out;
    out.srcK = k - static_cast<int>(r);
    out.tgtK = k;
    const auto& src = points(out.srcK);
    const auto& tgt = points(k);
    out.M = Mat::Zero(tgt.size(), src.size());
    for (size_t p = 0; p < src.size(); ++p) {
      Scalar e = eulerTangent(out.srcK, src[p]);
      for (size_t q = 0; q < tgt.size(); ++q) {
        if ((src[p] & tgt[q]) != src[p]) continue;  // need Sp subset S
        Mono twist(static_cast<size_t>(n_) + 1, 0);
        for (int i = 0; i < n_; ++i)
          if ((tgt[q] & ~src[p]) & (1u << i)) twist[i] = n_ - 2 * k + r;
        twist[n_] = conv_.shiftTSign * r * (n_ - k);
        out.M(q, p) =
            field_.monomial(twist) * conormalEuler(k, tgt[q], src[p]) / e;
      }
    }
    return out;
  }

  K compose(const K& a, const K& b) const {
    if (b.tgtK != a.srcK)
      throw InternalError("kernel composition shape mismatch");
    K out;
    out.srcK = b.srcK;
    out.tgtK = a.tgtK;
    out.M = a.M * b.M;
    return out;
  }

  K scale(K a, const Scalar& c) const {
    a.M = (a.M * c).eval();
    return a;
  }

  K add(K a, const K& b) const {
    if (a.srcK != b.srcK || a.tgtK != b.tgtK)
      throw InternalError("kernel sum shape mismatch");
    a.M += b.M;
    return a;
  }

  /// Alternating sum of lowering/raising compositions: the braid kernel
  /// D_k -> D_{N-k}.
  K rickardKernel(int k) const {
    const long n = n_ - 2 * static_cast<long>(k);
    K acc;
    acc.srcK = k;
    acc.tgtK = n_ - k;
    acc.M = Mat::Zero(binomial(n_, n_ - k), binomial(n_, k));
    for (long l = std::max<long>(0, -n); l <= k; ++l) {
      K term = compose(fKernel(n + l, n_ - k), eKernel(l, k));
      Scalar c(l % 2 == 0 ? 1 : -1);
      acc = add(acc, scale(term, c));
    }
    return acc;
  }

  /// Raw restriction of the kernel class at a fixed-point pair: undo the
  /// source Euler normalization.
  Scalar rawEntry(const K& a, size_t srcIdx, size_t tgtIdx) const {
    return a.M(tgtIdx, srcIdx) * eulerTangent(a.srcK, points(a.srcK)[srcIdx]);
  }

  /// Left adjoint kernel: dual class twisted by the canonical bundle of the
  /// target and renormalized, i.e. transpose with Euler-class factors.
  K leftAdjoint(const K& a) const {
    return adjointImpl(a, omega(a.tgtK));
  }

  /// Right adjoint kernel: same with the canonical bundle of the source.
  K rightAdjoint(const K& a) const {
    return adjointImpl(a, omega(a.srcK));
  }

  /// Exact inverse over the scalar field; pivots must be invertible (in
  /// identity-testing mode: nonzero at every sample point).
  K inverse(const K& a) const {
    if (a.M.rows() != a.M.cols())
      throw InternalError("cannot invert a non-square kernel");
    K out;
    out.srcK = a.tgtK;
    out.tgtK = a.srcK;
    const Eigen::Index m = a.M.rows();
    Mat work = a.M;
    Mat inv = Mat::Identity(m, m);
    for (Eigen::Index col = 0; col < m; ++col) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = col; i < m; ++i)
        if (field_.invertible(work(i, col))) {
          piv = i;
          break;
        }
      if (piv < 0)
        throw InternalError(
            "kernel matrix is singular (or a sample point is degenerate; "
            "try another seed)");
      if (piv != col) {
        work.row(piv).swap(work.row(col));
        inv.row(piv).swap(inv.row(col));
      }
      Scalar d = Scalar(1) / work(col, col);
      for (Eigen::Index j = 0; j < m; ++j) {
        work(col, j) *= d;
        inv(col, j) *= d;
      }
      for (Eigen::Index i = 0; i < m; ++i) {
        if (i == col || work(i, col).isZero()) continue;
        Scalar f = work(i, col);
        for (Eigen::Index j = 0; j < m; ++j) {
          work(i, j) -= f * work(col, j);
          inv(i, j) -= f * inv(col, j);
        }
      }
    }
    out.M = inv;
    return out;
  }

  bool kernelsEqual(const K& a, const K& b) const {
    if (a.srcK != b.srcK || a.tgtK != b.tgtK) return false;
    for (Eigen::Index j = 0; j < a.M.cols(); ++j)
      for (Eigen::Index i = 0; i < a.M.rows(); ++i)
        if (!(a.M(i, j) == b.M(i, j))) return false;
    return true;
  }

  /// Restriction of (det V . det V' . det(C^N)^dual)^power at a fixed-point
  /// pair (S on the k side, Sp on the other side).
  Scalar lTwist(uint32_t S, uint32_t Sp, long power) const {
    Mono m(static_cast<size_t>(n_) + 1, 0);
    for (int i = 0; i < n_; ++i) {
      long e = -1;
      if (S & (1u << i)) e += 1;
      if (Sp & (1u << i)) e += 1;
      m[i] = e * power;
    }
    return field_.monomial(m);
  }

 private:
  Scalar conormalEuler(int k, uint32_t S, uint32_t Sp) const {
    // Normal weights of the correspondence inside the ambient product:
    // ambient tangent multiset minus correspondence tangent multiset.
    int r = 0;
    for (int i = 0; i < n_; ++i)
      if ((S & ~Sp) & (1u << i)) ++r;
    std::map<Mono, int> normal;
    for (const Mono& w : tangentWeights(n_, k, S, conv_)) normal[w] += 1;
    for (const Mono& w : tangentWeights(n_, k - r, Sp, conv_)) normal[w] += 1;
    for (const Mono& w : heckeTangentWeights(n_, S, Sp, conv_)) {
      auto it = normal.find(w);
      if (it == normal.end() || it->second == 0)
        throw InternalError(
            "correspondence tangent weight missing from the ambient product");
      if (--it->second == 0) normal.erase(it);
    }
    Scalar e(1);
    for (auto& [w, mult] : normal)
      for (int s = 0; s < mult; ++s)
        e *= Scalar(1) - field_.monomial(monoNeg(w));
    return e;
  }

  K adjointImpl(const K& a, const Scalar& canonical) const {
    K out;
    out.srcK = a.tgtK;
    out.tgtK = a.srcK;
    const auto& srcPts = points(a.srcK);
    const auto& tgtPts = points(a.tgtK);
    out.M = Mat::Zero(srcPts.size(), tgtPts.size());
    for (size_t p = 0; p < srcPts.size(); ++p)
      for (size_t q = 0; q < tgtPts.size(); ++q) {
        Scalar raw = rawEntry(a, p, q);
        out.M(p, q) = field_.dual(raw) * canonical /
                      eulerTangent(a.tgtK, tgtPts[q]);
      }
    return out;
  }

  int n_;
  Field field_;
  Conventions conv_;
  mutable std::map<int, std::vector<uint32_t>> points_;
  mutable std::map<std::pair<int, uint32_t>, Scalar> euler_;
};

struct KtCheckOutcome {
  std::string name;
  std::string identity;
  std::string instance;
  bool pass = false;
  std::string detail;
};

struct KtOptions {
  int N = 2;
  std::optional<int> k;
  std::vector<std::string> checks;  // empty -> all applicable
  bool symbolic = false;
  uint64_t seed = 1;
  int points = 5;
};

struct KtRunReport {
  Conventions conventions;
  std::vector<std::string> samplePoints;            // identity-testing mode
  std::map<std::string, std::string> constants;     // discovered signs/scalars
  std::vector<KtCheckOutcome> checks;
  bool allPass = true;
};

/// Determine the sign conventions by demanding the commutator identity with
/// positive quantum integers on small instances. Deterministic.
Conventions calibrateConventions();

/// Run the verification suite. Valid check names: commutator, divided,
/// adjoint, lemma73-1, lemma73-2, eq3, affine, crossmodel.
KtRunReport runKtChecks(const KtOptions& opt);

}  // namespace qkt::kt
