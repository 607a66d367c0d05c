#include "qkt/freudenthal.hpp"

#include <algorithm>

namespace qkt {

namespace {

// Every weight of the module lies in the box 0 <= v <= v(lowest weight).
std::vector<VKey> boxByHeight(const VKey& upper) {
  std::vector<VKey> all;
  VKey cur(upper.size(), 0);
  while (true) {
    all.push_back(cur);
    size_t i = 0;
    while (i < cur.size()) {
      if (cur[i] < upper[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
      ++i;
    }
    if (i == cur.size()) break;
  }
  std::sort(all.begin(), all.end(), [](const VKey& a, const VKey& b) {
    long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return all;
}

}  // namespace

std::map<VKey, long> freudenthalCharacter(const CartanData& cd,
                                          const VKey& w) {
  if (!isFiniteType(cd))
    throw ValidationError("character oracle requires a finite-type graph");
  const int n = cd.rank();
  const VKey vLow = lowestWeightV(cd, w);
  const auto roots = positiveRoots(cd);
  std::map<VKey, long> mult;
  mult[VKey(n, 0)] = 1;

  for (const VKey& v : boxByHeight(vLow)) {
    if (height(v) == 0) continue;
    // 2 sum_{beta>0} sum_{k>=1} m(mu + k beta) <mu + k beta, beta>
    mpz_class rhs = 0;
    for (const auto& beta : roots) {
      for (long k = 1;; ++k) {
        VKey up(n);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          up[i] = v[i] - k * beta[i];
          if (up[i] < 0) ok = false;
        }
        if (!ok) break;
        auto it = mult.find(up);
        if (it == mult.end() || it->second == 0) continue;
        long p = pairingRoot(cd, Weight{w, up}, beta);
        rhs += mpz_class(2) * it->second * p;
      }
    }
    // <Lambda+rho, Lambda+rho> - <mu+rho, mu+rho>
    //   = 2 <Lambda+rho, alpha_v> - <alpha_v, alpha_v>.
    long lin = 0;
    for (int i = 0; i < n; ++i) lin += v[i] * (w[i] + 1);
    long denom = 2 * lin - rootNorm(cd, v, v);
    if (denom == 0) {
      if (rhs != 0)
        throw InternalError("Freudenthal recursion inconsistency at v=" +
                            vkeyStr(v));
      continue;
    }
    mpz_class m = rhs / denom;
    if (m * denom != rhs || m < 0)
      throw InternalError("Freudenthal multiplicity is not a nonnegative "
                          "integer at v=" +
                          vkeyStr(v));
    if (m != 0) mult[v] = m.get_si();
  }
  return mult;
}

mpz_class weylDimension(const CartanData& cd, const VKey& w) {
  if (!isFiniteType(cd))
    throw ValidationError("dimension formula requires a finite-type graph");
  mpq_class prod = 1;
  for (const auto& beta : positiveRoots(cd)) {
    long numv = 0, denv = 0;
    for (int i = 0; i < cd.rank(); ++i) {
      numv += beta[i] * (w[i] + 1);
      denv += beta[i];
    }
    prod *= mpq_class(numv, denv);
  }
  prod.canonicalize();
  if (prod.get_den() != 1)
    throw InternalError("Weyl dimension product is not an integer");
  return prod.get_num();
}

}  // namespace qkt
