#include "qkt/repbuilder.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qkt {

namespace {

VKey step(const VKey& v, int i, long delta) {
  VKey r = v;
  r[i] += delta;
  return r;
}

bool nonneg(const VKey& v) {
  for (long x : v)
    if (x < 0) return false;
  return true;
}

// Basis selection order: monomials of equal length compare by the reversal of
// their letter sequence, lexicographically.
bool monomialLess(const MonomialLabel& a, const MonomialLabel& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto ra = a.rbegin();
  for (auto rb = b.rbegin(); rb != b.rend(); ++ra, ++rb) {
    if (*ra != *rb) return *ra < *rb;
  }
  return false;
}

}  // namespace

int IntegrableModule::dim(const VKey& v) const {
  auto it = support_.find(v);
  return it == support_.end() ? 0 : it->second;
}

const std::vector<MonomialLabel>& IntegrableModule::basisLabels(
    const VKey& v) const {
  auto it = labels_.find(v);
  if (it == labels_.end())
    throw ValidationError("weight v=" + vkeyStr(v) + " is not in the support");
  return it->second;
}

const MatF& IntegrableModule::gram(const VKey& v) const {
  auto it = gram_.find(v);
  if (it == gram_.end())
    throw ValidationError("weight v=" + vkeyStr(v) + " is not in the support");
  return it->second;
}

MatF IntegrableModule::eMatrix(int i, const VKey& v) const {
  auto it = eMat_.find({i, v});
  if (it != eMat_.end()) return it->second;
  VKey tgt = step(v, i, -1);
  int rows = nonneg(tgt) ? dim(tgt) : 0;
  return MatF::Zero(rows, dim(v));
}

MatF IntegrableModule::fMatrix(int i, const VKey& v) const {
  auto it = fMat_.find({i, v});
  if (it != fMat_.end()) return it->second;
  return MatF::Zero(dim(step(v, i, 1)), dim(v));
}

MatF IntegrableModule::eDivided(int i, long r, const VKey& v) const {
  if (r < 1) throw ValidationError("divided power requires r >= 1");
  MatF acc = MatF::Identity(dim(v), dim(v));
  VKey cur = v;
  for (long s = 0; s < r; ++s) {
    acc = (eMatrix(i, cur) * acc).eval();
    cur = step(cur, i, -1);
  }
  QFraction inv(QLaurent(1), qfactorial(r));
  return acc * inv;
}

MatF IntegrableModule::fDivided(int i, long r, const VKey& v) const {
  if (r < 1) throw ValidationError("divided power requires r >= 1");
  MatF acc = MatF::Identity(dim(v), dim(v));
  VKey cur = v;
  for (long s = 0; s < r; ++s) {
    acc = (fMatrix(i, cur) * acc).eval();
    cur = step(cur, i, 1);
  }
  QFraction inv(QLaurent(1), qfactorial(r));
  return acc * inv;
}

IntegrableModule buildModule(std::shared_ptr<const CartanData> cd, VKey w,
                             std::optional<long> depthLimit) {
  const int n = cd->rank();
  if (static_cast<int>(w.size()) != n)
    throw ValidationError("framing vector length does not match the graph");
  bool allZero = true;
  for (long x : w) {
    if (x < 0) throw ValidationError("framing vector must be nonnegative");
    if (x != 0) allZero = false;
  }
  if (allZero)
    throw ValidationError("framing vector must not be identically zero");

  IntegrableModule m;
  m.cartan_ = cd;
  m.w_ = w;

  bool finite = isFiniteType(*cd);
  long autoDepth = -1;
  if (finite) autoDepth = height(lowestWeightV(*cd, w));
  if (depthLimit) {
    if (*depthLimit < 0) throw ValidationError("depth limit must be >= 0");
    m.depthLimit_ = *depthLimit;
  } else if (finite) {
    m.depthLimit_ = autoDepth;
  } else {
    throw ValidationError(
        "a depth limit is required for non-finite-type graphs");
  }

  const VKey origin(n, 0);
  m.support_[origin] = 1;
  m.labels_[origin] = {MonomialLabel{}};
  MatF g0(1, 1);
  g0(0, 0) = QFraction(1);
  m.gram_[origin] = g0;

  std::vector<VKey> level{origin};
  for (long depth = 1; depth <= m.depthLimit_ && !level.empty(); ++depth) {
    // Candidate weights one f-step below the previous level.
    std::set<VKey> candidates;
    for (const auto& vp : level)
      for (int i = 0; i < n; ++i) candidates.insert(step(vp, i, 1));

    std::vector<VKey> newLevel;
    for (const VKey& v : candidates) {
      // Spanning monomials f_i . b over basis vectors b one level up, in
      // canonical order. Vectors are normalized as divided-power monomials:
      // extending a leading run of a copies of the letter i divides by
      // [a+1], so the vector labelled i^a is f_i^{(a)} applied to the rest.
      struct Span {
        int i;
        int b;  // basis index at v - e_i
        MonomialLabel label;
        QFraction inc;  // f_i b = inc * (this spanning vector)
      };
      std::vector<Span> spans;
      for (int i = 0; i < n; ++i) {
        if (v[i] < 1) continue;
        VKey vp = step(v, i, -1);
        auto lit = m.labels_.find(vp);
        if (lit == m.labels_.end()) continue;
        for (int b = 0; b < static_cast<int>(lit->second.size()); ++b) {
          MonomialLabel lbl;
          lbl.push_back(i);
          lbl.insert(lbl.end(), lit->second[b].begin(),
                     lit->second[b].end());
          long run = 1;
          while (run < static_cast<long>(lbl.size()) && lbl[run] == i) ++run;
          spans.push_back({i, b, std::move(lbl), QFraction(qint(run))});
        }
      }
      if (spans.empty()) continue;
      std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
        return monomialLess(a.label, b.label);
      });
      const int ns = static_cast<int>(spans.size());

      // chi[s] = e_{i(s0)} f_{j(s)} b(s), a vector in M(lambda + alpha_{i0})
      // -- computed per pair of source vertices. We need, for Gram entries,
      // chi_{i}(s2) = e_i f_{j(s2)} b(s2) expressed in the basis of v - e_i.
      auto chi = [&](int i, const Span& s2) -> MatF {
        VKey vpj = step(v, s2.i, -1);          // weight of b(s2)
        VKey target = step(v, i, -1);          // weight of the result
        int tdim = nonneg(target) ? m.dim(target) : 0;
        MatF out = MatF::Zero(tdim, 1);
        if (tdim == 0) return out;
        // f_j (e_i b2)
        VKey mid = step(vpj, i, -1);
        if (nonneg(mid) && m.dim(mid) > 0) {
          MatF eb = m.eMatrix(i, vpj).col(s2.b);
          out += m.fMatrix(s2.i, mid) * eb;
        }
        // - delta_ij [<wt(b2), alpha_i>] b2
        if (i == s2.i) {
          QFraction c(qint(pairing(*cd, Weight{w, vpj}, i)));
          out(s2.b, 0) -= c;
        }
        return out;
      };

      // Gram of the normalized spanning set:
      // G[s1][s2] = <b1, e_{i1} f_{j2} b2> / (inc1 inc2), taken with the
      // Gram matrix of the weight space v - e_{i1}.
      MatF G(ns, ns);
      std::map<std::pair<int, int>, MatF> chiCache;  // (i, span idx) -> col
      for (int s2 = 0; s2 < ns; ++s2) {
        for (int s1 = 0; s1 < ns; ++s1) {
          int i = spans[s1].i;
          auto key = std::make_pair(i, s2);
          auto it = chiCache.find(key);
          if (it == chiCache.end())
            it = chiCache.emplace(key, chi(i, spans[s2])).first;
          const MatF& col = it->second;
          VKey vpi = step(v, i, -1);
          QFraction acc(0);
          const MatF& gp = m.gram_.at(vpi);
          for (int k = 0; k < col.rows(); ++k)
            acc += gp(spans[s1].b, k) * col(k, 0);
          G(s1, s2) = acc / (spans[s1].inc * spans[s2].inc);
        }
      }

      std::vector<int> basisIdx = columnRankProfile<QFraction>(G);
      const int d = static_cast<int>(basisIdx.size());
      if (d == 0) continue;

      // Gram of the chosen basis.
      MatF gb(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) gb(a, b) = G(basisIdx[a], basisIdx[b]);

      // Every spanning monomial expanded over the basis:
      // coords = gb^{-1} G[basis, s].
      MatF rhs(d, ns);
      for (int a = 0; a < d; ++a)
        for (int s = 0; s < ns; ++s) rhs(a, s) = G(basisIdx[a], s);
      MatF expand = solveLinear<QFraction>(gb, rhs);

      m.support_[v] = d;
      std::vector<MonomialLabel> lbls;
      lbls.reserve(d);
      for (int a = 0; a < d; ++a) lbls.push_back(spans[basisIdx[a]].label);
      m.labels_[v] = std::move(lbls);
      m.gram_[v] = gb;

      // f matrices into this weight: f_i b = inc * (spanning vector (i, b)),
      // expanded over the chosen basis.
      for (int i = 0; i < n; ++i) {
        if (v[i] < 1) continue;
        VKey vp = step(v, i, -1);
        int pd = m.dim(vp);
        if (pd == 0) continue;
        MatF fm = MatF::Zero(d, pd);
        for (int s = 0; s < ns; ++s) {
          if (spans[s].i != i) continue;
          fm.col(spans[s].b) = expand.col(s) * spans[s].inc;
        }
        m.fMat_[{i, vp}] = fm;
      }

      // e matrices out of this weight: e_i applied to the normalized basis
      // vector (j, b) is chi_i(j, b) / inc, a coordinate vector one level up.
      for (int i = 0; i < n; ++i) {
        VKey tgt = step(v, i, -1);
        if (!nonneg(tgt) || m.dim(tgt) == 0) continue;
        MatF em(m.dim(tgt), d);
        for (int a = 0; a < d; ++a) {
          auto key = std::make_pair(i, basisIdx[a]);
          auto it = chiCache.find(key);
          if (it == chiCache.end())
            it = chiCache.emplace(key, chi(i, spans[basisIdx[a]])).first;
          em.col(a) = it->second / spans[basisIdx[a]].inc;
        }
        m.eMat_[{i, v}] = em;
      }

      newLevel.push_back(v);
    }
    level = std::move(newLevel);
  }
  // Truncated when the depth limit stopped a still-growing module.
  m.truncated_ = !level.empty() && !(finite && m.depthLimit_ >= autoDepth);
  return m;
}

std::map<VKey, long> character(const IntegrableModule& m) {
  if (m.truncated())
    throw ValidationError("character of a truncated module is not defined");
  std::map<VKey, long> ch;
  for (auto& [v, d] : m.support()) ch[v] = d;
  return ch;
}

namespace {

std::string weightInstance(const IntegrableModule& m, const VKey& v) {
  return Weight{m.w(), v}.str();
}

void checkZero(std::vector<RelationCheck>& out, const std::string& name,
               const std::string& identity, const std::string& instance,
               const MatF& mat) {
  RelationCheck c{name, identity, instance, true, ""};
  if (!isZeroMatrix(mat)) {
    c.pass = false;
    for (Eigen::Index j = 0; j < mat.cols() && c.detail.empty(); ++j)
      for (Eigen::Index i = 0; i < mat.rows() && c.detail.empty(); ++i)
        if (!mat(i, j).isZero())
          c.detail = "residual entry (" + std::to_string(i) + "," +
                     std::to_string(j) + ") = " + mat(i, j).str();
  }
  out.push_back(std::move(c));
}

}  // namespace

std::vector<RelationCheck> verifyModuleRelations(const IntegrableModule& m) {
  std::vector<RelationCheck> out;
  const CartanData& cd = m.cartan();
  const int n = cd.rank();
  const bool trunc = m.truncated();
  const long limit = m.depthLimit();

  // A check that applies f-letters to depth fDepth below lambda is reliable
  // on a truncated module only when it stays inside the built range.
  auto interior = [&](const VKey& v, long fDepth) {
    return !trunc || height(v) + fDepth <= limit;
  };

  for (auto& [v, d] : m.support()) {
    Weight lam = m.weightOf(v);
    // (a) f_i e_i - e_i f_i = [<lambda, alpha_i>] on M(lambda)
    for (int i = 0; i < n; ++i) {
      if (!interior(v, 1)) continue;
      MatF fe = m.fMatrix(i, step(v, i, -1)) * m.eMatrix(i, v);
      MatF ef = m.eMatrix(i, step(v, i, 1)) * m.fMatrix(i, v);
      MatF idq =
          MatF::Identity(d, d) * QFraction(qint(pairing(cd, lam, i)));
      checkZero(out, "commutator",
                "f_i e_i - e_i f_i = [<lambda,alpha_i>] id on M(lambda)",
                weightInstance(m, v) + " i=" + cd.vertexName(i),
                fe - ef - idq);
    }
    // (b) [e_i, f_j] = 0 for i != j
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || !interior(v, 1)) continue;
        MatF fe = m.fMatrix(j, step(v, i, -1)) * m.eMatrix(i, v);
        MatF ef = m.eMatrix(i, step(v, j, 1)) * m.fMatrix(j, v);
        checkZero(out, "mixed-commutator", "f_j e_i = e_i f_j for i != j",
                  weightInstance(m, v) + " i=" + cd.vertexName(i) +
                      " j=" + cd.vertexName(j),
                  fe - ef);
      }
    // (c) Serre relations, e and f versions
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (cd.adjacent(i, j)) {
          {
            // e_i e_j e_i = e_i^(2) e_j + e_j e_i^(2)
            VKey v1 = step(v, i, -1), v2 = step(step(v, i, -1), j, -1);
            MatF lhs = m.eMatrix(i, v2) * m.eMatrix(j, v1) * m.eMatrix(i, v);
            MatF r1 = m.eDivided(i, 2, step(v, j, -1)) * m.eMatrix(j, v);
            MatF r2 = m.eMatrix(j, step(v, i, -2)) * m.eDivided(i, 2, v);
            checkZero(out, "serre-e",
                      "e_i e_j e_i = e_i^(2) e_j + e_j e_i^(2) on edges",
                      weightInstance(m, v) + " i=" + cd.vertexName(i) +
                          " j=" + cd.vertexName(j),
                      lhs - r1 - r2);
          }
          if (interior(v, 3)) {
            VKey v1 = step(v, i, 1), v2 = step(step(v, i, 1), j, 1);
            MatF lhs = m.fMatrix(i, v2) * m.fMatrix(j, v1) * m.fMatrix(i, v);
            MatF r1 = m.fDivided(i, 2, step(v, j, 1)) * m.fMatrix(j, v);
            MatF r2 = m.fMatrix(j, step(v, i, 2)) * m.fDivided(i, 2, v);
            checkZero(out, "serre-f",
                      "f_i f_j f_i = f_i^(2) f_j + f_j f_i^(2) on edges",
                      weightInstance(m, v) + " i=" + cd.vertexName(i) +
                          " j=" + cd.vertexName(j),
                      lhs - r1 - r2);
          }
        } else {
          MatF lhs = m.eMatrix(j, step(v, i, -1)) * m.eMatrix(i, v) -
                     m.eMatrix(i, step(v, j, -1)) * m.eMatrix(j, v);
          checkZero(out, "commuting-e", "e_i e_j = e_j e_i off edges",
                    weightInstance(m, v) + " i=" + cd.vertexName(i) +
                        " j=" + cd.vertexName(j),
                    lhs);
          if (interior(v, 2)) {
            MatF lhsf = m.fMatrix(j, step(v, i, 1)) * m.fMatrix(i, v) -
                        m.fMatrix(i, step(v, j, 1)) * m.fMatrix(j, v);
            checkZero(out, "commuting-f", "f_i f_j = f_j f_i off edges",
                      weightInstance(m, v) + " i=" + cd.vertexName(i) +
                          " j=" + cd.vertexName(j),
                      lhsf);
          }
        }
      }
    // (d) e_i^r = [r]! e_i^(r) and (e) e_i e_i^(r) = [r+1] e_i^(r+1)
    for (int i = 0; i < n; ++i) {
      for (long r = 1; r <= v[i]; ++r) {
        MatF pow = MatF::Identity(d, d);
        VKey cur = v;
        for (long s = 0; s < r; ++s) {
          pow = (m.eMatrix(i, cur) * pow).eval();
          cur = step(cur, i, -1);
        }
        MatF rhs = m.eDivided(i, r, v) * QFraction(qfactorial(r));
        checkZero(out, "divided-power", "e_i^r = [r]! e_i^(r)",
                  weightInstance(m, v) + " i=" + cd.vertexName(i) +
                      " r=" + std::to_string(r),
                  pow - rhs);
        MatF lhs = m.eMatrix(i, step(v, i, -r)) * m.eDivided(i, r, v);
        MatF rhs2 = m.eDivided(i, r + 1, v) * QFraction(qint(r + 1));
        checkZero(out, "divided-product", "e_i e_i^(r) = [r+1] e_i^(r+1)",
                  weightInstance(m, v) + " i=" + cd.vertexName(i) +
                      " r=" + std::to_string(r),
                  lhs - rhs2);
      }
    }
  }

  if (!trunc) {
    // Weyl symmetry of the character.
    RelationCheck weyl{"weyl-symmetry",
                       "dim M(lambda) = dim M(s_i lambda) for all i", "all",
                       true, ""};
    for (auto& [v, d] : m.support()) {
      for (int i = 0; i < n; ++i) {
        VKey r = reflect(cd, m.weightOf(v), i).v;
        if (!nonneg(r) || m.dim(r) != d) {
          weyl.pass = false;
          weyl.detail = "asymmetric at " + weightInstance(m, v) +
                        " i=" + cd.vertexName(i);
          break;
        }
      }
      if (!weyl.pass) break;
    }
    out.push_back(weyl);

    // Integrability: each alpha_i-string through the support is finite and
    // the generators vanish beyond it.
    RelationCheck integ{"integrability",
                        "e_i and f_i are nilpotent on every string", "all",
                        true, ""};
    for (auto& [v, d] : m.support()) {
      for (int i = 0; i < n; ++i) {
        long r = 1;
        VKey up = step(v, i, -1);
        while (nonneg(up) && m.dim(up) > 0) {
          up = step(up, i, -1);
          ++r;
        }
        if (!isZeroMatrix(m.eDivided(i, r + 1, v))) {
          integ.pass = false;
          integ.detail = "e-string does not terminate at " +
                         weightInstance(m, v) + " i=" + cd.vertexName(i);
        }
      }
    }
    out.push_back(integ);
  }
  return out;
}

namespace {

nlohmann::ordered_json matrixJson(const MatF& mat) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < mat.cols(); ++j)
      row.push_back(mat(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

MatF matrixFromJson(const nlohmann::json& rows, int expectRows,
                    int expectCols) {
  MatF mat = MatF::Zero(expectRows, expectCols);
  if (static_cast<int>(rows.size()) != expectRows)
    throw ValidationError("module file: matrix row count mismatch");
  for (int i = 0; i < expectRows; ++i) {
    if (static_cast<int>(rows[i].size()) != expectCols)
      throw ValidationError("module file: matrix column count mismatch");
    for (int j = 0; j < expectCols; ++j)
      mat(i, j) = QFraction::parse(rows[i][j].get<std::string>());
  }
  return mat;
}

std::vector<VKey> sortedSupport(const std::map<VKey, int>& support) {
  std::vector<VKey> keys;
  for (auto& [v, d] : support) keys.push_back(v);
  std::sort(keys.begin(), keys.end(), [](const VKey& a, const VKey& b) {
    long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return keys;
}

}  // namespace

std::string moduleToJson(const IntegrableModule& m) {
  nlohmann::ordered_json j;
  j["format"] = "qkt-module";
  nlohmann::ordered_json graph;
  graph["vertices"] = m.cartan().graph().vertices;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (auto& [a, b] : m.cartan().graph().edges)
    edges.push_back(nlohmann::ordered_json::array({a, b}));
  graph["edges"] = edges;
  j["graph"] = graph;
  j["w"] = m.w();
  j["depth_limit"] = m.depthLimit();
  j["truncated"] = m.truncated();

  nlohmann::ordered_json weights = nlohmann::ordered_json::array();
  for (const VKey& v : sortedSupport(m.support())) {
    nlohmann::ordered_json entry;
    entry["v"] = v;
    entry["dim"] = m.dim(v);
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (auto& lbl : m.basisLabels(v)) {
      nlohmann::ordered_json letters = nlohmann::ordered_json::array();
      for (int i : lbl) letters.push_back(m.cartan().vertexName(i));
      basis.push_back(letters);
    }
    entry["basis"] = basis;
    nlohmann::ordered_json emats, fmats;
    for (int i = 0; i < m.cartan().rank(); ++i) {
      MatF em = m.eMatrix(i, v);
      if (em.rows() > 0 && !isZeroMatrix(em))
        emats[m.cartan().vertexName(i)] = matrixJson(em);
      MatF fm = m.fMatrix(i, v);
      if (fm.rows() > 0 && !isZeroMatrix(fm))
        fmats[m.cartan().vertexName(i)] = matrixJson(fm);
    }
    entry["e"] = emats;
    entry["f"] = fmats;
    weights.push_back(entry);
  }
  j["weights"] = weights;
  return j.dump(2) + "\n";
}

IntegrableModule moduleFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("module file parse error: ") + e.what());
  }
  if (!j.contains("format") || j["format"] != "qkt-module")
    throw ValidationError("not a module file (missing format tag)");
  GraphData gd;
  for (auto& v : j["graph"]["vertices"]) gd.vertices.push_back(v);
  for (auto& e : j["graph"]["edges"])
    gd.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  auto cd = std::make_shared<CartanData>(buildCartan(gd));

  IntegrableModule m;
  m.cartan_ = cd;
  m.w_ = j["w"].get<VKey>();
  m.depthLimit_ = j["depth_limit"].get<long>();
  m.truncated_ = j["truncated"].get<bool>();

  for (auto& entry : j["weights"]) {
    VKey v = entry["v"].get<VKey>();
    int d = entry["dim"].get<int>();
    if (d <= 0) throw ValidationError("module file: nonpositive dimension");
    m.support_[v] = d;
    std::vector<MonomialLabel> lbls;
    for (auto& lblJson : entry["basis"]) {
      MonomialLabel lbl;
      for (auto& name : lblJson)
        lbl.push_back(cd->vertexIndex(name.get<std::string>()));
      lbls.push_back(lbl);
    }
    if (static_cast<int>(lbls.size()) != d)
      throw ValidationError("module file: basis size mismatch");
    m.labels_[v] = lbls;
    m.gram_[v] = MatF::Identity(d, d);  // Gram data is not serialized
  }
  for (auto& entry : j["weights"]) {
    VKey v = entry["v"].get<VKey>();
    int d = m.support_.at(v);
    if (entry.contains("e"))
      for (auto& [name, rows] : entry["e"].items()) {
        int i = cd->vertexIndex(name);
        m.eMat_[{i, v}] = matrixFromJson(rows, m.dim(step(v, i, -1)), d);
      }
    if (entry.contains("f"))
      for (auto& [name, rows] : entry["f"].items()) {
        int i = cd->vertexIndex(name);
        m.fMat_[{i, v}] = matrixFromJson(rows, m.dim(step(v, i, 1)), d);
      }
  }
  return m;
}

}  // namespace qkt
