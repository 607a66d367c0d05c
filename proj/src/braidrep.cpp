#include "qkt/braidrep.hpp"

#include <algorithm>
#include <sstream>

namespace qkt {

WeightOperator identityOperator(const IntegrableModule& m) {
  WeightOperator op;
  for (auto& [v, d] : m.support())
    op.blocks[v] = {v, MatF::Identity(d, d)};
  return op;
}

WeightOperator composeOperators(const WeightOperator& second,
                                const WeightOperator& first) {
  WeightOperator out;
  for (auto& [v, blk] : first.blocks) {
    auto it = second.blocks.find(blk.first);
    if (it == second.blocks.end())
      throw InternalError("operator composition: missing block at v=" +
                          vkeyStr(blk.first));
    out.blocks[v] = {it->second.first, it->second.second * blk.second};
  }
  return out;
}

WeightOperator inverseOperator(const WeightOperator& op) {
  WeightOperator out;
  for (auto& [v, blk] : op.blocks) {
    if (blk.second.rows() != blk.second.cols())
      throw InternalError("cannot invert a non-square block at v=" +
                          vkeyStr(v));
    out.blocks[blk.first] = {v, inverseMatrix(blk.second)};
  }
  return out;
}

bool sameShape(const WeightOperator& a, const WeightOperator& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (auto& [v, blk] : a.blocks) {
    auto it = b.blocks.find(v);
    if (it == b.blocks.end()) return false;
    if (!(it->second.first == blk.first)) return false;
    if (it->second.second.rows() != blk.second.rows() ||
        it->second.second.cols() != blk.second.cols())
      return false;
  }
  return true;
}

WeightOperator subtractOperators(const WeightOperator& a,
                                 const WeightOperator& b) {
  if (!sameShape(a, b))
    throw InternalError("operator difference of mismatched shapes");
  WeightOperator out;
  for (auto& [v, blk] : a.blocks)
    out.blocks[v] = {blk.first, blk.second - b.blocks.at(v).second};
  return out;
}

BraidWord parseBraidWord(const std::string& text, const CartanData& cd) {
  BraidWord word;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    BraidLetter l;
    size_t pos = 0;
    if (tok.rfind("Th", 0) == 0) {
      l.theta = true;
      pos = 2;
    } else if (tok.rfind("T", 0) == 0) {
      pos = 1;
    } else {
      throw ValidationError("unknown braid letter '" + tok + "'");
    }
    auto caret = tok.find('^');
    std::string name = tok.substr(pos, caret == std::string::npos
                                           ? std::string::npos
                                           : caret - pos);
    l.vertex = cd.vertexIndex(name);
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      if (e == "-1")
        l.exponent = -1;
      else if (e == "1" || e == "+1")
        l.exponent = 1;
      else
        throw ValidationError("braid letter exponent must be 1 or -1: " + tok);
    }
    word.letters.push_back(l);
  }
  return word;
}

std::string braidWordStr(const BraidWord& word, const CartanData& cd) {
  std::ostringstream os;
  bool first = true;
  for (auto& l : word.letters) {
    if (!first) os << " ";
    first = false;
    os << (l.theta ? "Th" : "T") << cd.vertexName(l.vertex);
    if (l.exponent == -1) os << "^-1";
  }
  return os.str();
}

WeightOperator rickardOperator(const IntegrableModule& m, int i,
                               const ExponentRule& rule) {
  if (m.truncated())
    throw ValidationError(
        "braid operators are only defined on complete modules");
  const CartanData& cd = m.cartan();
  WeightOperator op;
  for (auto& [v, d] : m.support()) {
    const long n = pairing(cd, m.weightOf(v), i);
    VKey target = reflect(cd, m.weightOf(v), i).v;
    const int td = m.dim(target);
    MatF acc = MatF::Zero(td, d);
    // The sum is finite: e^{(l)} vanishes once l exceeds v_i, and on a
    // nonzero weight space the lower bound max(0, -n) never does.
    for (long l = std::max<long>(0, -n); l <= v[i]; ++l) {
      // e^{(l)} : M(lambda) -> M(lambda + l alpha_i)
      VKey mid = v;
      mid[i] -= l;
      MatF el = l == 0 ? MatF::Identity(d, d) : m.eDivided(i, l, v);
      long fr = n + l;
      MatF fl = fr == 0 ? MatF::Identity(m.dim(mid), m.dim(mid))
                        : m.fDivided(i, fr, mid);
      // The complex alternates with (-1)^l; under this module's commutator
      // convention (f e - e f = [n], the lowering operators carry the gauge
      // sign) the divided power f^{(n+l)} contributes (-1)^{n+l}, so the
      // alternation is already absorbed up to the constant block sign
      // (-1)^n, which is dropped.
      MatF term = fl * el;
      QFraction c{QLaurent::q(rule.sigma(l, n))};
      acc += term * c;
    }
    op.blocks[v] = {target, std::move(acc)};
  }
  return op;
}

namespace {

WeightOperator generatorOperator(const IntegrableModule& m,
                                 const BraidLetter& l,
                                 const ExponentRule& rule) {
  if (l.theta)
    throw UnsupportedError(
        "Theta generators are line-bundle twists; they act in the geometric "
        "model only, not on algebraic modules");
  WeightOperator t = rickardOperator(m, l.vertex, rule);
  return l.exponent == 1 ? t : inverseOperator(t);
}

}  // namespace

WeightOperator evaluateBraidWord(const BraidWord& word,
                                 const IntegrableModule& m,
                                 const ExponentRule& rule) {
  WeightOperator acc = identityOperator(m);
  // Leftmost letter first.
  for (auto& l : word.letters)
    acc = composeOperators(generatorOperator(m, l, rule), acc);
  return acc;
}

std::vector<RelationCheck> verifyBraidRelations(const IntegrableModule& m,
                                                const ExponentRule& rule) {
  const CartanData& cd = m.cartan();
  const int n = cd.rank();
  std::vector<RelationCheck> out;
  std::vector<WeightOperator> gens;
  for (int i = 0; i < n; ++i) gens.push_back(rickardOperator(m, i, rule));

  for (int i = 0; i < n; ++i) {
    RelationCheck inv{"braid-invertible",
                      "every T_i weight block is invertible",
                      "i=" + cd.vertexName(i), true, ""};
    RelationCheck wc{"braid-weight",
                     "T_i maps M(lambda) to M(s_i lambda)",
                     "i=" + cd.vertexName(i), true, ""};
    for (auto& [v, blk] : gens[i].blocks) {
      if (!(blk.first == reflect(cd, m.weightOf(v), i).v)) {
        wc.pass = false;
        wc.detail = "wrong target at v=" + vkeyStr(v);
      }
      if (blk.second.rows() != blk.second.cols() ||
          !isInvertible(blk.second)) {
        inv.pass = false;
        inv.detail = "singular block at v=" + vkeyStr(v);
      }
    }
    out.push_back(inv);
    out.push_back(wc);
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (cd.adjacent(i, j)) {
        WeightOperator lhs = composeOperators(
            gens[i], composeOperators(gens[j], gens[i]));
        WeightOperator rhs = composeOperators(
            gens[j], composeOperators(gens[i], gens[j]));
        RelationCheck c{"braid-relation",
                        "T_i T_j T_i = T_j T_i T_j on edges",
                        "i=" + cd.vertexName(i) + " j=" + cd.vertexName(j),
                        true, ""};
        WeightOperator diff = subtractOperators(lhs, rhs);
        if (!diff.isZero()) {
          c.pass = false;
          for (auto& [v, blk] : diff.blocks)
            if (!isZeroMatrix(blk.second)) {
              c.detail = "residual at v=" + vkeyStr(v);
              break;
            }
        }
        out.push_back(c);
      } else {
        WeightOperator lhs = composeOperators(gens[i], gens[j]);
        WeightOperator rhs = composeOperators(gens[j], gens[i]);
        RelationCheck c{"braid-commute", "T_i T_j = T_j T_i off edges",
                        "i=" + cd.vertexName(i) + " j=" + cd.vertexName(j),
                        true, ""};
        if (!subtractOperators(lhs, rhs).isZero()) c.pass = false;
        out.push_back(c);
      }
    }
  return out;
}

CalibrationResult calibrateConvention(std::shared_ptr<const CartanData> cd) {
  if (!isFiniteType(*cd))
    throw ValidationError("calibration requires a finite-type graph");
  int ei = -1, ej = -1;
  for (int i = 0; i < cd->rank() && ei < 0; ++i)
    for (int j : cd->neighbors(i)) {
      ei = i;
      ej = j;
      break;
    }
  if (ei < 0)
    throw ValidationError("calibration requires a graph with an edge");

  // The fundamental module alone is too small to pin the rule down (every
  // candidate passes on one-dimensional weight spaces), so the module with
  // highest weight Lambda_i + Lambda_j is probed as well; the calibrated rule
  // is required to be stable across both.
  VKey w(cd->rank(), 0);
  w[ei] = 1;
  IntegrableModule probe = buildModule(cd, w);
  VKey w2 = w;
  w2[ej] = 1;
  IntegrableModule probe2 = buildModule(cd, w2);

  // Candidates ordered by size so the chosen rule is the smallest passing one.
  std::vector<ExponentRule> candidates;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) candidates.push_back({a, b});
  std::sort(candidates.begin(), candidates.end(),
            [](const ExponentRule& x, const ExponentRule& y) {
              long sx = std::abs(x.a) + std::abs(x.b);
              long sy = std::abs(y.a) + std::abs(y.b);
              if (sx != sy) return sx < sy;
              if (x.a != y.a) return x.a < y.a;
              return x.b < y.b;
            });

  CalibrationResult result;
  for (const auto& rule : candidates) {
    bool ok = true;
    std::string why;
    try {
      for (const IntegrableModule* m : {&probe, &probe2}) {
        for (auto& check : verifyBraidRelations(*m, rule))
          if (!check.pass) {
            ok = false;
            why = check.name + " " + check.instance + " on w=(" +
                  vkeyStr(m->w()) + ")";
            break;
          }
        if (!ok) break;
      }
    } catch (const InternalError& e) {
      ok = false;
      why = e.what();
    }
    if (ok)
      result.passing.push_back(rule);
    else
      result.failures.push_back(rule.str() + ": " + why);
  }
  if (result.passing.empty()) {
    std::string msg = "no exponent rule passes calibration;";
    for (auto& f : result.failures) msg += "\n  " + f;
    throw ValidationError(msg);
  }
  result.chosen = result.passing.front();
  return result;
}

}  // namespace qkt
