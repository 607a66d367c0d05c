#include "qkt/udot.hpp"

#include <sstream>

namespace qkt {

namespace {

Weight shiftWeight(const Weight& lam, int vertex, long dv) {
  Weight r = lam;
  r.v[vertex] += dv;
  return r;
}

}  // namespace

NormalizedTerm normalizeIdempotents(const UdotTerm& term) {
  NormalizedTerm out;
  out.scalar = term.scalar;
  if (out.scalar.isZero()) {
    out.zero = true;
    return out;
  }
  // Walk right to left, tracking the weight constraint induced by the
  // idempotents seen so far, transported through E and F letters.
  std::optional<Weight> current;  // weight at the current reading position
  std::optional<Weight> source;   // the same constraint at the right end
  std::vector<Letter> letters;    // E/F letters, right to left
  for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) {
    const Letter& l = *it;
    switch (l.kind) {
      case Letter::Kind::Idem:
        if (current && !(*current == l.weight)) {
          out.zero = true;
          return out;
        }
        if (!current) {
          current = l.weight;
          // Transport the constraint back through the letters already read
          // to find the rightmost idempotent.
          Weight src = l.weight;
          for (auto jt = letters.rbegin(); jt != letters.rend(); ++jt) {
            src = shiftWeight(src, jt->vertex,
                              jt->kind == Letter::Kind::E ? jt->power
                                                          : -jt->power);
          }
          source = src;
        }
        break;
      case Letter::Kind::E:
        letters.push_back(l);
        if (current) *current = shiftWeight(*current, l.vertex, -l.power);
        break;
      case Letter::Kind::F:
        letters.push_back(l);
        if (current) *current = shiftWeight(*current, l.vertex, l.power);
        break;
    }
  }
  out.word.assign(letters.rbegin(), letters.rend());
  out.source = source;
  if (source) {
    Weight cur = *source;
    out.flow.clear();
    for (auto it = out.word.rbegin(); it != out.word.rend(); ++it) {
      cur = shiftWeight(cur, it->vertex,
                        it->kind == Letter::Kind::E ? -it->power : it->power);
      out.flow.push_back(cur);
    }
  }
  return out;
}

WeightOperator evaluateTerm(const UdotTerm& term, const IntegrableModule& m) {
  const CartanData& cd = m.cartan();
  const int n = cd.rank();
  for (const Letter& l : term.word) {
    if (l.kind == Letter::Kind::Idem) {
      if (static_cast<int>(l.weight.w.size()) != n ||
          static_cast<int>(l.weight.v.size()) != n)
        throw ValidationError("term idempotent does not match the graph rank");
      if (l.weight.w != m.w())
        throw ValidationError(
            "term idempotent has a different framing vector than the module");
    } else if (l.vertex < 0 || l.vertex >= n) {
      throw ValidationError("term letter names an unknown vertex");
    }
  }

  NormalizedTerm nt = normalizeIdempotents(term);
  WeightOperator op;
  QFraction scalar{nt.zero ? QLaurent() : nt.scalar};

  for (auto& [v, d] : m.support()) {
    Weight lam = m.weightOf(v);
    // A wrong rightmost idempotent makes the whole block zero; the formal
    // target weight is still tracked so the block shape stays meaningful.
    QFraction blockScalar =
        (nt.source && !(lam == *nt.source)) ? QFraction(0) : scalar;
    MatF acc = MatF::Identity(d, d) * blockScalar;
    VKey cur = v;
    for (auto it = nt.word.rbegin(); it != nt.word.rend(); ++it) {
      if (it->kind == Letter::Kind::E) {
        acc = (m.eDivided(it->vertex, it->power, cur) * acc).eval();
        cur[it->vertex] -= it->power;
      } else {
        acc = (m.fDivided(it->vertex, it->power, cur) * acc).eval();
        cur[it->vertex] += it->power;
      }
    }
    op.blocks[v] = {cur, std::move(acc)};
  }
  return op;
}

namespace {

VKey parseVKey(const std::string& text, int rank, const std::string& ctx) {
  VKey out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (...) {
      throw ValidationError("bad integer '" + item + "' in " + ctx);
    }
  }
  if (static_cast<int>(out.size()) != rank)
    throw ValidationError(ctx + " has wrong length for the graph");
  return out;
}

}  // namespace

UdotTerm parseTerm(const std::string& text, const CartanData& cd) {
  UdotTerm term;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    if (tok.empty()) continue;
    if (tok[0] == 'E' || tok[0] == 'F') {
      bool isE = tok[0] == 'E';
      std::string rest = tok.substr(1);
      long power = 1;
      auto caret = rest.find('^');
      if (caret != std::string::npos) {
        std::string p = rest.substr(caret + 1);
        if (p.size() < 3 || p.front() != '(' || p.back() != ')')
          throw ValidationError("divided power must look like ^(r): " + tok);
        power = std::stol(p.substr(1, p.size() - 2));
        if (power < 1) throw ValidationError("divided power must be >= 1");
        rest = rest.substr(0, caret);
      }
      int i = cd.vertexIndex(rest);
      term.word.push_back(isE ? Letter::e(i, power) : Letter::f(i, power));
    } else if (tok[0] == 'a') {
      // a[w=..;v=..]
      auto open = tok.find('['), close = tok.rfind(']');
      if (open == std::string::npos || close == std::string::npos ||
          close < open)
        throw ValidationError("idempotent must look like a[w=..;v=..]: " +
                              tok);
      std::string body = tok.substr(open + 1, close - open - 1);
      auto semi = body.find(';');
      if (semi == std::string::npos || body.substr(0, 2) != "w=" ||
          body.substr(semi + 1, 2) != "v=")
        throw ValidationError("idempotent must look like a[w=..;v=..]: " +
                              tok);
      Weight wt;
      wt.w = parseVKey(body.substr(2, semi - 2), cd.rank(), "idempotent w");
      wt.v = parseVKey(body.substr(semi + 3), cd.rank(), "idempotent v");
      term.word.push_back(Letter::idem(std::move(wt)));
    } else {
      throw ValidationError("unknown term letter '" + tok + "'");
    }
  }
  return term;
}

std::string termStr(const UdotTerm& term, const CartanData& cd) {
  std::ostringstream os;
  if (!term.scalar.isOne()) os << "(" << term.scalar.str() << ") ";
  bool first = true;
  for (const Letter& l : term.word) {
    if (!first) os << " ";
    first = false;
    switch (l.kind) {
      case Letter::Kind::E:
      case Letter::Kind::F:
        os << (l.kind == Letter::Kind::E ? "E" : "F") << cd.vertexName(l.vertex);
        if (l.power != 1) os << "^(" << l.power << ")";
        break;
      case Letter::Kind::Idem:
        os << "a[" << l.weight.str() << "]";
        break;
    }
  }
  if (term.word.empty()) os << "1";
  return os.str();
}

}  // namespace qkt
