// Symbolic terms in the modified quantum group: weighted words in divided
// power generators E(i,r), F(i,r) and weight idempotents a_lambda, with
// idempotent rewriting and evaluation on built modules. Term equality is
// deliberately operational: two terms are considered equal when they evaluate
// equally on a designated family of modules.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkt/cartan.hpp"
#include "qkt/qlaurent.hpp"
#include "qkt/weightop.hpp"

namespace qkt {

struct Letter {
  enum class Kind { E, F, Idem };
  Kind kind = Kind::Idem;
  int vertex = -1;  // E / F
  long power = 1;   // divided power order for E / F
  Weight weight;    // Idem

  static Letter e(int i, long r = 1) { return {Kind::E, i, r, {}}; }
  static Letter f(int i, long r = 1) { return {Kind::F, i, r, {}}; }
  static Letter idem(Weight w) { return {Kind::Idem, -1, 1, std::move(w)}; }
};

/// scalar * word, letters applied right to left.
struct UdotTerm {
  QLaurent scalar = QLaurent(1);
  std::vector<Letter> word;
};

/// Idempotent-free word with the collapsed rightmost idempotent (the source
/// weight) and the weight flow after each letter. zero marks terms whose
/// idempotent flow is inconsistent.
struct NormalizedTerm {
  bool zero = false;
  QLaurent scalar;
  std::vector<Letter> word;            // E / F letters only
  std::optional<Weight> source;        // rightmost idempotent, if any
  std::vector<Weight> flow;            // weights after each letter (when
                                       // source is present); flow[k] is the
                                       // weight after applying the k-th
                                       // letter from the right
};

/// Push all idempotents to the rightmost position using
/// e_i a_lambda = a_{lambda + alpha_i} e_i and a_lambda a_mu =
/// delta a_lambda; returns a zero term when the flow is inconsistent.
NormalizedTerm normalizeIdempotents(const UdotTerm& term);

/// Exact block matrices of the term on every weight space of the module.
/// E(i,r) and F(i,r) act by the module's divided-power matrices.
WeightOperator evaluateTerm(const UdotTerm& term, const IntegrableModule& m);

/// Text syntax: whitespace-separated letters, e.g. "E1^(2) F2 a[w=1,0;v=0,0]",
/// applied right to left. Vertex names are resolved against the Cartan data.
UdotTerm parseTerm(const std::string& text, const CartanData& cd);
std::string termStr(const UdotTerm& term, const CartanData& cd);

}  // namespace qkt
