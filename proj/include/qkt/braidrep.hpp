// Braid-group operators on integrable modules. The generator attached to a
// vertex acts on a weight space M(lambda), n = <lambda, alpha_i>, by the
// divided-power sum
//     T_i = sum_{l >= max(0,-n)} q^{sigma(l)} f_i^{(n+l)} e_i^{(l)},
// a finite sum by integrability, mapping M(lambda) to M(s_i lambda). The
// underlying complex alternates with (-1)^l, but under this library's
// commutator convention (f e - e f = [n] id) the lowering operators carry the
// gauge sign and f^{(n+l)} contributes (-1)^{n+l}, so the alternation is
// absorbed up to a constant sign per weight block, which is dropped. The
// q-power sigma(l) is not assumed: it is calibrated over a small affine-linear
// family by demanding invertibility and the braid relation, and the chosen
// rule is carried into every report.

#pragma once

#include <string>
#include <vector>

#include "qkt/repbuilder.hpp"
#include "qkt/weightop.hpp"

namespace qkt {

struct BraidLetter {
  bool theta = false;  // Theta generators exist only in the geometric model
  int vertex = -1;
  int exponent = 1;  // +1 or -1
};

struct BraidWord {
  std::vector<BraidLetter> letters;  // applied leftmost first
};

/// Tokens "T1", "T2^-1", "Th1", "Th1^-1", whitespace-separated.
BraidWord parseBraidWord(const std::string& text, const CartanData& cd);
std::string braidWordStr(const BraidWord& word, const CartanData& cd);

/// sigma(l) = a*l + b*l*(n+l) on a weight space with pairing n.
struct ExponentRule {
  long a = 0;
  long b = 0;
  long sigma(long l, long n) const { return a * l + b * l * (n + l); }
  std::string str() const {
    return "sigma(l) = " + std::to_string(a) + "*l + " + std::to_string(b) +
           "*l*(n+l)";
  }
  friend bool operator==(const ExponentRule&, const ExponentRule&) = default;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The braid generator at vertex i under the given exponent rule.
/// Requires a complete module.
WeightOperator rickardOperator(const IntegrableModule& m, int i,
                               const ExponentRule& rule);

struct CalibrationResult {
  ExponentRule chosen;
  std::vector<ExponentRule> passing;
  std::vector<std::string> failures;  // one line per failing candidate
};

/// Scan small integer (a, b) for rules making every generator block
/// invertible and the braid relation hold on the module V(Lambda_i) of the
/// first edge (i, j) of the graph. Requires finite type with at least one
/// edge. Throws with the failure list when nothing passes.
CalibrationResult calibrateConvention(std::shared_ptr<const CartanData> cd);

/// Composition of generator operators, leftmost letter applied first;
/// inverses are exact blockwise matrix inverses. Theta letters are rejected
/// on algebraic modules.
WeightOperator evaluateBraidWord(const BraidWord& word,
                                 const IntegrableModule& m,
                                 const ExponentRule& rule);

/// Braid relations for every generator pair, plus invertibility and
/// weight compatibility of every generator block.
std::vector<RelationCheck> verifyBraidRelations(const IntegrableModule& m,
                                                const ExponentRule& rule);

}  // namespace qkt
