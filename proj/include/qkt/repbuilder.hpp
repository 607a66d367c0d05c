// Construction of the integrable irreducible highest-weight module V(Lambda_w)
// with exact generator matrices. Weight spaces are built level by level:
// f-monomials applied to the highest-weight vector span each space, the
// contravariant Gram matrix is computed by commuting raising operators through
// the monomials, and a basis is selected as the first maximal subset of
// monomials whose Gram minor is nonsingular. Generator matrices and the Gram
// data of the quotient are derived along the way.
//
// Everything is exact over QLaurent / QFraction. The commutator convention
// used throughout is
//     (f_j e_i - e_i f_j) a_lambda = delta_ij [<lambda, alpha_i>] a_lambda,
// and the contravariant form satisfies <f x, y> = <x, e y>.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qkt/cartan.hpp"
#include "qkt/eigen.hpp"

namespace qkt {

/// Monomial label: vertex indices of the f-letters, leftmost applied last.
using MonomialLabel = std::vector<int>;

class IntegrableModule {
 public:
  const CartanData& cartan() const { return *cartan_; }
  std::shared_ptr<const CartanData> cartanPtr() const { return cartan_; }
  const VKey& w() const { return w_; }
  long depthLimit() const { return depthLimit_; }
  bool truncated() const { return truncated_; }

  const std::map<VKey, int>& support() const { return support_; }
  int dim(const VKey& v) const;
  bool inSupport(const VKey& v) const { return support_.count(v) != 0; }
  const std::vector<MonomialLabel>& basisLabels(const VKey& v) const;
  const MatF& gram(const VKey& v) const;

  Weight weightOf(const VKey& v) const { return Weight{w_, v}; }
  long pairingAt(const VKey& v, int i) const {
    return pairing(*cartan_, weightOf(v), i);
  }

  /// Matrix of e_i on M(lambda), lambda = Lambda_w - alpha_v; the target
  /// weight space is M(lambda + alpha_i). Returns a correctly shaped zero
  /// matrix when either space is absent.
  MatF eMatrix(int i, const VKey& v) const;
  /// Matrix of f_i on M(lambda); target M(lambda - alpha_i).
  MatF fMatrix(int i, const VKey& v) const;

  /// Divided powers: the r-fold generator product divided by [r]!.
  MatF eDivided(int i, long r, const VKey& v) const;
  MatF fDivided(int i, long r, const VKey& v) const;

  friend IntegrableModule buildModule(std::shared_ptr<const CartanData> cd,
                                      VKey w, std::optional<long> depthLimit);
  friend IntegrableModule moduleFromJson(const std::string& text);

 private:
  std::shared_ptr<const CartanData> cartan_;
  VKey w_;
  long depthLimit_ = 0;
  bool truncated_ = false;
  std::map<VKey, int> support_;
  std::map<VKey, std::vector<MonomialLabel>> labels_;
  std::map<VKey, MatF> gram_;
  // Keyed by (vertex, source v).
  std::map<std::pair<int, VKey>, MatF> eMat_, fMat_;
};

/// Build V(Lambda_w). For finite-type graphs the depth limit defaults to the
/// height of Lambda_w minus the lowest weight and the module is complete; for
/// other graphs a depth limit is required and the result is flagged truncated
/// when the limit cuts the module off.
IntegrableModule buildModule(std::shared_ptr<const CartanData> cd, VKey w,
                             std::optional<long> depthLimit = std::nullopt);

/// Multiplicity map of a complete module. Throws on truncated input.
std::map<VKey, long> character(const IntegrableModule& m);

struct RelationCheck {
  std::string name;      // stable identifier, e.g. "commutator"
  std::string identity;  // the identity being instantiated, as a formula
  std::string instance;  // which weight/vertices
  bool pass = false;
  std::string detail;    // counterexample description when failing
};

/// The relation suite: commutators, mixed commutators, Serre relations for
/// e and f, divided-power identities, Weyl symmetry of the support and
/// string finiteness. On truncated modules, checks that would reach past the
/// depth limit are skipped.
std::vector<RelationCheck> verifyModuleRelations(const IntegrableModule& m);

/// Deterministic JSON serialization (canonical entry strings, weights ordered
/// by height then lexicographically).
std::string moduleToJson(const IntegrableModule& m);
IntegrableModule moduleFromJson(const std::string& text);

}  // namespace qkt
