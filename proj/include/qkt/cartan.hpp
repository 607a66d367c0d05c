// Simply-laced Cartan data attached to a finite loop-free graph: the Cartan
// matrix, weights in (w, v) coordinates, pairings against simple roots, and
// simple reflections. Weights are always stored as a framing vector w and a
// root-coefficient vector v, never as coordinates in a full weight lattice;
// every pairing used anywhere in this library factors through (w, v).

#pragma once

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qkt/qlaurent.hpp"

namespace qkt {

using IntMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;
using VKey = std::vector<long>;  // root coefficients, indexed by vertex order

struct GraphData {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  // One directed copy of each edge; defaults to the order edges are written.
  std::vector<std::pair<std::string, std::string>> orientation;
};

/// Weight lambda = Lambda_w - alpha_v.
struct Weight {
  VKey w;
  VKey v;
  friend bool operator==(const Weight& a, const Weight& b) {
    return a.w == b.w && a.v == b.v;
  }
  friend auto operator<=>(const Weight& a, const Weight& b) = default;
  std::string str() const;
};

class CartanData {
 public:
  const GraphData& graph() const { return graph_; }
  const IntMatrix& cartanMatrix() const { return cartan_; }
  int rank() const { return static_cast<int>(graph_.vertices.size()); }

  int vertexIndex(const std::string& name) const;
  const std::string& vertexName(int i) const { return graph_.vertices.at(i); }
  const std::vector<int>& neighbors(int i) const { return adjacency_.at(i); }
  bool adjacent(int i, int j) const { return cartan_(i, j) == -1; }

  /// +1 on the chosen orientation, -1 on the reversed edges.
  int epsilon(int from, int to) const;

  friend CartanData buildCartan(const GraphData& graph);

 private:
  GraphData graph_;
  IntMatrix cartan_;
  std::vector<std::vector<int>> adjacency_;
  std::map<std::string, int> index_;
  std::map<std::pair<int, int>, int> epsilon_;
};

/// Validates the graph and assembles the Cartan matrix (2 on the diagonal,
/// -1 on edges, 0 otherwise). Rejects loops and repeated edges, naming the
/// offending edge.
CartanData buildCartan(const GraphData& graph);

/// <lambda, alpha_i> = w_i - (C v)_i.
long pairing(const CartanData& cd, const Weight& lam, int i);

/// <lambda, alpha_u> for a root coefficient vector u.
long pairingRoot(const CartanData& cd, const Weight& lam, const VKey& u);

/// <alpha_u, alpha_u'> = u^T C u'.
long rootNorm(const CartanData& cd, const VKey& u, const VKey& u2);

/// s_i(lambda) = lambda - <lambda, alpha_i> alpha_i; same w, shifted v.
Weight reflect(const CartanData& cd, const Weight& lam, int i);

/// N_i = w_i + sum of v over the neighbors of i.
long neighborSum(const CartanData& cd, const Weight& lam, int i);

long height(const VKey& v);
Weight makeWeight(VKey w, VKey v);
Weight highestWeight(const VKey& w);

/// True when the Cartan matrix is positive definite (all leading principal
/// minors positive, exact integer arithmetic).
bool isFiniteType(const CartanData& cd);

/// The v-vector of the antidominant element of the Weyl orbit of Lambda_w.
/// Only terminates for finite type; callers must check isFiniteType first.
VKey lowestWeightV(const CartanData& cd, const VKey& w);

/// All positive roots, as coefficient vectors, for finite-type data,
/// ordered by (height, lex).
std::vector<VKey> positiveRoots(const CartanData& cd);

/// Weyl orbit of Lambda_w as a set of v-keys (finite type).
std::vector<VKey> weylOrbit(const CartanData& cd, const VKey& w);

struct GraphFile {
  GraphData graph;
  std::optional<std::map<std::string, long>> w;
};

/// Parse the graph input format:
/// { "vertices": ["0","1"], "edges": [["0","1"]], "w": {"0": 2} }.
/// Reports parse errors with line numbers.
GraphFile parseGraphJson(const std::string& text);
GraphFile loadGraphFile(const std::string& path);

/// w map (by vertex name) -> w vector in vertex order; missing names are 0.
VKey wVectorFromMap(const CartanData& cd,
                    const std::map<std::string, long>& wmap);

std::string vkeyStr(const VKey& v);

}  // namespace qkt
