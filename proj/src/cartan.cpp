#include "qkt/cartan.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qkt {

std::string vkeyStr(const VKey& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string Weight::str() const {
  return "w=" + vkeyStr(w) + ";v=" + vkeyStr(v);
}

int CartanData::vertexIndex(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw ValidationError("unknown vertex '" + name + "'");
  return it->second;
}

int CartanData::epsilon(int from, int to) const {
  auto it = epsilon_.find({from, to});
  if (it == epsilon_.end())
    throw ValidationError("no edge between vertices " + vertexName(from) +
                          " and " + vertexName(to));
  return it->second;
}

CartanData buildCartan(const GraphData& graph) {
  CartanData cd;
  cd.graph_ = graph;
  const int n = static_cast<int>(graph.vertices.size());
  if (n == 0) throw ValidationError("graph has no vertices");
  for (int i = 0; i < n; ++i) {
    if (!cd.index_.emplace(graph.vertices[i], i).second)
      throw ValidationError("duplicate vertex '" + graph.vertices[i] + "'");
  }
  cd.cartan_ = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) cd.cartan_(i, i) = 2;
  cd.adjacency_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : graph.edges) {
    int i = cd.vertexIndex(a), j = cd.vertexIndex(b);
    if (i == j)
      throw ValidationError("edge loop at vertex '" + a + "' is not allowed");
    auto key = std::minmax(i, j);
    if (!seen.insert({key.first, key.second}).second)
      throw ValidationError("duplicate edge between '" + a + "' and '" + b +
                            "'");
    cd.cartan_(i, j) = -1;
    cd.cartan_(j, i) = -1;
    cd.adjacency_[i].push_back(j);
    cd.adjacency_[j].push_back(i);
  }
  for (auto& adj : cd.adjacency_) std::sort(adj.begin(), adj.end());

  // Orientation defaults to the written edge order. The sign function is
  // +1 on the chosen directions and -1 on the reversed copies; nothing in
  // this library computes with it, it is carried for completeness.
  auto orient = graph.orientation;
  if (orient.empty()) orient = graph.edges;
  std::set<std::pair<int, int>> covered;
  for (auto& [a, b] : orient) {
    int i = cd.vertexIndex(a), j = cd.vertexIndex(b);
    if (cd.cartan_(i, j) != -1)
      throw ValidationError("orientation names a non-edge '" + a + "'-'" + b +
                            "'");
    auto key = std::minmax(i, j);
    if (!covered.insert({key.first, key.second}).second)
      throw ValidationError("orientation covers edge '" + a + "'-'" + b +
                            "' twice");
    cd.epsilon_[{i, j}] = 1;
    cd.epsilon_[{j, i}] = -1;
  }
  if (covered.size() != seen.size())
    throw ValidationError("orientation does not cover every edge");
  cd.graph_.orientation = orient;
  return cd;
}

long pairing(const CartanData& cd, const Weight& lam, int i) {
  const int n = cd.rank();
  if (i < 0 || i >= n) throw ValidationError("vertex index out of range");
  if (static_cast<int>(lam.w.size()) != n ||
      static_cast<int>(lam.v.size()) != n)
    throw ValidationError("weight vectors do not match the graph rank");
  long cv = 0;
  for (int j = 0; j < n; ++j) cv += cd.cartanMatrix()(i, j) * lam.v[j];
  return lam.w[i] - cv;
}

long pairingRoot(const CartanData& cd, const Weight& lam, const VKey& u) {
  long acc = 0;
  for (int i = 0; i < cd.rank(); ++i)
    if (u[i] != 0) acc += u[i] * pairing(cd, lam, i);
  return acc;
}

long rootNorm(const CartanData& cd, const VKey& u, const VKey& u2) {
  const int n = cd.rank();
  long acc = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      acc += u[i] * cd.cartanMatrix()(i, j) * u2[j];
  return acc;
}

Weight reflect(const CartanData& cd, const Weight& lam, int i) {
  Weight r = lam;
  r.v[i] += pairing(cd, lam, i);
  return r;
}

long neighborSum(const CartanData& cd, const Weight& lam, int i) {
  if (i < 0 || i >= cd.rank())
    throw ValidationError("vertex index out of range");
  long acc = lam.w[i];
  for (int j : cd.neighbors(i)) acc += lam.v[j];
  return acc;
}

long height(const VKey& v) {
  long h = 0;
  for (long x : v) h += x;
  return h;
}

Weight makeWeight(VKey w, VKey v) { return Weight{std::move(w), std::move(v)}; }

Weight highestWeight(const VKey& w) {
  return Weight{w, VKey(w.size(), 0)};
}

bool isFiniteType(const CartanData& cd) {
  // Positive definiteness via exact Bareiss elimination: after step k the
  // pivot m[k][k] equals the (k+1)-th leading principal minor, so the matrix
  // is positive definite iff every pivot stays positive.
  const int n = cd.rank();
  std::vector<std::vector<long>> m(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = cd.cartanMatrix()(i, j);
  long prev = 1;
  for (int col = 0; col < n; ++col) {
    if (m[col][col] <= 0) return false;
    for (int i = col + 1; i < n; ++i) {
      for (int j = col + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[col][col];
  }
  return true;
}

VKey lowestWeightV(const CartanData& cd, const VKey& w) {
  Weight lam = highestWeight(w);
  // Walk down the orbit; in finite type the antidominant chamber is reached
  // after finitely many simple reflections.
  const long guard = 1000000;
  for (long steps = 0; steps < guard; ++steps) {
    int pos = -1;
    for (int i = 0; i < cd.rank(); ++i)
      if (pairing(cd, lam, i) > 0) {
        pos = i;
        break;
      }
    if (pos < 0) return lam.v;
    lam = reflect(cd, lam, pos);
  }
  throw ValidationError(
      "Weyl orbit walk did not terminate; graph is not of finite type");
}

std::vector<VKey> positiveRoots(const CartanData& cd) {
  const int n = cd.rank();
  std::set<VKey> known;
  std::vector<VKey> frontier;
  for (int i = 0; i < n; ++i) {
    VKey e(n, 0);
    e[i] = 1;
    known.insert(e);
    frontier.push_back(e);
  }
  // Close under root strings: beta + alpha_i is a root iff
  // p - <beta, alpha_i> > 0 where p is the largest j with beta - j alpha_i
  // still a root.
  while (!frontier.empty()) {
    std::vector<VKey> next;
    for (const auto& beta : frontier) {
      for (int i = 0; i < n; ++i) {
        long p = 0;
        VKey down = beta;
        while (true) {
          down[i] -= 1;
          bool nonneg = down[i] >= 0;
          if (!nonneg || !known.count(down)) break;
          ++p;
        }
        VKey ei(n, 0);
        ei[i] = 1;
        long pair = rootNorm(cd, beta, ei);
        if (p - pair > 0) {
          VKey up = beta;
          up[i] += 1;
          if (known.insert(up).second) next.push_back(up);
        }
      }
    }
    frontier = std::move(next);
    if (known.size() > 100000)
      throw ValidationError("root system is too large; not finite type?");
  }
  std::vector<VKey> roots(known.begin(), known.end());
  std::sort(roots.begin(), roots.end(), [](const VKey& a, const VKey& b) {
    long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return roots;
}

std::vector<VKey> weylOrbit(const CartanData& cd, const VKey& w) {
  std::set<VKey> seen;
  std::vector<VKey> frontier{VKey(w.size(), 0)};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<VKey> next;
    for (const auto& v : frontier) {
      Weight lam{w, v};
      for (int i = 0; i < cd.rank(); ++i) {
        VKey r = reflect(cd, lam, i).v;
        if (seen.insert(r).second) next.push_back(r);
      }
    }
    frontier = std::move(next);
    if (seen.size() > 1000000)
      throw ValidationError("Weyl orbit is too large; not finite type?");
  }
  return {seen.begin(), seen.end()};
}

namespace {

std::pair<int, int> lineColOfOffset(const std::string& text, size_t offset) {
  int line = 1, col = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

GraphFile parseGraphJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = lineColOfOffset(text, e.byte);
    throw ValidationError("graph file parse error at line " +
                          std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
  }
  GraphFile gf;
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw ValidationError("graph file needs a \"vertices\" array");
  for (auto& v : j["vertices"]) {
    if (v.is_string())
      gf.graph.vertices.push_back(v.get<std::string>());
    else
      gf.graph.vertices.push_back(v.dump());
  }
  if (j.contains("edges")) {
    for (auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw ValidationError("each edge must be a pair of vertex names");
      auto name = [](const nlohmann::json& x) {
        return x.is_string() ? x.get<std::string>() : x.dump();
      };
      gf.graph.edges.emplace_back(name(e[0]), name(e[1]));
    }
  }
  if (j.contains("orientation")) {
    for (auto& e : j["orientation"]) {
      if (!e.is_array() || e.size() != 2)
        throw ValidationError("each oriented edge must be a pair");
      gf.graph.orientation.emplace_back(e[0].get<std::string>(),
                                        e[1].get<std::string>());
    }
  }
  if (j.contains("w")) {
    std::map<std::string, long> wm;
    for (auto& [k, val] : j["w"].items()) wm[k] = val.get<long>();
    gf.w = wm;
  }
  return gf;
}

GraphFile loadGraphFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parseGraphJson(ss.str());
}

VKey wVectorFromMap(const CartanData& cd,
                    const std::map<std::string, long>& wmap) {
  VKey w(cd.rank(), 0);
  for (auto& [name, val] : wmap) {
    if (val < 0)
      throw ValidationError("framing value for vertex '" + name +
                            "' must be nonnegative");
    w[cd.vertexIndex(name)] = val;
  }
  return w;
}

}  // namespace qkt
