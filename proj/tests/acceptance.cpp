// Acceptance suite: one criterion per block, one pass/fail line each, exit
// status zero only when everything passes. All tolerances are exact (zero);
// runtime bounds are asserted where stated.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "qkt/braidrep.hpp"
#include "qkt/freudenthal.hpp"
#include "qkt/ktlocal.hpp"
#include "qkt/quivergeom.hpp"
#include "qkt/repbuilder.hpp"
#include "qkt/report.hpp"

using namespace qkt;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool pass,
            const std::string& detail = "") {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++failures;
}

double seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::shared_ptr<const CartanData> pathGraph(int n) {
  GraphData g;
  for (int i = 1; i <= n; ++i) g.vertices.push_back(std::to_string(i));
  for (int i = 1; i < n; ++i)
    g.edges.emplace_back(std::to_string(i), std::to_string(i + 1));
  return std::make_shared<CartanData>(buildCartan(g));
}

std::shared_ptr<const CartanData> freeGraph(int n) {
  GraphData g;
  for (int i = 1; i <= n; ++i) g.vertices.push_back(std::to_string(i));
  return std::make_shared<CartanData>(buildCartan(g));
}

std::vector<VKey> framingsUpTo(int rank, long total) {
  std::vector<VKey> out;
  VKey cur(rank, 0);
  std::function<void(int, long)> gen = [&](int pos, long left) {
    if (pos == rank) {
      if (height(cur) > 0) out.push_back(cur);
      return;
    }
    for (long x = 0; x <= left; ++x) {
      cur[pos] = x;
      gen(pos + 1, left - x);
    }
    cur[pos] = 0;
  };
  gen(0, total);
  return out;
}

// Criterion 1: the relation suite on every module of the stated family.
void criterion1() {
  auto start = std::chrono::steady_clock::now();
  struct Family {
    const char* name;
    std::shared_ptr<const CartanData> cd;
  };
  std::vector<Family> graphs = {{"A1", pathGraph(1)},
                                {"A1xA1", freeGraph(2)},
                                {"A2", pathGraph(2)},
                                {"A3", pathGraph(3)}};
  long modules = 0, checks = 0;
  bool pass = true;
  std::string detail;
  for (auto& fam : graphs) {
    for (const VKey& w : framingsUpTo(fam.cd->rank(), 3)) {
      if (weylDimension(*fam.cd, w) > 20) continue;
      IntegrableModule m = buildModule(fam.cd, w);
      ++modules;
      for (auto& c : verifyModuleRelations(m)) {
        ++checks;
        if (!c.pass && pass) {
          pass = false;
          detail = std::string(fam.name) + " w=(" + vkeyStr(w) + ") " +
                   c.name + " " + c.instance;
        }
      }
    }
  }
  double secs = seconds(start);
  if (secs >= 60.0) {
    pass = false;
    detail = "runtime " + std::to_string(secs) + "s exceeds 60s";
  }
  std::ostringstream os;
  os << "relation suite on " << modules << " modules (" << checks
     << " exact identities), " << secs << "s";
  report(1, os.str(), pass, detail);
}

// Criterion 2: multiplicities against the independent recursion oracle.
void criterion2() {
  bool pass = true;
  std::string detail;
  struct Probe {
    std::shared_ptr<const CartanData> cd;
    VKey w;
  };
  std::vector<Probe> probes;
  for (const VKey& w : framingsUpTo(1, 3)) probes.push_back({pathGraph(1), w});
  for (const VKey& w : framingsUpTo(2, 3)) {
    auto cd = pathGraph(2);
    if (weylDimension(*cd, w) <= 20) probes.push_back({cd, w});
  }
  for (const VKey& w : framingsUpTo(3, 2)) {
    auto cd = pathGraph(3);
    if (weylDimension(*cd, w) <= 20) probes.push_back({cd, w});
  }
  long compared = 0;
  for (auto& p : probes) {
    IntegrableModule m = buildModule(p.cd, p.w);
    if (character(m) != freudenthalCharacter(*p.cd, p.w)) {
      pass = false;
      detail = "mismatch at w=(" + vkeyStr(p.w) + ")";
      break;
    }
    ++compared;
  }
  // the named instance: A2 w=(1,1) has total dimension 8 and a
  // two-dimensional zero weight space
  auto a2 = pathGraph(2);
  IntegrableModule m = buildModule(a2, {1, 1});
  long total = 0;
  for (auto& [v, d] : m.support()) total += d;
  if (total != 8 || m.dim({1, 1}) != 2) {
    pass = false;
    detail = "A2 w=(1,1) landmark failed";
  }
  std::ostringstream os;
  os << "multiplicity oracle agreement on " << compared
     << " modules; A2 w=(1,1) has total 8, zero-weight multiplicity 2";
  report(2, os.str(), pass, detail);
}

// Criterion 3: dimension calculators.
void criterion3() {
  bool pass = true;
  std::string detail;
  auto a1 = pathGraph(1);
  for (long N = 0; N <= 8 && pass; ++N)
    for (long k = 0; k <= N && pass; ++k)
      if (quiverDim(*a1, Weight{{N}, {k}}) != 2 * k * (N - k)) {
        pass = false;
        detail = "one-vertex dimension failed";
      }

  std::mt19937_64 rng(314159);
  std::uniform_int_distribution<int> nd(1, 5), coin(0, 2);
  std::uniform_int_distribution<long> val(0, 4), rd(1, 3);
  for (int trial = 0; trial < 200 && pass; ++trial) {
    GraphData g;
    int n = nd(rng);
    for (int i = 0; i < n; ++i) g.vertices.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng) == 0)
          g.edges.emplace_back(std::to_string(i), std::to_string(j));
    CartanData cd = buildCartan(g);
    std::uniform_int_distribution<int> vertexDist(0, n - 1);
    int i = vertexDist(rng);
    long r = rd(rng);
    Weight lam;
    for (int s = 0; s < n; ++s) {
      lam.w.push_back(val(rng));
      lam.v.push_back(val(rng));
    }
    lam.v[i] += r;
    if (canonicalWeight(cd, lam) != -quiverDim(cd, lam)) {
      pass = false;
      detail = "canonical weight mismatch";
    }
    Weight up = lam;
    up.v[i] -= r;
    long half = (quiverDim(cd, lam) - quiverDim(cd, up)) / 2;
    if (adjunctionShift(cd, lam, i, r).homological != half) {
      pass = false;
      detail = "adjunction shift mismatch";
    }
  }
  report(3,
         "one-vertex dimensions 2k(N-k) for N <= 8; canonical weight = -dim "
         "and adjunction shift = half the dimension drop on 200 random "
         "instances",
         pass, detail);
}

// Criterion 4: braid relations under the calibrated convention.
void criterion4() {
  auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  auto a2 = pathGraph(2);
  ExponentRule rule;
  try {
    rule = calibrateConvention(a2).chosen;
  } catch (const std::exception& e) {
    report(4, "braid relations", false, e.what());
    return;
  }
  struct Probe {
    std::shared_ptr<const CartanData> cd;
    VKey w;
  };
  std::vector<Probe> probes = {{a2, {1, 0}}, {a2, {1, 1}}, {freeGraph(2), {1, 1}},
                               {freeGraph(2), {2, 1}}};
  for (auto& p : probes) {
    IntegrableModule m = buildModule(p.cd, p.w);
    for (auto& c : verifyBraidRelations(m, rule))
      if (!c.pass && pass) {
        pass = false;
        detail = c.name + " on w=(" + vkeyStr(p.w) + ") " + c.instance;
      }
  }
  double secs = seconds(start);
  if (secs >= 30.0) {
    pass = false;
    detail = "runtime exceeds 30s";
  }
  std::ostringstream os;
  os << "braid relations, invertibility and weight compatibility under "
     << rule.str() << ", " << secs << "s";
  report(4, os.str(), pass, detail);
}

// Criteria 5 and 6: the localized kernel suite, identity-testing mode for
// N <= 4 plus fully symbolic mode for N <= 3, with the discovered twist
// constants required to match across every run.
void criteria56() {
  auto start = std::chrono::steady_clock::now();
  bool pass5 = true, pass6 = true;
  std::string detail5, detail6;
  std::map<std::string, std::string> constants;
  auto runOne = [&](int N, bool symbolic) {
    kt::KtOptions opt;
    opt.N = N;
    opt.symbolic = symbolic;
    opt.seed = 424242;
    opt.checks = {"commutator", "divided", "adjoint",
                  "lemma73-1",  "lemma73-2", "eq3", "affine"};
    kt::KtRunReport rep = kt::runKtChecks(opt);
    for (auto& c : rep.checks) {
      bool& pass = c.name.rfind("affine", 0) == 0 ? pass6 : pass5;
      std::string& detail =
          c.name.rfind("affine", 0) == 0 ? detail6 : detail5;
      if (!c.pass && pass) {
        pass = false;
        detail = c.name + " " + c.instance + (symbolic ? " (symbolic)" : "");
      }
    }
    for (auto& [key, value] : rep.constants) {
      auto it = constants.find(key);
      if (it == constants.end()) {
        constants[key] = value;
      } else if (it->second != value) {
        bool& pass = key.rfind("affine", 0) == 0 ? pass6 : pass5;
        std::string& detail =
            key.rfind("affine", 0) == 0 ? detail6 : detail5;
        pass = false;
        detail = "constant '" + key + "' varies across runs";
      }
    }
  };
  for (int N = 2; N <= 4; ++N) runOne(N, false);
  for (int N = 2; N <= 3; ++N) runOne(N, true);
  double secs = seconds(start);
  if (secs >= 120.0) {
    pass5 = false;
    detail5 = "runtime exceeds 120s";
  }
  std::ostringstream os5;
  os5 << "kernel suite (commutator, divided powers, adjunction, both "
         "braid-kernel twist identities, termwise twist) exact for N <= 4 "
         "at 5 sample points and symbolically for N <= 3, " << secs << "s";
  report(5, os5.str(), pass5, detail5);
  std::ostringstream os6;
  os6 << "inverse-twist relation exact for all k, N <= 4, with "
      << (constants.count("affine") ? constants["affine"]
                                    : std::string("(missing)"))
      << " constant across all (k, N)";
  report(6, os6.str(), pass6, detail6);
}

// Criterion 7: the geometric and algebraic models agree on string blocks at
// t = q up to reported scalars.
void criterion7() {
  bool pass = true;
  std::string detail;
  long scalars = 0;
  for (int N = 2; N <= 3; ++N) {
    kt::KtOptions opt;
    opt.N = N;
    opt.checks = {"crossmodel"};
    kt::KtRunReport rep = kt::runKtChecks(opt);
    for (auto& c : rep.checks)
      if (!c.pass && pass) {
        pass = false;
        detail = "N=" + std::to_string(N) + " " + c.instance;
      }
    for (auto& [k, v] : rep.constants)
      if (k.rfind("crossmodel_scalar", 0) == 0) {
        ++scalars;
        if (v.find('x') != std::string::npos) {
          pass = false;
          detail = "scalar " + k + " depends on the coordinate variables";
        }
      }
  }
  std::ostringstream os;
  os << "geometric operators proportional to the algebraic ones on every "
        "string block at t=q for N <= 3; "
     << scalars << " per-block scalars reported, all free of the coordinate "
        "variables";
  report(7, os.str(), pass, detail);
}

// Criterion 8: byte-identical reports for identical configuration and seed.
void criterion8() {
  bool pass = true;
  std::string detail;
#ifdef QKT_CLI_PATH
  auto run = [&](const std::string& out) {
    std::string cmd = std::string(QKT_CLI_PATH) +
                      " ktheory verify --N 3 --seed 99 --out " + out +
                      " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  std::string f1 = "acceptance_rep_a.json", f2 = "acceptance_rep_b.json";
  if (!run(f1) || !run(f2)) {
    pass = false;
    detail = "verifier run failed";
  } else {
    std::ifstream a(f1, std::ios::binary), b(f2, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    if (sa.str().empty() || sa.str() != sb.str()) {
      pass = false;
      detail = "reports differ";
    }
  }
  std::remove(f1.c_str());
  std::remove(f2.c_str());
#else
  // fallback: double-serialize the same run in process
  kt::KtOptions opt;
  opt.N = 2;
  opt.seed = 7;
  std::string r1 = dumpReport(ktChecksToJson(kt::runKtChecks(opt).checks));
  std::string r2 = dumpReport(ktChecksToJson(kt::runKtChecks(opt).checks));
  if (r1 != r2) pass = false;
#endif
  report(8, "two verifier runs with identical config and seed produce "
            "byte-identical JSON reports",
         pass, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criteria56();
  criterion7();
  criterion8();
  if (failures == 0) {
    std::cout << "acceptance: all criteria passed" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
  return 1;
}
