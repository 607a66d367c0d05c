// qkt: exact verification toolkit for quantum-group module construction,
// quiver-variety numerics, braid operators, and localized K-theory of
// cotangent bundles of Grassmannians.

#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qkt/braidrep.hpp"
#include "qkt/cartan.hpp"
#include "qkt/freudenthal.hpp"
#include "qkt/ktlocal.hpp"
#include "qkt/quivergeom.hpp"
#include "qkt/report.hpp"
#include "qkt/udot.hpp"

namespace {

using namespace qkt;

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string graphPath;
  std::string wText;
  std::string modulePath;
  long height = 4;
  std::optional<long> depth;
  uint64_t seed = 1;
  int jobs = 0;  // 0: take QKT_JOBS or 1
  std::string outPath;
  bool jsonToStdout = false;
};

int effectiveJobs(int jobs) {
  if (jobs > 0) return jobs;
  if (const char* env = std::getenv("QKT_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

std::ostream& human(const CommonOpts& opt) {
  // With --json the machine report owns stdout.
  static struct NullBuf : std::streambuf {
    int overflow(int c) override { return c; }
  } nullBuf;
  static std::ostream nullStream(&nullBuf);
  return opt.jsonToStdout ? nullStream : std::cout;
}

/// Run independent tasks under a bounded worker pool; results and errors are
/// collected by task index so the output order never depends on timing.
template <class T>
std::vector<T> runTasks(std::vector<std::function<T()>>& tasks, int jobs) {
  std::vector<T> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int nThreads = std::min<int>(jobs, static_cast<int>(tasks.size()));
  if (nThreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nThreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

VKey parseWList(const std::string& text, int rank) {
  VKey w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) w.push_back(std::stol(item));
  if (static_cast<int>(w.size()) != rank)
    throw ValidationError("--w has " + std::to_string(w.size()) +
                          " entries but the graph has " +
                          std::to_string(rank) + " vertices");
  return w;
}

struct GraphContext {
  std::shared_ptr<const CartanData> cd;
  VKey w;
  bool haveW = false;
};

GraphContext loadGraphContext(const CommonOpts& opt, bool needW) {
  if (opt.graphPath.empty())
    throw ValidationError("a graph file is required (--graph)");
  GraphFile gf = loadGraphFile(opt.graphPath);
  GraphContext ctx;
  ctx.cd = std::make_shared<CartanData>(buildCartan(gf.graph));
  if (!opt.wText.empty()) {
    ctx.w = parseWList(opt.wText, ctx.cd->rank());
    ctx.haveW = true;
  } else if (gf.w) {
    ctx.w = wVectorFromMap(*ctx.cd, *gf.w);
    ctx.haveW = true;
  } else {
    ctx.w.assign(ctx.cd->rank(), 0);
  }
  if (needW && !ctx.haveW)
    throw ValidationError(
        "a framing vector is required: put \"w\" in the graph file or pass "
        "--w");
  return ctx;
}

IntegrableModule obtainModule(const CommonOpts& opt, GraphContext* ctxOut) {
  if (!opt.modulePath.empty()) {
    std::ifstream in(opt.modulePath);
    if (!in)
      throw ValidationError("cannot open module file '" + opt.modulePath +
                            "'");
    std::stringstream ss;
    ss << in.rdbuf();
    IntegrableModule m = moduleFromJson(ss.str());
    if (ctxOut) {
      ctxOut->cd = m.cartanPtr();
      ctxOut->w = m.w();
      ctxOut->haveW = true;
    }
    return m;
  }
  GraphContext ctx = loadGraphContext(opt, true);
  if (ctxOut) *ctxOut = ctx;
  return buildModule(ctx.cd, ctx.w, opt.depth);
}

OrderedJson configJson(const std::string& command, const CommonOpts& opt,
                       const OrderedJson& extra) {
  OrderedJson cfg;
  cfg["command"] = command;
  if (!opt.graphPath.empty()) cfg["graph"] = opt.graphPath;
  if (!opt.modulePath.empty()) cfg["module"] = opt.modulePath;
  if (!opt.wText.empty()) cfg["w"] = opt.wText;
  if (opt.depth) cfg["depth"] = *opt.depth;
  cfg["seed"] = opt.seed;
  cfg["jobs"] = effectiveJobs(opt.jobs);
  for (auto& [k, v] : extra.items()) cfg[k] = v;
  return cfg;
}

void emitReport(const CommonOpts& opt, const OrderedJson& report) {
  std::string text = dumpReport(report);
  if (!opt.outPath.empty()) {
    std::ofstream out(opt.outPath, std::ios::binary);
    if (!out)
      throw ValidationError("cannot write report to '" + opt.outPath + "'");
    out << text;
  }
  if (opt.jsonToStdout) std::cout << text;
}

ExponentRule calibratedRule(std::shared_ptr<const CartanData> cd,
                            CalibrationResult* full = nullptr) {
  // Calibrate on the user's graph when it has an edge, otherwise on the
  // standard two-vertex path, so edgeless graphs still get the global rule.
  bool hasEdge = !cd->graph().edges.empty();
  std::shared_ptr<const CartanData> base = cd;
  if (!hasEdge || !isFiniteType(*cd)) {
    GraphData a2;
    a2.vertices = {"1", "2"};
    a2.edges = {{"1", "2"}};
    base = std::make_shared<CartanData>(buildCartan(a2));
  }
  CalibrationResult res = calibrateConvention(base);
  if (full) *full = res;
  return res.chosen;
}

// ---------------------------------------------------------------------------

int cmdCartanInfo(const CommonOpts& opt, bool dimsOnly) {
  GraphContext ctx = loadGraphContext(opt, false);
  const CartanData& cd = *ctx.cd;
  const int n = cd.rank();

  if (!dimsOnly) {
    human(opt) << "vertices:";
    for (auto& v : cd.graph().vertices) human(opt) << " " << v;
    human(opt) << "\nCartan matrix:\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) human(opt) << (j ? " " : "") << cd.cartanMatrix()(i, j);
      human(opt) << "\n";
    }
    human(opt) << "finite type: " << (isFiniteType(cd) ? "yes" : "no") << "\n";
  }

  // All v with height <= bound, by (height, lex).
  std::vector<VKey> keys;
  std::function<void(VKey&, int, long)> gen = [&](VKey& cur, int pos,
                                                  long left) {
    if (pos == n) {
      keys.push_back(cur);
      return;
    }
    for (long x = 0; x <= left; ++x) {
      cur[pos] = x;
      gen(cur, pos + 1, left - x);
    }
    cur[pos] = 0;
  };
  VKey cur(n, 0);
  gen(cur, 0, opt.height);
  std::sort(keys.begin(), keys.end(), [](const VKey& a, const VKey& b) {
    long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });

  human(opt) << "w = (" << vkeyStr(ctx.w) << ")\n";
  human(opt) << "v | pairings | dim | canonical | empty\n";
  OrderedJson rows = OrderedJson::array();
  for (const VKey& v : keys) {
    Weight lam{ctx.w, v};
    long dim = quiverDim(cd, lam);
    bool empty = quiverEmptyFlag(cd, lam);
    VKey pair(n);
    for (int i = 0; i < n; ++i) pair[i] = pairing(cd, lam, i);
    human(opt) << "(" << vkeyStr(v) << ") | (" << vkeyStr(pair) << ") | "
              << dim << " | " << canonicalWeight(cd, lam) << " | "
              << (empty ? "yes" : "no") << "\n";
    OrderedJson row;
    row["v"] = v;
    row["pairings"] = pair;
    row["dim"] = dim;
    row["canonical_weight"] = canonicalWeight(cd, lam);
    row["empty"] = empty;
    rows.push_back(row);
  }

  OrderedJson report;
  report["tool"] = "qkt";
  report["version"] = kVersion;
  OrderedJson extra;
  extra["height"] = opt.height;
  report["config"] = configJson(dimsOnly ? "quiver dims" : "cartan info", opt,
                                extra);
  if (!dimsOnly) {
    OrderedJson cm = OrderedJson::array();
    for (int i = 0; i < n; ++i) {
      OrderedJson row = OrderedJson::array();
      for (int j = 0; j < n; ++j) row.push_back(cd.cartanMatrix()(i, j));
      cm.push_back(row);
    }
    report["cartan_matrix"] = cm;
  }
  report["rows"] = rows;
  emitReport(opt, report);
  return 0;
}

int cmdRepBuild(const CommonOpts& opt) {
  GraphContext ctx = loadGraphContext(opt, true);
  IntegrableModule m = buildModule(ctx.cd, ctx.w, opt.depth);
  std::string text = moduleToJson(m);
  if (opt.outPath.empty())
    throw ValidationError("rep build requires --out for the module file");
  std::ofstream out(opt.outPath, std::ios::binary);
  if (!out)
    throw ValidationError("cannot write module to '" + opt.outPath + "'");
  out << text;
  long total = 0;
  for (auto& [v, d] : m.support()) total += d;
  human(opt) << "built module with highest weight w=(" << vkeyStr(m.w())
            << "), " << m.support().size() << " weight spaces, total dimension "
            << total << (m.truncated() ? " (truncated)" : "") << "\n";
  human(opt) << "wrote " << opt.outPath << "\n";
  return 0;
}

int cmdRepVerify(const CommonOpts& opt, std::vector<std::string> checks) {
  if (checks.empty()) checks = {"relations", "character", "dimension"};
  GraphContext ctx;
  IntegrableModule m = obtainModule(opt, &ctx);

  std::vector<RelationCheck> all;
  bool wantRel = std::count(checks.begin(), checks.end(), "relations") > 0;
  bool wantChar = std::count(checks.begin(), checks.end(), "character") > 0;
  bool wantDim = std::count(checks.begin(), checks.end(), "dimension") > 0;

  std::vector<std::function<std::vector<RelationCheck>()>> tasks;
  if (wantRel)
    tasks.push_back([&]() { return verifyModuleRelations(m); });
  if (wantChar)
    tasks.push_back([&]() -> std::vector<RelationCheck> {
      RelationCheck c{"character",
                      "module multiplicities match the recursion oracle",
                      "w=(" + vkeyStr(m.w()) + ")", true, ""};
      if (m.truncated()) {
        c.pass = false;
        c.detail = "module is truncated; character undefined";
      } else {
        auto got = character(m);
        auto expect = freudenthalCharacter(m.cartan(), m.w());
        if (got != expect) {
          c.pass = false;
          for (auto& [v, mult] : expect) {
            auto it = got.find(v);
            long have = it == got.end() ? 0 : it->second;
            if (have != mult) {
              c.detail = "multiplicity at v=" + vkeyStr(v) + " is " +
                         std::to_string(have) + ", oracle says " +
                         std::to_string(mult);
              break;
            }
          }
          if (c.detail.empty()) c.detail = "extra weights beyond the oracle";
        }
      }
      return {c};
    });
  if (wantDim)
    tasks.push_back([&]() -> std::vector<RelationCheck> {
      RelationCheck c{"dimension",
                      "total dimension matches the product formula",
                      "w=(" + vkeyStr(m.w()) + ")", true, ""};
      if (m.truncated()) {
        c.pass = false;
        c.detail = "module is truncated; total dimension undefined";
      } else {
        long total = 0;
        for (auto& [v, d] : m.support()) total += d;
        mpz_class expect = weylDimension(m.cartan(), m.w());
        if (expect != total) {
          c.pass = false;
          c.detail = "total " + std::to_string(total) + ", oracle says " +
                     expect.get_str();
        }
      }
      return {c};
    });

  auto results = runTasks(tasks, effectiveJobs(opt.jobs));
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());

  long passed = 0;
  const RelationCheck* firstFail = nullptr;
  for (auto& c : all) {
    if (c.pass)
      ++passed;
    else if (!firstFail)
      firstFail = &c;
  }

  OrderedJson report;
  report["tool"] = "qkt";
  report["version"] = kVersion;
  OrderedJson extra;
  extra["checks"] = checks;
  report["config"] = configJson("rep verify", opt, extra);
  report["families"] = relationFamilies(all);
  report["checks"] = checksToJson(all);
  if (firstFail) {
    OrderedJson ff;
    ff["name"] = firstFail->name;
    ff["instance"] = firstFail->instance;
    ff["detail"] = firstFail->detail;
    report["first_failure"] = ff;
  }
  report["summary"] = summaryJson(static_cast<long>(all.size()), passed);
  emitReport(opt, report);

  human(opt) << "module verification: " << passed << "/" << all.size()
            << " checks passed";
  if (firstFail)
    human(opt) << "; first failure: " << firstFail->name << " at "
              << firstFail->instance;
  human(opt) << "\n";
  return firstFail ? 1 : 0;
}

int cmdBraid(const CommonOpts& opt, const std::string& word, bool verify) {
  GraphContext ctx;
  IntegrableModule m = obtainModule(opt, &ctx);
  CalibrationResult calib;
  ExponentRule rule = calibratedRule(m.cartanPtr(), &calib);

  OrderedJson report;
  report["tool"] = "qkt";
  report["version"] = kVersion;
  OrderedJson extra;
  if (!word.empty()) extra["word"] = word;
  report["config"] = configJson(verify ? "braid verify" : "braid eval", opt,
                                extra);
  report["exponent_rule"] = rule.str();
  OrderedJson passing = OrderedJson::array();
  for (auto& r : calib.passing) passing.push_back(r.str());
  report["passing_rules"] = passing;

  int rc = 0;
  if (verify) {
    auto checks = verifyBraidRelations(m, rule);
    long passed = 0;
    const RelationCheck* firstFail = nullptr;
    for (auto& c : checks) {
      if (c.pass)
        ++passed;
      else if (!firstFail)
        firstFail = &c;
    }
    report["checks"] = checksToJson(checks);
    if (firstFail) {
      OrderedJson ff;
      ff["name"] = firstFail->name;
      ff["instance"] = firstFail->instance;
      report["first_failure"] = ff;
      rc = 1;
    }
    report["summary"] = summaryJson(static_cast<long>(checks.size()), passed);
    human(opt) << "braid verification: " << passed << "/" << checks.size()
              << " checks passed\n";
  } else {
    BraidWord bw = parseBraidWord(word, m.cartan());
    WeightOperator op = evaluateBraidWord(bw, m, rule);
    OrderedJson blocks = OrderedJson::array();
    for (auto& [v, blk] : op.blocks) {
      OrderedJson b;
      b["source_v"] = v;
      b["target_v"] = blk.first;
      OrderedJson rows = OrderedJson::array();
      for (Eigen::Index i = 0; i < blk.second.rows(); ++i) {
        OrderedJson row = OrderedJson::array();
        for (Eigen::Index j = 0; j < blk.second.cols(); ++j)
          row.push_back(blk.second(i, j).str());
        rows.push_back(row);
      }
      b["matrix"] = rows;
      blocks.push_back(b);
      human(opt) << "block v=(" << vkeyStr(v) << ") -> (" << vkeyStr(blk.first)
                << "), " << blk.second.rows() << "x" << blk.second.cols()
                << "\n";
    }
    report["word"] = braidWordStr(bw, m.cartan());
    report["blocks"] = blocks;
  }
  emitReport(opt, report);
  return rc;
}

int cmdRepApply(const CommonOpts& opt, const std::string& termText) {
  GraphContext ctx;
  IntegrableModule m = obtainModule(opt, &ctx);
  UdotTerm term = parseTerm(termText, m.cartan());
  WeightOperator op = evaluateTerm(term, m);

  OrderedJson report;
  report["tool"] = "qkt";
  report["version"] = kVersion;
  OrderedJson extra;
  extra["term"] = termText;
  report["config"] = configJson("rep apply", opt, extra);
  report["term"] = termStr(term, m.cartan());
  OrderedJson blocks = OrderedJson::array();
  for (auto& [v, blk] : op.blocks) {
    OrderedJson b;
    b["source_v"] = v;
    b["target_v"] = blk.first;
    OrderedJson rows = OrderedJson::array();
    for (Eigen::Index i = 0; i < blk.second.rows(); ++i) {
      OrderedJson row = OrderedJson::array();
      for (Eigen::Index j = 0; j < blk.second.cols(); ++j)
        row.push_back(blk.second(i, j).str());
      rows.push_back(row);
    }
    b["matrix"] = rows;
    blocks.push_back(b);
  }
  report["blocks"] = blocks;
  emitReport(opt, report);
  human(opt) << "applied term on " << op.blocks.size() << " weight blocks\n";
  return 0;
}

int cmdKtheory(const CommonOpts& opt, kt::KtOptions kopt) {
  kopt.seed = opt.seed;
  kt::KtRunReport run = kt::runKtChecks(kopt);

  long passed = 0;
  const kt::KtCheckOutcome* firstFail = nullptr;
  for (auto& c : run.checks) {
    if (c.pass)
      ++passed;
    else if (!firstFail)
      firstFail = &c;
  }

  OrderedJson report;
  report["tool"] = "qkt";
  report["version"] = kVersion;
  OrderedJson extra;
  extra["N"] = kopt.N;
  if (kopt.k) extra["k"] = *kopt.k;
  extra["checks"] = kopt.checks;
  extra["symbolic"] = kopt.symbolic;
  extra["points"] = kopt.points;
  report["config"] = configJson("ktheory verify", opt, extra);
  report["conventions"] = run.conventions.str();
  if (!run.samplePoints.empty()) report["sample_points"] = run.samplePoints;
  OrderedJson constants;
  for (auto& [k, v] : run.constants) constants[k] = v;
  report["constants"] = constants;
  report["checks"] = ktChecksToJson(run.checks);
  if (firstFail) {
    OrderedJson ff;
    ff["name"] = firstFail->name;
    ff["instance"] = firstFail->instance;
    ff["detail"] = firstFail->detail;
    report["first_failure"] = ff;
  }
  report["summary"] =
      summaryJson(static_cast<long>(run.checks.size()), passed);
  emitReport(opt, report);

  human(opt) << "conventions: " << run.conventions.str() << "\n";
  for (auto& c : run.checks)
    human(opt) << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  "
              << c.instance << (c.detail.empty() ? "" : "  " + c.detail)
              << "\n";
  human(opt) << "ktheory verification: " << passed << "/" << run.checks.size()
            << " checks passed\n";
  return firstFail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact quantum-group / quiver-variety / K-theory verifier"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts opt;
  std::vector<std::string> checks;
  std::string word, term;
  kt::KtOptions kopt;

  auto addCommon = [&](CLI::App* sub, bool withGraph = true) {
    if (withGraph) {
      sub->add_option("--graph", opt.graphPath, "graph JSON file");
      sub->add_option("--w", opt.wText,
                      "framing vector, comma-separated in vertex order");
    }
    sub->add_option("--seed", opt.seed, "random seed recorded in the report");
    sub->add_option("--jobs", opt.jobs,
                    "max concurrent checks (default: QKT_JOBS or 1)");
    sub->add_option("--out", opt.outPath, "write the JSON report here");
    sub->add_flag("--json", opt.jsonToStdout, "print the JSON report to stdout");
  };

  long depthValue = -1;
  auto addDepth = [&](CLI::App* sub) {
    sub->add_option("--depth", depthValue,
                    "depth limit (defaults to the full module on finite type)");
  };

  auto* cartan = app.add_subcommand("cartan", "Cartan data commands");
  auto* cartanInfo = cartan->add_subcommand("info",
                                            "print Cartan matrix and weight "
                                            "table");
  addCommon(cartanInfo);
  cartanInfo->add_option("--height", opt.height, "height bound for v");

  auto* quiver = app.add_subcommand("quiver", "quiver variety numerics");
  auto* quiverDims = quiver->add_subcommand("dims",
                                            "dimension/emptiness table");
  addCommon(quiverDims);
  quiverDims->add_option("--height", opt.height, "height bound for v");

  auto* rep = app.add_subcommand("rep", "integrable module commands");
  auto* repBuild = rep->add_subcommand("build", "build and serialize a module");
  addCommon(repBuild);
  addDepth(repBuild);
  auto* repVerify = rep->add_subcommand("verify", "run the relation suite");
  addCommon(repVerify);
  addDepth(repVerify);
  repVerify->add_option("--module", opt.modulePath,
                        "verify a serialized module instead of building one");
  repVerify->add_option("--checks", checks,
                        "subset of: relations,character,dimension")
      ->delimiter(',');
  auto* repApply = rep->add_subcommand("apply",
                                       "apply a symbolic term to a module");
  addCommon(repApply);
  addDepth(repApply);
  repApply->add_option("--module", opt.modulePath, "serialized module file");
  repApply->add_option("--term", term, "term text, e.g. \"F1 E1 a[w=2;v=1]\"")
      ->required();

  auto* braid = app.add_subcommand("braid", "braid operator commands");
  auto* braidEval = braid->add_subcommand("eval", "evaluate a braid word");
  addCommon(braidEval);
  addDepth(braidEval);
  braidEval->add_option("--module", opt.modulePath, "serialized module file");
  braidEval->add_option("--word", word,
                        "braid word, leftmost letter applied first, e.g. "
                        "\"T1 T2^-1\"")
      ->required();
  auto* braidVerify = braid->add_subcommand("verify",
                                            "verify braid relations");
  addCommon(braidVerify);
  addDepth(braidVerify);
  braidVerify->add_option("--module", opt.modulePath,
                          "serialized module file");

  auto* ktheory = app.add_subcommand("ktheory", "localized K-theory commands");
  auto* ktVerify = ktheory->add_subcommand("verify",
                                           "verify the Grassmannian kernel "
                                           "identities");
  addCommon(ktVerify, false);
  ktVerify->add_option("--N", kopt.N, "ambient dimension")->required();
  int kValue = -1;
  ktVerify->add_option("--k", kValue, "restrict to one subspace dimension");
  ktVerify
      ->add_option("--checks", kopt.checks,
                   "subset of: commutator,divided,adjoint,lemma73-1,"
                   "lemma73-2,eq3,affine,crossmodel")
      ->delimiter(',');
  ktVerify->add_flag("--symbolic", kopt.symbolic,
                     "fully symbolic rational functions instead of "
                     "identity-testing at sample points");
  ktVerify->add_option("--points", kopt.points,
                       "number of sample points (identity-testing mode)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (depthValue >= 0) opt.depth = depthValue;
    if (kValue >= 0) kopt.k = kValue;
    if (cartanInfo->parsed()) return cmdCartanInfo(opt, false);
    if (quiverDims->parsed()) return cmdCartanInfo(opt, true);
    if (repBuild->parsed()) return cmdRepBuild(opt);
    if (repVerify->parsed()) return cmdRepVerify(opt, checks);
    if (repApply->parsed()) return cmdRepApply(opt, term);
    if (braidEval->parsed()) return cmdBraid(opt, word, false);
    if (braidVerify->parsed()) return cmdBraid(opt, "", true);
    if (ktVerify->parsed()) return cmdKtheory(opt, kopt);
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  std::cerr << "no subcommand selected\n";
  return 2;
}
