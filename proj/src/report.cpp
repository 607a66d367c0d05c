#include "qkt/report.hpp"

#include <algorithm>
#include <set>

namespace qkt {

OrderedJson checksToJson(const std::vector<RelationCheck>& checks) {
  OrderedJson arr = OrderedJson::array();
  for (auto& c : checks) {
    OrderedJson j;
    j["name"] = c.name;
    j["identity"] = c.identity;
    j["instance"] = c.instance;
    j["status"] = c.pass ? "pass" : "fail";
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(j);
  }
  return arr;
}

OrderedJson ktChecksToJson(const std::vector<kt::KtCheckOutcome>& checks) {
  OrderedJson arr = OrderedJson::array();
  for (auto& c : checks) {
    OrderedJson j;
    j["name"] = c.name;
    j["identity"] = c.identity;
    j["instance"] = c.instance;
    j["status"] = c.pass ? "pass" : "fail";
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(j);
  }
  return arr;
}

std::vector<std::string> relationFamilies(
    const std::vector<RelationCheck>& checks) {
  // The five families of defining relations; auxiliary checks such as the
  // support symmetry do not count as relation families.
  auto family = [](const std::string& name) -> std::string {
    if (name == "serre-e" || name == "serre-f" || name == "commuting-e" ||
        name == "commuting-f")
      return "serre";
    if (name == "commutator" || name == "mixed-commutator" ||
        name == "divided-power" || name == "divided-product")
      return name;
    return "";
  };
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (auto& c : checks) {
    std::string f = family(c.name);
    if (!f.empty() && seen.insert(f).second) out.push_back(f);
  }
  return out;
}

OrderedJson summaryJson(long total, long passed) {
  OrderedJson j;
  j["total"] = total;
  j["passed"] = passed;
  j["failed"] = total - passed;
  return j;
}

std::string dumpReport(const OrderedJson& j) { return j.dump(2) + "\n"; }

}  // namespace qkt
