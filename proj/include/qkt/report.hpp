// Deterministic JSON report assembly. Identical configuration and seed must
// produce byte-identical reports, so everything here iterates ordered
// containers and nothing records wall-clock data.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qkt/ktlocal.hpp"
#include "qkt/repbuilder.hpp"

namespace qkt {

using OrderedJson = nlohmann::ordered_json;

OrderedJson checksToJson(const std::vector<RelationCheck>& checks);
OrderedJson ktChecksToJson(const std::vector<kt::KtCheckOutcome>& checks);

/// Distinct family names in a canonical order (serre-e/serre-f and the
/// commuting variants collapse into one family).
std::vector<std::string> relationFamilies(
    const std::vector<RelationCheck>& checks);

OrderedJson summaryJson(long total, long passed);

std::string dumpReport(const OrderedJson& j);

}  // namespace qkt
