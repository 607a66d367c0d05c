// Weight-homogeneous block operators on an integrable module: every source
// weight space maps to exactly one target weight space by an exact matrix.

#pragma once

#include <map>

#include "qkt/repbuilder.hpp"

namespace qkt {

struct WeightOperator {
  // source v -> (target v, matrix of shape dim(target) x dim(source))
  std::map<VKey, std::pair<VKey, MatF>> blocks;

  bool isZero() const {
    for (auto& [v, blk] : blocks)
      if (!isZeroMatrix(blk.second)) return false;
    return true;
  }
};

WeightOperator identityOperator(const IntegrableModule& m);

/// second(first(x)); both operators must be defined blockwise on the module.
WeightOperator composeOperators(const WeightOperator& second,
                                const WeightOperator& first);

/// Blockwise inverse; requires square invertible blocks.
WeightOperator inverseOperator(const WeightOperator& op);

/// Blockwise difference; operators must have identical source/target shapes.
WeightOperator subtractOperators(const WeightOperator& a,
                                 const WeightOperator& b);

bool sameShape(const WeightOperator& a, const WeightOperator& b);

}  // namespace qkt
