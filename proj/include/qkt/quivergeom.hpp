// Closed-form numerical invariants of quiver varieties and their Hecke
// correspondences: dimensions, canonical-bundle weights, adjunction shifts,
// kernel twist bookkeeping, and the conjugation scalar relating the two
// line-bundle normalizations of the Hecke operators.

#pragma once

#include "qkt/cartan.hpp"

namespace qkt {

/// Formal line-bundle data of a Hecke kernel: exponents of det V_i,
/// det V'_i, det(V'_i/V_i) and the product of det V over incoming neighbors,
/// plus the equivariant shift. Pure bookkeeping; no sheaf computation.
struct KernelSpec {
  enum class Direction { E, F };
  Direction direction = Direction::E;
  int vertex = -1;
  long power = 1;
  Weight source;
  long detV = 0;
  long detVPrime = 0;
  long detQuot = 0;      // det(V'_i / V_i)
  long detNeighbors = 0; // product over edges into the vertex
  long equivariantShift = 0;
};

KernelSpec makeESpec(const CartanData& cd, const Weight& lam, int i, long r);
KernelSpec makeFSpec(const CartanData& cd, const Weight& lam, int i, long r);

/// dim = 2<alpha_v, Lambda_w> - <alpha_v, alpha_v>. May be negative; negative
/// values are flagged as (heuristically) empty rather than rejected.
long quiverDim(const CartanData& cd, const Weight& lam);
bool quiverEmptyFlag(const CartanData& cd, const Weight& lam);

/// Equivariant weight of the canonical bundle: identically -quiverDim.
long canonicalWeight(const CartanData& cd, const Weight& lam);

struct AdjunctionShift {
  long homological = 0;
  long equivariant = 0;
};

/// Right-adjoint shift (r(<lambda,alpha_i>+r), -r(<lambda,alpha_i>+r));
/// the left adjoint flips both signs.
AdjunctionShift adjunctionShift(const CartanData& cd, const Weight& lam,
                                int i, long r);
AdjunctionShift adjunctionShiftLeft(const CartanData& cd, const Weight& lam,
                                    int i, long r);

/// The scalar s relating the two Hecke-kernel normalizations. Both sides of
/// the defining identity are evaluated; the unknown constant <Lw, Lw> cancels
/// between two floor terms and the cancellation is asserted by evaluating at
/// both parities. Returns -<lambda, alpha_i> - 1.
long nakajimaConjugationScalar(const CartanData& cd, const Weight& lam, int i);

struct HeckeDim {
  long dim = 0;
  bool empty = false;
};

/// Half the sum of the two ambient dimensions; errors when the sum is odd.
HeckeDim heckeDim(const CartanData& cd, const Weight& lam, int i, long r);

}  // namespace qkt
