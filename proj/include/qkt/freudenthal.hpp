// Independent character oracles for finite-type irreducible modules: the
// Freudenthal multiplicity recursion and the Weyl dimension product formula.
// These never touch the module builder; they exist to check it.

#pragma once

#include <map>

#include "qkt/cartan.hpp"

namespace qkt {

/// Multiplicity of every weight Lambda_w - alpha_v of the irreducible module
/// with highest weight Lambda_w, keyed by v. Only nonzero entries are kept.
/// Requires finite-type Cartan data.
std::map<VKey, long> freudenthalCharacter(const CartanData& cd, const VKey& w);

/// Total dimension by the product formula over positive roots.
mpz_class weylDimension(const CartanData& cd, const VKey& w);

}  // namespace qkt
