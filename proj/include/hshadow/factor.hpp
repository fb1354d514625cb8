#pragma once

#include "hshadow/polynomial.hpp"

#include <vector>

namespace hshadow {

struct IrreducibleFactor {
    ZPoly poly;  ///< primitive, positive leading coefficient
    unsigned multiplicity = 1;
};

/// Largest squarefree component degree accepted by factor_over_integers
/// (after rational roots are split off).
inline constexpr int kMaxFactorDegree = 12;

/// Complete factorization of a nonzero integer polynomial into irreducible
/// factors over Q. The product of poly^multiplicity over the result equals
/// primitive_part(f). Rational roots are split off first; the remaining
/// squarefree parts are factored modulo a prime above the Mignotte bound and
/// recombined by subset search. Throws ValidationError when a remaining
/// squarefree part exceeds kMaxFactorDegree.
std::vector<IrreducibleFactor> factor_over_integers(const ZPoly& f);

/// Squarefree decomposition (Yun): pairs (g_i, i) with f = c * prod g_i^i.
std::vector<IrreducibleFactor> squarefree_decomposition(const ZPoly& f);

}  // namespace hshadow
