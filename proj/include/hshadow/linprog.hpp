#pragma once

#include "hshadow/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hshadow {

/// Dense rational matrix, rows of equal length.
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m);
std::size_t rank(RationalMatrix m);

/// Unique solution of a square system, or nullopt if singular.
std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b);

/// Some x >= 0 with A x = b, found by phase-one simplex with Bland's rule
/// in exact arithmetic; nullopt when infeasible.
std::optional<std::vector<Rational>> feasible_point(const RationalMatrix& a, const std::vector<Rational>& b);

}  // namespace hshadow
