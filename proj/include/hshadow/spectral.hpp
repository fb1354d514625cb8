#pragma once

#include "hshadow/algebraic.hpp"
#include "hshadow/factor.hpp"
#include "hshadow/graphs.hpp"
#include "hshadow/int_matrix.hpp"

#include <cstddef>
#include <vector>

namespace hshadow {

struct PrimitivityCertificate {
    bool primitive = false;
    /// Smallest k with A^k > 0 (when primitive).
    unsigned exponent = 0;
    /// 0/1 pattern of A^k at the Wielandt bound (n-1)^2 + 1 when not primitive.
    IntMatrix zero_pattern;
};

PrimitivityCertificate pf_certificate(const IntMatrix& a);

struct PFData {
    ZPoly characteristic;
    std::vector<IrreducibleFactor> factors;
    FieldPtr field;  // null when rho is rational
    Algebraic rho;
    double rho_approx = 0.0;
    AlgebraicVector right;  // T l = rho l, l[0] = 1
    AlgebraicVector left;   // u^T T = rho u^T, u[0] = 1
    unsigned exponent = 0;
};

/// Exact Perron-Frobenius data. Throws ValidationError if `a` is not
/// primitive or its characteristic polynomial is out of factoring range.
PFData dominant_eigendata(const IntMatrix& a);

/// Numeric dominant eigenvalue by power iteration (cross-check only).
double power_iteration_rho(const IntMatrix& a, unsigned iterations = 2000);

using AlgebraicMatrix = std::vector<AlgebraicVector>;

/// Basis of the right kernel, by exact elimination over the common field.
std::vector<AlgebraicVector> kernel_basis(const AlgebraicMatrix& m);

/// pi P = pi, sum pi = 1. Throws ValidationError if a row does not sum to
/// exactly 1, an entry is negative, or the stationary vector is not unique
/// and positive.
AlgebraicVector stationary_distribution(const AlgebraicMatrix& p);

/// Positive edge lengths, rational or in one Q[rho].
class LengthFunction {
public:
    LengthFunction() = default;
    explicit LengthFunction(AlgebraicVector lengths);
    static LengthFunction unit(std::size_t edges);
    static LengthFunction rational(const std::vector<Rational>& lengths);

    std::size_t size() const noexcept { return l_.size(); }
    const Algebraic& operator[](std::size_t e) const { return l_.at(e); }
    const AlgebraicVector& values() const noexcept { return l_; }
    bool is_unit() const;
    bool is_rational() const;

    Algebraic of(const GraphPath& p) const;

private:
    AlgebraicVector l_;
};

/// Right PF eigenvector of the transition matrix with l(e_1) = 1, so that
/// l(phi(e)) = rho l(e). Throws ValidationError if not primitive.
LengthFunction train_length_function(const GraphMap& phi);

}  // namespace hshadow
