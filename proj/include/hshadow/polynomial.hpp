#pragma once

#include "hshadow/int_matrix.hpp"
#include "hshadow/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hshadow {

/// Univariate polynomial over Q, coefficients stored low degree first with no
/// trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs);
    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, std::size_t degree);
    static Polynomial x() { return monomial(1, 1); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Polynomial monic() const;
    Polynomial derivative() const;
    Rational eval(const Rational& x) const;
    double eval(double x) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator-(const Polynomial& a) { return a * Rational(-1); }
    bool operator==(const Polynomial& o) const = default;

    std::string to_string(char var = 'x') const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Returns (g, s, t) with s*a + t*b = g, g monic.
struct ExtendedGcd {
    Polynomial g, s, t;
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

/// Integer polynomial, low degree first, no trailing zeros.
using ZPoly = std::vector<Integer>;

ZPoly trim(ZPoly p);
int degree(const ZPoly& p);
Integer content(const ZPoly& p);
/// Primitive part with positive leading coefficient.
ZPoly primitive_part(const ZPoly& p);
ZPoly multiply(const ZPoly& a, const ZPoly& b);
/// Exact quotient a / b in Z[x] if b divides a, empty optional otherwise.
std::optional<ZPoly> exact_divide(const ZPoly& a, const ZPoly& b);
Polynomial to_rational(const ZPoly& p);
/// Clears denominators and takes the primitive part.
ZPoly to_primitive_integer(const Polynomial& p);
std::string to_string(const ZPoly& p, char var = 'x');

/// Characteristic polynomial det(xI - A), monic, computed by fraction-free
/// (Bareiss) determinants at x = 0..n followed by exact interpolation.
ZPoly characteristic_polynomial(const IntMatrix& a);

/// Closed rational interval.
struct Interval {
    Rational lo, hi;
};

/// Sturm-sequence root counting for a squarefree polynomial: number of
/// distinct real roots in the half-open interval (a, b].
class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& squarefree);
    std::size_t count_roots(const Rational& a, const Rational& b) const;

private:
    int sign_changes(const Rational& x) const;
    std::vector<Polynomial> seq_;
};

/// Cauchy bound: every real root lies in (-B, B).
Rational root_bound(const Polynomial& p);

/// Isolating interval (lo, hi] of the largest real root of a squarefree
/// polynomial, refined until hi - lo <= width. Throws ValidationError if the
/// polynomial has no real root.
Interval isolate_largest_root(const Polynomial& squarefree, const Rational& width);

/// Bisects an isolating interval of a simple root (sign change or exact root
/// at an endpoint) until its width is at most `width`.
Interval refine_root(const Polynomial& p, Interval iv, const Rational& width);

/// Interval enclosure of p over [iv.lo, iv.hi] (Horner with interval products).
Interval evaluate(const Polynomial& p, const Interval& iv);

}  // namespace hshadow
