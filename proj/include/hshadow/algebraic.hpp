#pragma once

#include "hshadow/polynomial.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hshadow {

/// Q[rho] for a real algebraic number rho, identified by its minimal
/// polynomial and a rational interval containing exactly one real root.
class NumberField {
public:
    /// `minpoly` must be irreducible over Q (callers obtain it from
    /// factor_over_integers); `isolating` must contain exactly one real root.
    NumberField(ZPoly minpoly, Interval isolating);

    int degree() const noexcept { return degree_; }
    const ZPoly& minimal_polynomial() const noexcept { return integer_minpoly_; }
    const Polynomial& monic_minimal_polynomial() const noexcept { return monic_; }
    const Interval& isolating_interval() const noexcept { return isolating_; }
    /// Interval of width at most 2^-96 around the root, computed once.
    const Interval& refined_interval() const noexcept { return refined_; }
    /// Narrower interval around the root (width at most `width`).
    Interval refine(const Rational& width) const;
    double approximation() const noexcept { return approx_; }

    bool same_field(const NumberField& other) const;

private:
    ZPoly integer_minpoly_;
    Polynomial monic_;
    Interval isolating_;
    Interval refined_;
    double approx_ = 0.0;
    int degree_ = 0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of Q[rho], stored as a polynomial in rho of degree below the
/// field degree. A null field means the element is rational; rationals mix
/// freely with any field, but two different fields never mix.
class Algebraic {
public:
    Algebraic() = default;
    Algebraic(const Rational& q);  // NOLINT(google-explicit-constructor)
    Algebraic(long v) : Algebraic(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Algebraic(FieldPtr field, Polynomial representative);

    /// rho itself.
    static Algebraic generator(const FieldPtr& field);

    const FieldPtr& field() const noexcept { return field_; }
    const Polynomial& representative() const noexcept { return rep_; }
    bool is_rational() const noexcept { return rep_.degree() <= 0; }
    /// Requires is_rational().
    Rational rational_value() const;
    bool is_zero() const noexcept { return rep_.is_zero(); }

    /// Exact sign, by interval refinement around rho.
    int sign() const;
    double to_double() const;
    /// Rational interval of width at most `width` containing the value.
    Interval enclosure(const Rational& width) const;

    Algebraic& operator+=(const Algebraic& o);
    Algebraic& operator-=(const Algebraic& o);
    Algebraic& operator*=(const Algebraic& o);
    Algebraic& operator/=(const Algebraic& o);
    Algebraic inverse() const;

    friend Algebraic operator+(Algebraic a, const Algebraic& b) { return a += b; }
    friend Algebraic operator-(Algebraic a, const Algebraic& b) { return a -= b; }
    friend Algebraic operator*(Algebraic a, const Algebraic& b) { return a *= b; }
    friend Algebraic operator/(Algebraic a, const Algebraic& b) { return a /= b; }
    friend Algebraic operator-(const Algebraic& a);

    friend bool operator==(const Algebraic& a, const Algebraic& b);
    friend bool operator!=(const Algebraic& a, const Algebraic& b) { return !(a == b); }
    friend bool operator<(const Algebraic& a, const Algebraic& b) { return (a - b).sign() < 0; }
    friend bool operator>(const Algebraic& a, const Algebraic& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const Algebraic& a, const Algebraic& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const Algebraic& a, const Algebraic& b) { return (a - b).sign() >= 0; }

    /// "p/q" for rationals, otherwise the representative in the variable r.
    std::string to_string() const;

private:
    void reduce();
    static FieldPtr common_field(const Algebraic& a, const Algebraic& b);

    FieldPtr field_;
    Polynomial rep_;
};

using AlgebraicVector = std::vector<Algebraic>;

std::vector<double> to_double(const AlgebraicVector& v);

}  // namespace hshadow
