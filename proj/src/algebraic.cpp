#include "hshadow/algebraic.hpp"

#include "hshadow/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace hshadow {

namespace {

Rational pow2_inverse(unsigned bits) {
    Integer den = 1;
    den <<= bits;
    return Rational(Integer(1), den);
}

}  // namespace

NumberField::NumberField(ZPoly minpoly, Interval isolating)
    : integer_minpoly_(primitive_part(std::move(minpoly))), isolating_(std::move(isolating)) {
    degree_ = hshadow::degree(integer_minpoly_);
    if (degree_ < 1) throw std::invalid_argument("number field needs a minimal polynomial of degree >= 1");
    monic_ = to_rational(integer_minpoly_).monic();
    if (isolating_.hi < isolating_.lo) throw std::invalid_argument("isolating interval is reversed");
    refined_ = refine_root(monic_, isolating_, pow2_inverse(96));
    approx_ = Rational((refined_.lo + refined_.hi) / 2).get_d();
}

Interval NumberField::refine(const Rational& width) const {
    if (refined_.hi - refined_.lo <= width) return refined_;
    return refine_root(monic_, refined_, width);
}

bool NumberField::same_field(const NumberField& other) const {
    if (this == &other) return true;
    if (integer_minpoly_ != other.integer_minpoly_) return false;
    // Same minimal polynomial: the same embedding iff the isolating intervals overlap.
    return !(refined_.hi < other.refined_.lo || other.refined_.hi < refined_.lo);
}

Algebraic::Algebraic(const Rational& q) : rep_(Polynomial::constant(q)) {}

Algebraic::Algebraic(FieldPtr field, Polynomial representative) : field_(std::move(field)), rep_(std::move(representative)) {
    reduce();
}

Algebraic Algebraic::generator(const FieldPtr& field) {
    if (!field) throw std::invalid_argument("generator of a null field");
    return Algebraic(field, Polynomial::x());
}

void Algebraic::reduce() {
    if (!field_) {
        if (rep_.degree() > 0) throw std::logic_error("non-constant representative without a number field");
        return;
    }
    if (field_->degree() == 1) {
        // rho is rational: substitute it.
        const Rational root = field_->refined_interval().lo;
        if (field_->refined_interval().lo != field_->refined_interval().hi)
            throw std::logic_error("degree-one field without an exact root");
        rep_ = Polynomial::constant(rep_.eval(root));
        field_.reset();
        return;
    }
    if (rep_.degree() >= field_->degree()) rep_ = rep_ % field_->monic_minimal_polynomial();
}

Rational Algebraic::rational_value() const {
    if (!is_rational()) throw std::logic_error("rational_value of an irrational algebraic number");
    return rep_.coeff(0);
}

FieldPtr Algebraic::common_field(const Algebraic& a, const Algebraic& b) {
    if (!a.field_ || a.is_rational()) return b.field_ ? b.field_ : a.field_;
    if (!b.field_ || b.is_rational()) return a.field_;
    if (a.field_ == b.field_ || a.field_->same_field(*b.field_)) return a.field_;
    throw ValidationError("arithmetic between different number fields");
}

Algebraic& Algebraic::operator+=(const Algebraic& o) {
    field_ = common_field(*this, o);
    rep_ += o.rep_;
    return *this;
}

Algebraic& Algebraic::operator-=(const Algebraic& o) {
    field_ = common_field(*this, o);
    rep_ -= o.rep_;
    return *this;
}

Algebraic& Algebraic::operator*=(const Algebraic& o) {
    field_ = common_field(*this, o);
    rep_ = rep_ * o.rep_;
    reduce();
    return *this;
}

Algebraic Algebraic::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q[rho]");
    if (is_rational()) {
        Algebraic out(Rational(1 / rep_.coeff(0)));
        out.field_ = field_;
        return out;
    }
    auto eg = extended_gcd(rep_, field_->monic_minimal_polynomial());
    if (eg.g.degree() != 0) throw std::logic_error("minimal polynomial is not irreducible");
    return Algebraic(field_, eg.s);
}

Algebraic& Algebraic::operator/=(const Algebraic& o) {
    Algebraic inv = o.inverse();
    return *this *= inv;
}

Algebraic operator-(const Algebraic& a) {
    Algebraic out = a;
    out.rep_ = -a.rep_;
    return out;
}

bool operator==(const Algebraic& a, const Algebraic& b) {
    if (a.field_ && b.field_ && !a.is_rational() && !b.is_rational()) Algebraic::common_field(a, b);
    return a.rep_ == b.rep_;
}

int Algebraic::sign() const {
    if (rep_.is_zero()) return 0;
    if (is_rational()) return sgn(rep_.coeff(0));
    Interval iv = field_->refined_interval();
    for (unsigned bits = 96;; bits += 64) {
        Interval value = evaluate(rep_, iv);
        if (value.lo > 0) return 1;
        if (value.hi < 0) return -1;
        if (bits > 1U << 16) throw std::logic_error("sign determination did not converge");
        iv = field_->refine(pow2_inverse(bits + 64));
    }
}

Interval Algebraic::enclosure(const Rational& width) const {
    if (is_rational()) return {rep_.coeff(0), rep_.coeff(0)};
    Interval iv = field_->refined_interval();
    for (unsigned bits = 96;; bits += 64) {
        Interval value = evaluate(rep_, iv);
        if (value.hi - value.lo <= width) return value;
        if (bits > 1U << 16) throw std::logic_error("enclosure did not converge");
        iv = field_->refine(pow2_inverse(bits + 64));
    }
}

double Algebraic::to_double() const {
    if (is_rational()) return rep_.coeff(0).get_d();
    Interval e = enclosure(pow2_inverse(60));
    double mid = Rational((e.lo + e.hi) / 2).get_d();
    double mag = std::abs(mid);
    if (mag > 1.0 || mag == 0.0) return mid;
    // Small magnitudes: tighten relative to the value.
    Interval tight = enclosure(Rational(pow2_inverse(60)) * Rational(mag));
    return Rational((tight.lo + tight.hi) / 2).get_d();
}

std::string Algebraic::to_string() const {
    if (is_rational()) return hshadow::to_string(rep_.coeff(0));
    return rep_.to_string('r');
}

std::vector<double> to_double(const AlgebraicVector& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.to_double());
    return out;
}

}  // namespace hshadow
