#include "hshadow/polynomial.hpp"

#include "hshadow/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hshadow {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Polynomial out = *this;
    Rational inv = 1 / leading();
    for (auto& c : out.c_) c *= inv;
    return out;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
}

std::string Polynomial::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        first = false;
        if (i == 0 || mag != 1) os << hshadow::to_string(mag);
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial{}, a};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    const Rational inv_lead = 1 / b.leading();
    for (int i = a.degree(); i >= db; --i) {
        const Rational coef = rem[static_cast<std::size_t>(i)] * inv_lead;
        quot[static_cast<std::size_t>(i - db)] = coef;
        if (coef == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= coef * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial r0 = a, r1 = b;
    Polynomial s0 = Polynomial::constant(1), s1;
    Polynomial t0, t1 = Polynomial::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Polynomial s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Polynomial t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

// ---------------------------------------------------------------- Z[x]

ZPoly trim(ZPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

Integer content(const ZPoly& p) {
    Integer g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    return g;
}

ZPoly primitive_part(const ZPoly& p) {
    ZPoly q = trim(p);
    if (q.empty()) return q;
    Integer g = content(q);
    if (q.back() < 0) g = -g;
    for (auto& c : q) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return q;
}

ZPoly multiply(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly out(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return trim(out);
}

std::optional<ZPoly> exact_divide(const ZPoly& a, const ZPoly& b) {
    ZPoly bb = trim(b);
    if (bb.empty()) throw std::domain_error("exact_divide by zero polynomial");
    ZPoly rem = trim(a);
    if (rem.empty()) return ZPoly{};
    if (rem.size() < bb.size()) return std::nullopt;
    ZPoly quot(rem.size() - bb.size() + 1, Integer(0));
    const Integer& lead = bb.back();
    for (std::size_t i = rem.size(); i-- >= bb.size();) {
        if (rem[i] == 0) continue;
        if (!mpz_divisible_p(rem[i].get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
        Integer coef;
        mpz_divexact(coef.get_mpz_t(), rem[i].get_mpz_t(), lead.get_mpz_t());
        quot[i - (bb.size() - 1)] = coef;
        for (std::size_t j = 0; j < bb.size(); ++j) rem[i - (bb.size() - 1) + j] -= coef * bb[j];
    }
    for (const auto& c : rem)
        if (c != 0) return std::nullopt;
    return trim(quot);
}

Polynomial to_rational(const ZPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.size());
    for (const auto& z : p) c.emplace_back(z);
    return Polynomial(std::move(c));
}

ZPoly to_primitive_integer(const Polynomial& p) {
    Integer lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    ZPoly z;
    z.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        Rational scaled = c * lcm;
        z.push_back(scaled.get_num());
    }
    return primitive_part(z);
}

std::string to_string(const ZPoly& p, char var) { return to_rational(p).to_string(var); }

namespace {

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

}  // namespace

ZPoly characteristic_polynomial(const IntMatrix& a) {
    if (!a.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
    const std::size_t n = a.rows();
    std::vector<Rational> xs, ys;
    for (std::size_t t = 0; t <= n; ++t) {
        std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] = Integer(static_cast<long>(i == j ? static_cast<long>(t) : 0L)) - Integer(static_cast<long>(a(i, j)));
        xs.emplace_back(static_cast<long>(t));
        ys.emplace_back(bareiss_determinant(std::move(m)));
    }
    // Newton divided differences, then expand into the monomial basis.
    std::vector<Rational> dd = ys;
    for (std::size_t level = 1; level <= n; ++level)
        for (std::size_t i = n; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) break;
        }
    Polynomial result = Polynomial::constant(dd[n]);
    for (std::size_t i = n; i-- > 0;) {
        result = result * Polynomial{-xs[i], Rational(1)} + Polynomial::constant(dd[i]);
    }
    ZPoly z;
    for (const auto& c : result.coeffs()) {
        if (c.get_den() != 1) throw std::logic_error("characteristic polynomial interpolation produced a non-integer");
        z.push_back(c.get_num());
    }
    return z;
}

// ---------------------------------------------------------------- real roots

SturmSequence::SturmSequence(const Polynomial& squarefree) {
    if (squarefree.is_zero()) throw std::domain_error("Sturm sequence of zero polynomial");
    seq_.push_back(squarefree);
    seq_.push_back(squarefree.derivative());
    while (!seq_.back().is_zero()) {
        Polynomial r = -(seq_[seq_.size() - 2] % seq_.back());
        if (r.is_zero()) break;
        seq_.push_back(std::move(r));
    }
    if (seq_.back().is_zero()) seq_.pop_back();
}

int SturmSequence::sign_changes(const Rational& x) const {
    int changes = 0;
    int last = 0;
    for (const auto& p : seq_) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

std::size_t SturmSequence::count_roots(const Rational& a, const Rational& b) const {
    if (b <= a) return 0;
    return static_cast<std::size_t>(sign_changes(a) - sign_changes(b));
}

Rational root_bound(const Polynomial& p) {
    if (p.degree() < 1) return 1;
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeffs()[static_cast<std::size_t>(i)] / p.leading())));
    return m + 1;
}

Interval isolate_largest_root(const Polynomial& squarefree, const Rational& width) {
    SturmSequence sturm(squarefree);
    Rational bound = root_bound(squarefree);
    Rational lo = -bound, hi = bound;
    if (sturm.count_roots(lo, hi) == 0) throw ValidationError("polynomial " + squarefree.to_string() + " has no real root");
    while (sturm.count_roots(lo, hi) > 1) {
        Rational mid = (lo + hi) / 2;
        if (sturm.count_roots(mid, hi) >= 1) lo = mid;
        else hi = mid;
    }
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        if (sturm.count_roots(mid, hi) == 1) lo = mid;
        else hi = mid;
    }
    if (squarefree.eval(hi) == 0) return {hi, hi};
    return {lo, hi};
}

Interval refine_root(const Polynomial& p, Interval iv, const Rational& width) {
    if (iv.lo == iv.hi) return iv;
    if (p.eval(iv.hi) == 0) return {iv.hi, iv.hi};
    if (p.eval(iv.lo) == 0) return {iv.lo, iv.lo};
    const int s_hi = sgn(p.eval(iv.hi));
    while (iv.hi - iv.lo > width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        int s = sgn(p.eval(mid));
        if (s == 0) return {mid, mid};
        if (s == s_hi) iv.hi = mid;
        else iv.lo = mid;
    }
    return iv;
}

namespace {

Interval mul(const Interval& a, const Interval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

}  // namespace

Interval evaluate(const Polynomial& p, const Interval& iv) {
    if (p.is_zero()) return {0, 0};
    Interval acc{p.leading(), p.leading()};
    for (int i = p.degree() - 1; i >= 0; --i) {
        acc = mul(acc, iv);
        acc.lo += p.coeffs()[static_cast<std::size_t>(i)];
        acc.hi += p.coeffs()[static_cast<std::size_t>(i)];
    }
    return acc;
}

}  // namespace hshadow
