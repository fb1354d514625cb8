#include "hshadow/spectral.hpp"

#include "hshadow/errors.hpp"

#include <cmath>

namespace hshadow {

namespace {

using BoolMatrix = std::vector<std::vector<char>>;

BoolMatrix pattern_of(const IntMatrix& a) {
    BoolMatrix b(a.rows(), std::vector<char>(a.cols(), 0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b[i][j] = a(i, j) != 0;
    return b;
}

BoolMatrix bool_product(const BoolMatrix& x, const BoolMatrix& y) {
    const std::size_t n = x.size();
    BoolMatrix z(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (x[i][k])
                for (std::size_t j = 0; j < n; ++j) z[i][j] |= y[k][j];
    return z;
}

bool all_positive(const BoolMatrix& b) {
    for (const auto& row : b)
        for (char c : row)
            if (!c) return false;
    return true;
}

AlgebraicMatrix shifted(const IntMatrix& a, const Algebraic& rho, bool transpose) {
    const std::size_t n = a.rows();
    AlgebraicMatrix m(n, AlgebraicVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long v = transpose ? a(j, i) : a(i, j);
            m[i][j] = Algebraic(v);
            if (i == j) m[i][j] -= rho;
        }
    return m;
}

AlgebraicVector pf_vector(const IntMatrix& a, const Algebraic& rho, bool transpose) {
    auto basis = kernel_basis(shifted(a, rho, transpose));
    if (basis.size() != 1) throw ValidationError("Perron-Frobenius eigenspace is not one-dimensional");
    AlgebraicVector v = basis[0];
    Algebraic first = v[0];
    if (first.is_zero()) throw ValidationError("Perron-Frobenius vector has a zero entry");
    for (auto& x : v) x /= first;
    for (const auto& x : v)
        if (x.sign() <= 0) throw ValidationError("Perron-Frobenius vector is not positive");
    return v;
}

}  // namespace

PrimitivityCertificate pf_certificate(const IntMatrix& a) {
    if (!a.square() || a.rows() == 0) throw std::invalid_argument("pf_certificate needs a nonempty square matrix");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) < 0) throw ValidationError("matrix has a negative entry");
    const std::size_t n = a.rows();
    const unsigned bound = static_cast<unsigned>((n - 1) * (n - 1) + 1);
    BoolMatrix base = pattern_of(a), cur = base;
    PrimitivityCertificate cert;
    for (unsigned k = 1; k <= bound; ++k) {
        if (all_positive(cur)) {
            cert.primitive = true;
            cert.exponent = k;
            return cert;
        }
        if (k < bound) cur = bool_product(cur, base);
    }
    cert.zero_pattern = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cert.zero_pattern(i, j) = cur[i][j];
    return cert;
}

std::vector<AlgebraicVector> kernel_basis(const AlgebraicMatrix& input) {
    AlgebraicMatrix m = input;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Algebraic inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Algebraic f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<AlgebraicVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        AlgebraicVector v(cols, Algebraic(0L));
        v[free] = Algebraic(1L);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

PFData dominant_eigendata(const IntMatrix& a) {
    PFData out;
    auto cert = pf_certificate(a);
    if (!cert.primitive) throw ValidationError("matrix is not primitive (no positive power up to the Wielandt bound)");
    out.exponent = cert.exponent;
    out.characteristic = characteristic_polynomial(a);
    out.factors = factor_over_integers(out.characteristic);

    ZPoly squarefree{Integer(1)};
    for (const auto& f : out.factors) squarefree = multiply(squarefree, f.poly);
    Interval iv = isolate_largest_root(to_rational(squarefree), Rational(1, 1 << 20));

    const IrreducibleFactor* owner = nullptr;
    for (const auto& f : out.factors) {
        Polynomial pf = to_rational(f.poly);
        bool has = (iv.lo == iv.hi) ? pf.eval(iv.lo) == 0 : SturmSequence(pf).count_roots(iv.lo, iv.hi) == 1;
        if (has) {
            owner = &f;
            break;
        }
    }
    if (!owner) throw std::logic_error("dominant root not found among the factors");
    if (owner->multiplicity != 1) throw ValidationError("dominant eigenvalue is not simple");

    if (degree(owner->poly) == 1) {
        out.rho = Algebraic(Rational(-owner->poly[0], owner->poly[1]));
    } else {
        // the interval is half-open (lo, hi]; a closed copy is fine since lo is not a root
        out.field = std::make_shared<NumberField>(owner->poly, iv);
        out.rho = Algebraic::generator(out.field);
    }
    out.rho_approx = out.rho.to_double();
    out.right = pf_vector(a, out.rho, false);
    out.left = pf_vector(a, out.rho, true);
    return out;
}

double power_iteration_rho(const IntMatrix& a, unsigned iterations) {
    const std::size_t n = a.rows();
    std::vector<double> v(n, 1.0), w(n);
    double rho = 0.0;
    for (unsigned it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += static_cast<double>(a(i, j)) * v[j];
            w[i] = s;
        }
        double norm = 0.0;
        for (double x : w) norm = std::max(norm, std::abs(x));
        if (norm == 0.0) return 0.0;
        // ratio of max norms
        double prev = 0.0;
        for (double x : v) prev = std::max(prev, std::abs(x));
        rho = norm / prev;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    return rho;
}

AlgebraicVector stationary_distribution(const AlgebraicMatrix& p) {
    const std::size_t n = p.size();
    for (const auto& row : p) {
        if (row.size() != n) throw ValidationError("transition matrix is not square");
        Algebraic s(0L);
        for (const auto& x : row) {
            if (x.sign() < 0) throw ValidationError("negative transition probability");
            s += x;
        }
        if (s != Algebraic(1L)) throw ValidationError("row of the transition matrix does not sum to 1");
    }
    // (P^T - I) pi = 0
    AlgebraicMatrix m(n, AlgebraicVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = p[j][i] - Algebraic(i == j ? 1L : 0L);
    auto basis = kernel_basis(m);
    if (basis.size() != 1) throw ValidationError("Markov chain is reducible (stationary vector not unique)");
    Algebraic total(0L);
    for (const auto& x : basis[0]) total += x;
    AlgebraicVector pi = basis[0];
    for (auto& x : pi) {
        x /= total;
        if (x.sign() <= 0) throw ValidationError("Markov chain is reducible (stationary vector not positive)");
    }
    return pi;
}

LengthFunction::LengthFunction(AlgebraicVector lengths) : l_(std::move(lengths)) {
    for (const auto& x : l_)
        if (x.sign() <= 0) throw ValidationError("edge lengths must be positive");
}

LengthFunction LengthFunction::unit(std::size_t edges) { return LengthFunction(AlgebraicVector(edges, Algebraic(1L))); }

LengthFunction LengthFunction::rational(const std::vector<Rational>& lengths) {
    AlgebraicVector v;
    for (const auto& q : lengths) v.emplace_back(q);
    return LengthFunction(std::move(v));
}

bool LengthFunction::is_unit() const {
    for (const auto& x : l_)
        if (x != Algebraic(1L)) return false;
    return true;
}

bool LengthFunction::is_rational() const {
    for (const auto& x : l_)
        if (!x.is_rational()) return false;
    return true;
}

Algebraic LengthFunction::of(const GraphPath& p) const {
    // count first, then one multiply per edge
    std::vector<long> count(l_.size(), 0);
    for (const auto& s : p.steps()) ++count.at(s.edge);
    Algebraic total(0L);
    for (std::size_t e = 0; e < l_.size(); ++e)
        if (count[e]) total += l_[e] * Algebraic(count[e]);
    return total;
}

LengthFunction train_length_function(const GraphMap& phi) {
    return LengthFunction(dominant_eigendata(transition_matrix(phi)).right);
}

}  // namespace hshadow
