#include "hshadow/int_matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hshadow {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged IntMatrix initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

std::vector<std::int64_t> IntMatrix::apply(const std::vector<std::int64_t>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
    std::vector<std::int64_t> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::int64_t term;
            if (__builtin_mul_overflow((*this)(r, c), v[c], &term) || __builtin_add_overflow(acc, term, &acc))
                throw std::overflow_error("IntMatrix::apply overflow");
        }
        out[r] = acc;
    }
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
        os << ']';
    }
    os << ']';
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix product: dimension mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::int64_t aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                std::int64_t term;
                if (__builtin_mul_overflow(aik, b(k, j), &term) || __builtin_add_overflow(out(i, j), term, &out(i, j)))
                    throw std::overflow_error("IntMatrix product overflow");
            }
        }
    return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("IntMatrix difference: shape mismatch");
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

IntMatrix power(const IntMatrix& a, unsigned exponent) {
    if (!a.square()) throw std::invalid_argument("power of non-square IntMatrix");
    IntMatrix result = IntMatrix::identity(a.rows());
    IntMatrix base = a;
    while (exponent) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent) base = base * base;
    }
    return result;
}

std::optional<unsigned> finite_order(const IntMatrix& m, unsigned bound) {
    if (!m.square()) throw std::invalid_argument("finite_order of non-square matrix");
    const IntMatrix id = IntMatrix::identity(m.rows());
    IntMatrix p = m;
    for (unsigned k = 1; k <= bound; ++k) {
        if (p == id) return k;
        try {
            p = p * m;
        } catch (const std::overflow_error&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

unsigned default_finite_order_bound(std::size_t n) {
    if (n >= 26) return 5U << 26U;
    return 5U << n;
}

double operator_norm(const IntMatrix& m) {
    const std::size_t n = m.cols();
    if (n == 0 || m.rows() == 0) return 0.0;
    std::vector<double> v(n, 1.0);
    double lambda = 0.0;
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<double> mv(m.rows(), 0.0);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < n; ++c) mv[r] += static_cast<double>(m(r, c)) * v[c];
        std::vector<double> w(n, 0.0);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < m.rows(); ++r) w[c] += static_cast<double>(m(r, c)) * mv[r];
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (std::size_t c = 0; c < n; ++c) v[c] = w[c] / norm;
        lambda = norm;
    }
    return std::sqrt(lambda);
}

}  // namespace hshadow
