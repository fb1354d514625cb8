#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace hshadow {

/// Dense integer matrix, row-major. Products and powers detect int64
/// overflow and throw std::overflow_error rather than wrapping.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0);
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transpose() const;
    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;

    bool operator==(const IntMatrix& other) const = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix power(const IntMatrix& a, unsigned exponent);

/// Smallest m in [1, bound] with M^m = I, or nullopt. Overflowing powers mean
/// the matrix has infinite order (finite-order integer matrices have bounded
/// entries), so overflow is reported as nullopt.
std::optional<unsigned> finite_order(const IntMatrix& m, unsigned bound);

/// Default search bound 5 * 2^n.
unsigned default_finite_order_bound(std::size_t n);

/// Largest singular value, numerically (power iteration on M^T M).
double operator_norm(const IntMatrix& m);

}  // namespace hshadow
