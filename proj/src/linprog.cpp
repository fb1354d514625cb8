#include "hshadow/linprog.hpp"

#include <stdexcept>

namespace hshadow {

std::vector<std::size_t> rref(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.size();
    if (rows == 0) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(RationalMatrix m) { return rref(m).size(); }

std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    auto piv = rref(a);
    if (piv.size() < n || piv.back() >= n) return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

std::optional<std::vector<Rational>> feasible_point(const RationalMatrix& a, const std::vector<Rational>& b) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    if (b.size() != m) throw std::invalid_argument("feasible_point: size mismatch");
    if (m == 0) return std::vector<Rational>(n, Rational(0));

    // tableau [A | I | b], artificials basic; rows flipped so b >= 0
    const std::size_t width = n + m + 1;
    RationalMatrix t(m, std::vector<Rational>(width, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        int s = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = s * a[i][j];
        t[i][n + i] = 1;
        t[i][width - 1] = s * b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // reduced costs of sum(artificials): c_j - c_B B^-1 A_j
    std::vector<Rational> cost(width, Rational(0));
    for (std::size_t j = 0; j < width; ++j) {
        if (j >= n && j < n + m) continue;
        for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
    }

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < n + m; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][width - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction; cannot happen in phase one
        Rational inv = 1 / t[leave][enter];
        for (auto& x : t[leave]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
        }
        Rational f = cost[enter];
        for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    // objective value is -cost[rhs]
    if (cost[width - 1] != 0) return std::nullopt;
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][width - 1];
    return x;
}

}  // namespace hshadow
