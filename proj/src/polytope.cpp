#include "hshadow/polytope.hpp"

#include "hshadow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

namespace hshadow {

namespace {

bool in_hull(const std::vector<PointQ>& pts, std::size_t skip, const PointQ& x) {
    // lambda >= 0, sum lambda = 1, sum lambda p = x
    const std::size_t d = x.size();
    RationalMatrix a(d + 1);
    std::vector<Rational> b(d + 1);
    for (std::size_t r = 0; r < d; ++r) b[r] = x[r];
    b[d] = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == skip) continue;
        for (std::size_t r = 0; r < d; ++r) a[r].push_back(pts[i][r]);
        a[d].push_back(Rational(1));
    }
    if (a[d].empty()) return false;
    return feasible_point(a, b).has_value();
}

}  // namespace

namespace {

Rational cross(const PointQ& o, const PointQ& a, const PointQ& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// strict monotone chain; points sorted and distinct
std::vector<char> planar_extremes(const std::vector<PointQ>& pts) {
    std::vector<char> keep(pts.size(), 0);
    if (pts.size() <= 2) {
        std::fill(keep.begin(), keep.end(), 1);
        return keep;
    }
    std::vector<std::size_t> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
        h[k++] = i;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
        h[k++] = i;
    }
    for (std::size_t i = 0; i + 1 < k; ++i) keep[h[i]] = 1;
    if (k == 1) keep[h[0]] = 1;
    return keep;
}

// maximizers of a few integer directions, ties broken lexicographically
std::vector<std::size_t> directional_extremes(const std::vector<PointQ>& pts) {
    const std::size_t d = pts[0].size();
    std::vector<std::vector<long>> dirs;
    for (std::size_t i = 0; i < d; ++i)
        for (long s : {1L, -1L}) {
            std::vector<long> u(d, 0);
            u[i] = s;
            dirs.push_back(u);
        }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coef(-6, 6);
    for (int r = 0; r < 48; ++r) {
        std::vector<long> u(d);
        for (auto& c : u) c = coef(rng);
        dirs.push_back(u);
    }
    std::vector<std::size_t> out;
    for (const auto& u : dirs) {
        std::size_t best = 0;
        Rational bv;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Rational v = 0;
            for (std::size_t j = 0; j < d; ++j)
                if (u[j] != 0) v += pts[i][j] * u[j];
            if (i == 0 || v > bv) {
                bv = v;
                best = i;
            }
        }
        out.push_back(best);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

RationalPolytope RationalPolytope::from_points(std::vector<PointQ> points) {
    if (points.empty()) throw ValidationError("a polytope needs at least one point");
    const std::size_t d = points[0].size();
    for (auto& p : points) {
        if (p.size() != d) throw ValidationError("points of different dimensions");
        for (auto& q : p) q.canonicalize();
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<char> keep(points.size(), 1);
    if (points.size() > 1 && d == 1) {
        std::fill(keep.begin(), keep.end(), 0);
        keep[0] = 1;
        keep[points.size() - 1] = 1;
    } else if (points.size() > 1 && d == 2) {
        keep = planar_extremes(points);
    } else if (points.size() > 1) {
        std::vector<std::size_t> sure = directional_extremes(points);
        std::vector<PointQ> witness;
        for (auto i : sure) witness.push_back(points[i]);
        std::vector<char> is_sure(points.size(), 0);
        for (auto i : sure) is_sure[i] = 1;
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            auto ii = static_cast<std::size_t>(i);
            if (is_sure[ii]) continue;
            if (in_hull(witness, witness.size(), points[ii]))
                keep[ii] = 0;
            else
                keep[ii] = !in_hull(points, ii, points[ii]);
        }
    }
    RationalPolytope poly;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (keep[i]) poly.v_.push_back(std::move(points[i]));
    return poly;
}

RationalPolytope RationalPolytope::from_vertices(std::vector<PointQ> points) {
    if (points.empty()) throw ValidationError("a polytope needs at least one point");
    for (auto& p : points)
        for (auto& q : p) q.canonicalize();
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    RationalPolytope poly;
    poly.v_ = std::move(points);
    return poly;
}

std::size_t RationalPolytope::affine_dimension() const {
    if (v_.size() <= 1) return 0;
    RationalMatrix diffs;
    for (std::size_t i = 1; i < v_.size(); ++i) {
        std::vector<Rational> row(v_[i].size());
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = v_[i][j] - v_[0][j];
        diffs.push_back(std::move(row));
    }
    return rank(std::move(diffs));
}

namespace {

struct Sigma1System {
    RationalMatrix a;  // independent rows of [boundary; 1]
    std::vector<Rational> b;
    std::size_t cols = 0;
};

Sigma1System sigma1_system(const DirectedGraph& g) {
    const std::size_t e = g.edge_count();
    if (e == 0) throw ValidationError("graph has no edges");
    IntMatrix bd = boundary_matrix(g);
    RationalMatrix aug;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::vector<Rational> row(e + 1, Rational(0));
        for (std::size_t j = 0; j < e; ++j) row[j] = static_cast<long>(bd(v, j));
        aug.push_back(std::move(row));
    }
    aug.push_back(std::vector<Rational>(e + 1, Rational(1)));
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == e) throw ValidationError("no nonnegative cycle: the graph has no directed cycle");
    Sigma1System s;
    s.cols = e;
    for (std::size_t r = 0; r < piv.size(); ++r) {
        s.b.push_back(aug[r][e]);
        aug[r].pop_back();
        s.a.push_back(std::move(aug[r]));
    }
    return s;
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t r, std::size_t budget) {
    // C(n, r) with an early stop
    Integer count = 1;
    for (std::size_t i = 0; i < r; ++i) {
        count *= static_cast<unsigned long>(n - i);
        count /= static_cast<unsigned long>(i + 1);
    }
    if (count > static_cast<unsigned long>(budget))
        throw BudgetExceeded("basis enumeration needs " + count.get_str() + " subsets, budget " + std::to_string(budget));
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        std::size_t k = r;
        while (k > 0 && idx[k - 1] == n - r + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::optional<PointQ> basic_solution(const Sigma1System& s, const std::vector<std::size_t>& cols) {
    const std::size_t r = s.a.size();
    RationalMatrix m(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m[i][j] = s.a[i][cols[j]];
    auto x = solve_square(std::move(m), s.b);
    if (!x) return std::nullopt;
    PointQ full(s.cols, Rational(0));
    for (std::size_t j = 0; j < r; ++j) {
        if ((*x)[j] < 0) return std::nullopt;
        full[cols[j]] = (*x)[j];
    }
    return full;
}

RationalPolytope finish(std::vector<PointQ> pts) {
    if (pts.empty()) throw ValidationError("no basic feasible solution");
    // basic feasible solutions are vertices
    return RationalPolytope::from_vertices(std::move(pts));
}

}  // namespace

RationalPolytope sigma1(const DirectedGraph& g, std::size_t budget) {
    Sigma1System s = sigma1_system(g);
    auto subsets = all_subsets(s.cols, s.a.size(), budget);
    std::vector<PointQ> found;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(subsets.size());
#pragma omp parallel
    {
        std::vector<PointQ> local;
#pragma omp for schedule(dynamic, 64) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i)
            if (auto x = basic_solution(s, subsets[static_cast<std::size_t>(i)])) local.push_back(std::move(*x));
#pragma omp critical
        found.insert(found.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
    return finish(std::move(found));
}

RationalPolytope sigma1_serial(const DirectedGraph& g, std::size_t budget) {
    Sigma1System s = sigma1_system(g);
    std::vector<PointQ> found;
    for (const auto& cols : all_subsets(s.cols, s.a.size(), budget))
        if (auto x = basic_solution(s, cols)) found.push_back(std::move(*x));
    return finish(std::move(found));
}

RationalPolytope linear_image(const RationalPolytope& p, const LinearMapExact& m) {
    if (p.empty()) throw ValidationError("image of an empty polytope");
    std::vector<PointQ> img;
    for (const auto& v : p.vertices()) {
        PointQ y(m.size(), Rational(0));
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (m[r].size() != v.size()) throw ValidationError("linear map and polytope dimensions differ");
            for (std::size_t c = 0; c < v.size(); ++c) y[r] += m[r][c] * v[c];
        }
        img.push_back(std::move(y));
    }
    return RationalPolytope::from_points(std::move(img));
}

namespace {

// Minkowski sum, reduced to extreme points
std::vector<PointQ> minkowski(const std::vector<PointQ>& a, const std::vector<PointQ>& b) {
    std::vector<PointQ> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) {
            PointQ z(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
            out.push_back(std::move(z));
        }
    return RationalPolytope::from_points(std::move(out)).vertices();
}

}  // namespace

CycleMeanPolytope cycle_mean_polytope(const DirectedGraph& g, const std::vector<PointQ>& labels) {
    if (labels.size() != g.edge_count()) throw ValidationError("one label per edge expected");
    if (labels.empty()) throw ValidationError("graph has no edges");
    const std::size_t nv = g.vertex_count();
    const std::size_t d = labels[0].size();
    // (from, to) -> extreme labels and multiplicity
    std::map<std::pair<std::size_t, std::size_t>, std::vector<PointQ>> groups;
    for (std::size_t e = 0; e < labels.size(); ++e) groups[{g.edge(e).from, g.edge(e).to}].push_back(labels[e]);
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::vector<PointQ>, unsigned long>> arcs;
    std::vector<std::vector<std::size_t>> succ(nv);
    for (auto& [key, pts] : groups) {
        const unsigned long mult = pts.size();
        arcs[key] = {RationalPolytope::from_points(std::move(pts)).vertices(), mult};
        succ[key.first].push_back(key.second);
    }

    std::vector<PointQ> means;
    Integer count = 0;
    std::vector<std::size_t> path;
    std::vector<char> on_path(nv, 0);
    auto close_cycle = [&](std::size_t start) {
        std::vector<PointQ> acc{PointQ(d, Rational(0))};
        Integer mult = 1;
        for (std::size_t i = 0; i < path.size(); ++i) {
            const std::size_t to = i + 1 < path.size() ? path[i + 1] : start;
            const auto& arc = arcs.at({path[i], to});
            acc = minkowski(acc, arc.first);
            mult *= arc.second;
        }
        count += mult;
        const Rational inv(1, static_cast<long>(path.size()));
        for (auto& p : acc) {
            for (auto& x : p) x *= inv;
            means.push_back(std::move(p));
        }
    };
    // cycles whose least vertex is `start`
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
        for (std::size_t w : succ[v]) {
            if (w == start) {
                close_cycle(start);
            } else if (w > start && !on_path[w]) {
                on_path[w] = 1;
                path.push_back(w);
                dfs(start, w);
                path.pop_back();
                on_path[w] = 0;
            }
        }
    };
    for (std::size_t s = 0; s < nv; ++s) {
        path.assign(1, s);
        on_path[s] = 1;
        dfs(s, s);
        on_path[s] = 0;
    }
    if (means.empty()) throw ValidationError("no nonnegative cycle: the graph has no directed cycle");
    return {RationalPolytope::from_points(std::move(means)), count};
}

bool contains(const RationalPolytope& p, const PointQ& x) {
    if (x.size() != p.ambient_dimension()) throw ValidationError("point has the wrong dimension");
    return in_hull(p.vertices(), p.vertices().size(), x);
}

namespace {

inline bool is_positive(const Rational& x) { return x > 0; }
inline bool is_positive(double x) { return x > 1e-14; }
inline Rational magnitude(const Rational& x) { return abs(x); }
inline double magnitude(double x) { return std::abs(x); }

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
std::optional<std::vector<T>> solve_dense(std::vector<std::vector<T>> a, std::vector<T> b) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (magnitude(a[r][c]) > magnitude(a[p][c])) p = r;
        if (!is_positive(magnitude(a[p][c]))) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            T f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// Wolfe's minimum-norm-point algorithm on conv(q).
template <class T>
std::vector<T> wolfe(const std::vector<std::vector<T>>& q) {
    const std::size_t m = q.size();
    if (m == 0) throw ValidationError("minimum-norm point of an empty set");
    const std::size_t d = q[0].size();
    std::size_t start = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (dot(q[i], q[i]) < dot(q[start], q[start])) start = i;
    std::vector<std::size_t> s{start};
    std::vector<T> lambda(m, T(0));
    lambda[start] = 1;
    auto point = [&]() {
        std::vector<T> x(d, T(0));
        for (std::size_t i : s)
            for (std::size_t k = 0; k < d; ++k) x[k] += lambda[i] * q[i][k];
        return x;
    };
    std::vector<T> x = q[start];
    for (std::size_t major = 0; major < 50 * m + 100; ++major) {
        std::size_t j = 0;
        T best = dot(x, q[0]);
        for (std::size_t i = 1; i < m; ++i) {
            T v = dot(x, q[i]);
            if (v < best) best = v, j = i;
        }
        T xx = dot(x, x);
        if (!is_positive(xx - best)) break;
        if (std::find(s.begin(), s.end(), j) != s.end()) break;
        s.push_back(j);
        lambda[j] = 0;
        for (std::size_t minor = 0; minor < 10 * m + 10; ++minor) {
            // affine minimiser over s: [G 1; 1^T 0] [mu; nu] = [0; 1]
            const std::size_t k = s.size();
            std::vector<std::vector<T>> a(k + 1, std::vector<T>(k + 1, T(0)));
            std::vector<T> rhs(k + 1, T(0));
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t c = 0; c < k; ++c) a[r][c] = dot(q[s[r]], q[s[c]]);
                a[r][k] = 1;
                a[k][r] = 1;
            }
            rhs[k] = 1;
            auto sol = solve_dense(std::move(a), std::move(rhs));
            if (!sol) {
                // numerically dependent corral: drop the newest point
                s.pop_back();
                x = point();
                break;
            }
            bool interior = true;
            for (std::size_t r = 0; r < k; ++r)
                if (!is_positive((*sol)[r])) interior = false;
            if (interior) {
                for (std::size_t r = 0; r < k; ++r) lambda[s[r]] = (*sol)[r];
                x = point();
                break;
            }
            T theta = 1;
            for (std::size_t r = 0; r < k; ++r) {
                const T& mu = (*sol)[r];
                if (is_positive(mu)) continue;
                T den = lambda[s[r]] - mu;
                if (is_positive(den)) theta = std::min(theta, T(lambda[s[r]] / den));
            }
            for (std::size_t r = 0; r < k; ++r) lambda[s[r]] = (1 - theta) * lambda[s[r]] + theta * (*sol)[r];
            std::vector<std::size_t> kept;
            for (std::size_t i : s) {
                if (is_positive(lambda[i]))
                    kept.push_back(i);
                else
                    lambda[i] = 0;
            }
            s = std::move(kept);
            x = point();
        }
    }
    return lambda;
}

}  // namespace

std::vector<Rational> min_norm_weights(const std::vector<PointQ>& points) { return wolfe(points); }
std::vector<double> min_norm_weights(const std::vector<PointD>& points) { return wolfe(points); }

Rational squared_distance_exact(const RationalPolytope& p, const PointQ& x) {
    std::vector<PointQ> q;
    for (const auto& v : p.vertices()) {
        PointQ d(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i] - x[i];
        q.push_back(std::move(d));
    }
    auto w = wolfe(q);
    PointQ y(x.size(), Rational(0));
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += w[i] * q[i][k];
    return dot(y, y);
}

double distance(const RationalPolytope& p, const PointD& x) {
    std::vector<PointD> q;
    for (const auto& v : p.vertices()) {
        PointD d(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i].get_d() - x[i];
        q.push_back(std::move(d));
    }
    auto w = wolfe(q);
    PointD y(x.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += w[i] * q[i][k];
    return std::sqrt(dot(y, y));
}

bool contains(const RationalPolytope& p, const PointD& x, double tol) { return distance(p, x) <= tol; }

PointCloud sample(const RationalPolytope& p, unsigned depth) {
    const auto& v = p.vertices();
    const std::size_t m = v.size();
    const std::size_t d = p.ambient_dimension();
    const unsigned g = 1U << depth;
    std::vector<PointD> vd;
    for (const auto& x : v) vd.push_back(to_double(x));
    PointCloud out = vd;
    auto combo = [&](std::initializer_list<std::pair<std::size_t, double>> parts) {
        PointD y(d, 0.0);
        for (auto [i, w] : parts)
            for (std::size_t k = 0; k < d; ++k) y[k] += w * vd[i][k];
        out.push_back(std::move(y));
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            for (unsigned a = 1; a < g; ++a) combo({{i, double(a) / g}, {j, double(g - a) / g}});
            for (std::size_t l = j + 1; l < m; ++l)
                for (unsigned a = 1; a < g; ++a)
                    for (unsigned b = 1; a + b < g; ++b)
                        combo({{i, double(a) / g}, {j, double(b) / g}, {l, double(g - a - b) / g}});
        }
    PointD bary(d, 0.0);
    for (const auto& x : vd)
        for (std::size_t k = 0; k < d; ++k) bary[k] += x[k] / static_cast<double>(m);
    out.push_back(std::move(bary));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double hausdorff_to_cloud(const RationalPolytope& p, const PointCloud& s, unsigned depth) {
    if (p.empty() || s.empty()) throw ValidationError("Hausdorff distance of an empty set");
    double forward = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(s.size());
#pragma omp parallel for reduction(max : forward) schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) forward = std::max(forward, distance(p, s[static_cast<std::size_t>(i)]));
    return std::max(forward, directed_hausdorff(sample(p, depth), s));
}

}  // namespace hshadow
