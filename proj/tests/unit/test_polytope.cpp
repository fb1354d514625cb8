#include "doctest.h"

#include "hshadow/errors.hpp"
#include "hshadow/polytope.hpp"

#include <functional>
#include <random>

using namespace hshadow;

namespace {

// x >= 0 with A x = b for a square-or-tall system of full column rank, by elimination
bool nonnegative_solution(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) return false;  // dependent columns: skipped by the caller's other subsets
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        piv.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return false;
    for (std::size_t i = 0; i < r; ++i)
        if (b[i] / a[i][piv[i]] < 0) return false;
    return true;
}

// Caratheodory: p in conv(others) iff p in some simplex of at most d + 1 of them
bool in_hull_oracle(const std::vector<PointQ>& pts, std::size_t skip) {
    const std::size_t d = pts[0].size();
    std::vector<std::size_t> idx;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
        if (!idx.empty()) {
            std::vector<std::vector<Rational>> a(d + 1, std::vector<Rational>(idx.size()));
            std::vector<Rational> b(d + 1);
            for (std::size_t r = 0; r < d; ++r) {
                b[r] = pts[skip][r];
                for (std::size_t c = 0; c < idx.size(); ++c) a[r][c] = pts[idx[c]][r];
            }
            b[d] = 1;
            for (std::size_t c = 0; c < idx.size(); ++c) a[d][c] = 1;
            if (nonnegative_solution(a, b)) return true;
        }
        if (idx.size() == d + 1) return false;
        for (std::size_t i = from; i < pts.size(); ++i) {
            if (i == skip) continue;
            idx.push_back(i);
            if (rec(i + 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    return rec(0);
}

// every directed simple cycle, as a normalized edge indicator, by brute force over edge subsets
std::vector<PointQ> simple_cycle_oracle(const DirectedGraph& g) {
    const std::size_t e = g.edge_count();
    std::vector<PointQ> out;
    for (unsigned long mask = 1; mask < (1UL << e); ++mask) {
        std::vector<int> in(g.vertex_count(), 0), outd(g.vertex_count(), 0);
        std::size_t k = 0;
        for (std::size_t j = 0; j < e; ++j)
            if (mask >> j & 1) {
                ++outd[g.edge(j).from];
                ++in[g.edge(j).to];
                ++k;
            }
        bool ok = true;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) ok = ok && in[v] == outd[v] && in[v] <= 1;
        if (!ok) continue;
        // one cycle: following successors from any chosen edge visits all k
        std::size_t start = 0;
        while (!(mask >> start & 1)) ++start;
        std::size_t cur = start, steps = 0;
        do {
            const std::size_t to = g.edge(cur).to;
            std::size_t nxt = 0;
            while (!((mask >> nxt & 1) && g.edge(nxt).from == to)) ++nxt;
            cur = nxt;
            ++steps;
        } while (cur != start);
        if (steps != k) continue;
        PointQ x(e, Rational(0));
        for (std::size_t j = 0; j < e; ++j)
            if (mask >> j & 1) x[j] = Rational(1, static_cast<long>(k));
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

DirectedGraph random_digraph(std::mt19937_64& rng, std::size_t v, std::size_t e) {
    DirectedGraph g;
    for (std::size_t i = 0; i < v; ++i) g.add_vertex("v" + std::to_string(i));
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    // a Hamiltonian cycle keeps it strongly connected
    for (std::size_t i = 0; i < v; ++i) g.add_edge("h" + std::to_string(i), i, (i + 1) % v);
    for (std::size_t i = v; i < e; ++i) g.add_edge("x" + std::to_string(i), pick(rng), pick(rng));
    return g;
}

}  // namespace

TEST_CASE("sigma1 small graphs") {
    DirectedGraph two_loops;
    two_loops.add_vertex("v");
    two_loops.add_edge("x", 0, 0);
    two_loops.add_edge("y", 0, 0);
    CHECK(sigma1(two_loops).vertices() == std::vector<PointQ>{{0, 1}, {1, 0}});

    DirectedGraph cyc;
    cyc.add_vertex("v");
    cyc.add_vertex("w");
    cyc.add_edge("x", 0, 1);
    cyc.add_edge("y", 1, 0);
    CHECK(sigma1(cyc).vertices() == std::vector<PointQ>{{Rational(1, 2), Rational(1, 2)}});

    DirectedGraph loop;
    loop.add_vertex("v");
    loop.add_edge("x", 0, 0);
    CHECK(sigma1(loop).vertices() == std::vector<PointQ>{{1}});

    DirectedGraph dag;
    dag.add_vertex("v");
    dag.add_vertex("w");
    dag.add_edge("x", 0, 1);
    CHECK_THROWS_AS(sigma1(dag), ValidationError);
}

TEST_CASE("sigma1 vertices are the normalized simple cycles") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 12; ++t) {
        DirectedGraph g = random_digraph(rng, 2 + static_cast<std::size_t>(t % 3), 6 + static_cast<std::size_t>(t % 5));
        auto oracle = simple_cycle_oracle(g);
        RationalPolytope s = sigma1(g);
        CHECK(s.vertices() == oracle);
        CHECK(sigma1_serial(g) == s);

        std::uniform_int_distribution<int> coord(-3, 3);
        std::vector<PointQ> labels(g.edge_count());
        for (auto& x : labels) x = {Rational(coord(rng), 2), Rational(coord(rng), 2)};
        LinearMapExact m(2, std::vector<Rational>(g.edge_count()));
        for (std::size_t j = 0; j < g.edge_count(); ++j)
            for (std::size_t i = 0; i < 2; ++i) m[i][j] = labels[j][i];
        CycleMeanPolytope cm = cycle_mean_polytope(g, labels);
        CHECK(cm.polytope == linear_image(s, m));
        CHECK(cm.simple_cycles == static_cast<unsigned long>(oracle.size()));
    }
}

TEST_CASE("hull filtering against Caratheodory") {
    std::mt19937_64 rng(41);
    for (std::size_t d = 1; d <= 4; ++d)
        for (int t = 0; t < 6; ++t) {
            std::uniform_int_distribution<int> coord(-4, 4);
            std::vector<PointQ> pts(d <= 2 ? 25 : 11);
            for (auto& p : pts) {
                p.resize(d);
                for (auto& x : p) x = Rational(coord(rng), 1 + t % 2);
            }
            RationalPolytope poly = RationalPolytope::from_points(pts);
            std::vector<PointQ> uniq = pts;
            for (auto& p : uniq)
                for (auto& x : p) x.canonicalize();
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            std::vector<PointQ> expected;
            for (std::size_t i = 0; i < uniq.size(); ++i)
                if (!in_hull_oracle(uniq, i)) expected.push_back(uniq[i]);
            CHECK(poly.vertices() == expected);
        }
    // collinear points in the plane keep only the ends
    std::vector<PointQ> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK(RationalPolytope::from_points(line).vertices() == std::vector<PointQ>{{0, 0}, {3, 3}});
}

TEST_CASE("linear images") {
    RationalPolytope sq = RationalPolytope::from_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    LinearMapExact id{{1, 0}, {0, 1}};
    CHECK(linear_image(sq, id) == sq);
    LinearMapExact drop{{1, 0}};
    CHECK(linear_image(sq, drop).vertices() == std::vector<PointQ>{{0}, {1}});

    // Sigma_1 of the Fibonacci HP graph and its H-labels
    RationalPolytope s = RationalPolytope::from_points({{1, 0, 0}, {0, Rational(1, 2), Rational(1, 2)}});
    LinearMapExact h{{0, Rational(1, 2), Rational(1, 2)}, {0, Rational(1, 2), Rational(-1, 2)}};
    CHECK(linear_image(s, h).vertices() == std::vector<PointQ>{{0, 0}, {Rational(1, 2), 0}});
    CHECK(linear_image(s, h).affine_dimension() == 1);
}

TEST_CASE("distances and containment") {
    RationalPolytope seg = RationalPolytope::from_points({{0, 0}, {1, 0}});
    CHECK(distance(seg, PointD{1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(distance(seg, PointD{2.0, 0.0}) == doctest::Approx(1.0));
    CHECK(squared_distance_exact(seg, {Rational(1, 2), Rational(3)}) == Rational(9));
    CHECK(squared_distance_exact(seg, {Rational(-3), Rational(4)}) == Rational(25));

    // closed form against a segment, sampled parameter oracle
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int t = 0; t < 30; ++t) {
        PointQ a{c(rng), c(rng)}, b{c(rng), c(rng)}, x{c(rng), c(rng)};
        if (a == b) continue;
        RationalPolytope s = RationalPolytope::from_points({a, b});
        Rational best = squared_distance(a, x);
        for (int i = 0; i <= 400; ++i) {
            Rational u(i, 400);
            PointQ p{a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])};
            best = std::min(best, squared_distance(p, x));
        }
        Rational exact = squared_distance_exact(s, x);
        CHECK(exact <= best);
        CHECK(to_double(best) - to_double(exact) < 0.2);
    }

    // the midpoint of a segment is 1/2 away from its endpoints
    CHECK(hausdorff_to_cloud(seg, PointCloud{{0.0, 0.0}, {1.0, 0.0}}, 3) == doctest::Approx(0.5));
    CHECK(hausdorff_to_cloud(seg, sample(seg, 3), 3) == doctest::Approx(0.0));
    CHECK(sample(seg, 3).size() == 9);

    RationalPolytope tri = RationalPolytope::from_points({{0, 0}, {2, 0}, {0, 2}});
    CHECK(contains(tri, PointQ{Rational(2, 3), Rational(2, 3)}));
    CHECK_FALSE(contains(tri, PointQ{Rational(5), Rational(5)}));
    CHECK(contains(tri, PointQ{Rational(2), Rational(0)}));
    CHECK_FALSE(contains(tri, PointQ{Rational(1), Rational(1, 1000000) + 1}));
    CHECK(contains(tri, PointD{1.0, 1.0 + 1e-9}, 1e-6));
}

TEST_CASE("minimum norm weights") {
    std::vector<PointQ> pts{{1, 1}, {1, -1}, {3, 0}};
    auto w = min_norm_weights(pts);
    PointQ x(2, Rational(0));
    Rational s = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        s += w[i];
        CHECK(w[i] >= 0);
        for (std::size_t j = 0; j < 2; ++j) x[j] += w[i] * pts[i][j];
    }
    CHECK(s == 1);
    CHECK(x == PointQ{1, 0});
}
