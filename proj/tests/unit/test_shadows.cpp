#include "doctest.h"

#include "hshadow/errors.hpp"
#include "hshadow/shadows.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace hshadow;

namespace {

std::vector<LatticePoint> prefix_sums(const Word& w, std::size_t rank) {
    std::vector<LatticePoint> out{LatticePoint(rank, 0)};
    for (Letter l : w.letters()) {
        LatticePoint p = out.back();
        p[static_cast<std::size_t>(generator_of(l) - 1)] += sign_of(l);
        out.push_back(p);
    }
    return out;
}

// doubled midpoints of consecutive prefix sums
std::set<LatticePoint> doubled_midpoints(const Word& w, std::size_t rank) {
    auto v = prefix_sums(w, rank);
    std::set<LatticePoint> out;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        LatticePoint m(rank);
        for (std::size_t j = 0; j < rank; ++j) m[j] = v[i][j] + v[i + 1][j];
        out.insert(m);
    }
    return out;
}

}  // namespace

TEST_CASE("parametrized shadows match prefix sums") {
    Word w = parse_word("a b^3 a^-2 b^-1 a^2", 2);
    PolygonalShadow s = parametrized_shadow(w, 2);
    std::vector<LatticePoint> expected{{0, 0}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {0, 3}, {-1, 3}, {-1, 2}, {0, 2}, {1, 2}};
    CHECK(s.vertices == expected);
    CHECK(s.vertices == prefix_sums(w, 2));
    CHECK(s.segments.size() == 9);

    CHECK(parametrized_shadow(Word{}, 2).vertices == std::vector<LatticePoint>{{0, 0}});
    CHECK(parametrized_shadow(parse_word("b^2 a b^-2", 2), 2).vertices ==
          std::vector<LatticePoint>{{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1}, {1, 0}});

    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        Word r = random_reduced_word(rng, 4, 200);
        CHECK(parametrized_shadow(r, 4).vertices == prefix_sums(r, 4));
        ShadowAccumulator acc(4);
        acc.push(r);
        auto pts = prefix_sums(r, 4);
        CHECK(acc.vertices() == std::set<LatticePoint>(pts.begin(), pts.end()));
        CHECK(acc.position() == pts.back());
        CHECK(acc.length() == 200);
    }
}

TEST_CASE("darkness measures") {
    Word w = parse_word("a b^3 a^-2 b^-1 a^2", 2);
    SegmentMeasure mu = darkness_measure(w, 2, LengthFunction::unit(2));
    CHECK(mu.mass.size() == 9);
    for (const auto& [seg, m] : mu.mass) CHECK(m == Algebraic(Rational(1, 9)));
    CHECK(mu.total() == Algebraic(1));

    SegmentMeasure one = darkness_measure(parse_word("a", 2), 2, LengthFunction::rational({Rational(3), Rational(7)}));
    CHECK(one.mass.size() == 1);
    CHECK(one.mass.begin()->second == Algebraic(1));

    for (int n = 1; n <= 6; ++n) {
        std::string s = "b^" + std::to_string(n) + " a b^-" + std::to_string(n);
        SegmentMeasure m = darkness_measure(parse_word(s, 2), 2, LengthFunction::unit(2));
        CHECK(m.mass.size() == static_cast<std::size_t>(2 * n + 1));
        for (const auto& [seg, x] : m.mass) CHECK(x == Algebraic(Rational(1, 2 * n + 1)));
    }

    // a segment crossed twice carries twice the mass
    SegmentMeasure back = darkness_measure(parse_word("a b a B", 2), 2, LengthFunction::rational({Rational(1), Rational(3)}));
    Algebraic total = back.total();
    CHECK(total == Algebraic(1));
    CHECK(back.mass.size() == 4);
}

TEST_CASE("half points") {
    CHECK(half_points(parse_word("a", 2), 2).points() == std::vector<PointQ>{{Rational(1, 2), Rational(0)}});
    Word w = parse_word("ababA", 2);
    HalfPointSet h = half_points(w, 2);
    std::set<LatticePoint> expected{{1, 0}, {2, 1}, {3, 2}, {4, 3}, {3, 4}};
    CHECK(h.doubled == expected);
    CHECK(half_points(Word{}, 2).size() == 0);

    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        Word r = random_reduced_word(rng, 3, 150);
        CHECK(half_points(r, 3).doubled == doubled_midpoints(r, 3));
    }
    CHECK_THROWS_AS(half_points(rose_path(w), 2, LengthFunction::rational({Rational(1), Rational(2)})), ValidationError);
}

TEST_CASE("hausdorff distances") {
    PointCloud x{{0.0, 0.0}};
    CHECK(hausdorff_distance(x, x) == 0.0);
    CHECK(hausdorff_distance(x, PointCloud{{3.0, 4.0}}) == doctest::Approx(5.0));

    ShadowAccumulator seg(2);
    seg.push(parse_word("a", 2));
    PointCloud dense = shadow_point_cloud(seg, 4);
    CHECK(dense.size() == 5);
    CHECK(hausdorff_distance(dense, PointCloud{{0.0, 0.0}, {1.0, 0.0}}) == doctest::Approx(0.5));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int t = 0; t < 10; ++t) {
        PointCloud a(500), b(300);
        for (auto& p : a) p = {u(rng), u(rng), u(rng)};
        for (auto& p : b) p = {u(rng), u(rng), u(rng)};
        // brute-force oracle
        double d = 0.0;
        for (const auto& p : a) {
            double best = INFINITY;
            for (const auto& q : b) best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]));
            d = std::max(d, best);
        }
        CHECK(directed_hausdorff(a, b) == doctest::Approx(d).epsilon(1e-12));
        CHECK(directed_hausdorff_serial(a, b) == doctest::Approx(d).epsilon(1e-12));
        CHECK(hausdorff_distance(a, b) == hausdorff_distance_serial(a, b));
    }
}

TEST_CASE("exact ball masses") {
    Word w = parse_word("a b^3 a^-2 b^-1 a^2", 2);
    SegmentMeasure mu = darkness_measure(w, 2, LengthFunction::unit(2));
    SurdSum m = ball_mass(mu, {Rational(1), Rational(3, 2)}, Rational(1, 2));
    CHECK(m == SurdSum(Rational(1, 9)));
    CHECK(ball_mass(mu, {Rational(0), Rational(3, 2)}, Rational(100)) == SurdSum(Rational(1)));
    CHECK(ball_mass(mu, {Rational(50), Rational(50)}, Rational(1)) == SurdSum(Rational(0)));
    CHECK(ball_mass_approx(mu, {1.0, 1.5}, 0.5) == doctest::Approx(1.0 / 9.0));

    // chord of length 2 sqrt(r^2 - d^2) on the segment [(0,0),(1,0)] for a center at height 1/2
    SegmentMeasure a = darkness_measure(parse_word("a", 2), 2, LengthFunction::unit(2));
    SurdSum chord = ball_mass(a, {Rational(1, 2), Rational(1, 2)}, Rational(2, 3));
    // sqrt(4/9 - 1/4) = sqrt(7)/6, chord sqrt(7)/3
    CHECK(chord == SurdSum::sqrt_term(Rational(1, 3), Rational(7)));
    CHECK(chord.to_double() == doctest::Approx(std::sqrt(7.0) / 3.0));
    // larger radius: the chord covers the whole segment
    CHECK(ball_mass(a, {Rational(1, 2), Rational(1, 2)}, Rational(3, 4)) == SurdSum(Rational(1)));
}
