#pragma once

#include "hshadow/graphs.hpp"
#include "hshadow/rational.hpp"
#include "hshadow/spectral.hpp"
#include "hshadow/words.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hshadow {

using LatticePoint = std::vector<std::int64_t>;

/// Lattice polyline traced by a path: vertex j is the hat of the length-j
/// prefix, segment j comes from step j.
struct PolygonalShadow {
    std::vector<LatticePoint> vertices;
    std::vector<Step> segments;
};

/// The rose path spelling w (petal g-1 for generator g).
GraphPath rose_path(const Word& w);

PolygonalShadow parametrized_shadow(const GraphPath& p, std::size_t dim);
PolygonalShadow parametrized_shadow(const Word& w, std::size_t rank);

/// Unit lattice segment [base, base + e_axis], orientation ignored.
struct LatticeSegment {
    LatticePoint base;
    std::size_t axis = 0;
    auto operator<=>(const LatticeSegment&) const = default;
};

/// Streaming shadow: position, crossing count per segment, distinct vertices.
/// Lets long words be processed without storing the polyline.
class ShadowAccumulator {
public:
    explicit ShadowAccumulator(std::size_t dim);

    void push(Step s);
    void push(const GraphPath& p);
    void push(const Word& w);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t length() const noexcept { return length_; }
    const LatticePoint& position() const noexcept { return pos_; }
    const std::map<LatticeSegment, std::int64_t>& segment_counts() const noexcept { return counts_; }
    /// Every vertex visited, including the origin.
    std::set<LatticePoint> vertices() const;

private:
    std::size_t dim_;
    std::size_t length_ = 0;
    LatticePoint pos_;
    std::map<LatticeSegment, std::int64_t> counts_;
};

/// Darkness: mass c_s l(e_s) / l(p) on each traversed segment, living on
/// the shadow rescaled by 1/scale.
struct SegmentMeasure {
    std::map<LatticeSegment, Algebraic> mass;
    Rational scale = 1;

    Algebraic total() const;
};

SegmentMeasure darkness_measure(const ShadowAccumulator& acc, const LengthFunction& l, const Rational& scale = 1);
SegmentMeasure darkness_measure(const GraphPath& p, std::size_t dim, const LengthFunction& l, const Rational& scale = 1);
SegmentMeasure darkness_measure(const Word& w, std::size_t rank, const LengthFunction& l, const Rational& scale = 1);

/// Half-point set, stored with doubled coordinates (so entries are integers
/// with exactly one odd coordinate).
struct HalfPointSet {
    std::set<LatticePoint> doubled;

    std::size_t size() const noexcept { return doubled.size(); }
    bool operator==(const HalfPointSet&) const = default;
    std::vector<PointQ> points() const;
};

HalfPointSet half_points(const ShadowAccumulator& acc);
HalfPointSet half_points(const GraphPath& p, std::size_t dim);
HalfPointSet half_points(const Word& w, std::size_t rank);
/// Throws ValidationError unless l is the unit length function.
HalfPointSet half_points(const GraphPath& p, std::size_t dim, const LengthFunction& l);

using PointCloud = std::vector<PointD>;

/// Distinct points base + (j/samples) e_axis on every traversed segment,
/// rescaled by 1/scale. samples = 2 gives vertices plus midpoints.
PointCloud shadow_point_cloud(const ShadowAccumulator& acc, unsigned samples = 4, double scale = 1.0);
PointCloud to_cloud(const HalfPointSet& h, double scale = 1.0);

/// max over X of the distance to Y. Parallel over X.
double directed_hausdorff(const PointCloud& x, const PointCloud& y);
double directed_hausdorff_serial(const PointCloud& x, const PointCloud& y);
double hausdorff_distance(const PointCloud& x, const PointCloud& y);
double hausdorff_distance_serial(const PointCloud& x, const PointCloud& y);

/// q_0 + sum q_D sqrt(D), D > 1 squarefree in its small prime factors.
class SurdSum {
public:
    SurdSum() = default;
    SurdSum(const Rational& q);  // NOLINT(google-explicit-constructor)

    /// c * sqrt(s) for rational s >= 0.
    static SurdSum sqrt_term(const Rational& c, const Rational& s);

    SurdSum& operator+=(const SurdSum& o);
    SurdSum& operator*=(const Rational& q);
    friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
    friend SurdSum operator*(SurdSum a, const Rational& q) { return a *= q; }

    bool is_rational() const noexcept { return terms_.empty(); }
    const Rational& rational_part() const noexcept { return q_; }
    const std::map<Integer, Rational>& surd_terms() const noexcept { return terms_; }
    double to_double() const;
    std::string to_string() const;
    bool operator==(const SurdSum&) const = default;

private:
    Rational q_ = 0;
    std::map<Integer, Rational> terms_;
};

/// Exact measure of the closed ball; masses must be rational.
SurdSum ball_mass(const SegmentMeasure& mu, const PointQ& center, const Rational& radius);
/// Floating version; accepts Q[rho] masses.
double ball_mass_approx(const SegmentMeasure& mu, const PointD& center, double radius);

}  // namespace hshadow
