#pragma once

#include "hshadow/graphs.hpp"
#include "hshadow/linprog.hpp"
#include "hshadow/rational.hpp"
#include "hshadow/shadows.hpp"

#include <cstddef>
#include <vector>

namespace hshadow {

/// Convex hull of finitely many rational points, stored as its extreme
/// points in lexicographic order (so == is polytope equality).
class RationalPolytope {
public:
    RationalPolytope() = default;
    /// Deduplicates and drops every point in the hull of the others.
    static RationalPolytope from_points(std::vector<PointQ> points);
    /// Points already known to be extreme; only deduplicated.
    static RationalPolytope from_vertices(std::vector<PointQ> points);

    const std::vector<PointQ>& vertices() const noexcept { return v_; }
    std::size_t ambient_dimension() const noexcept { return v_.empty() ? 0 : v_[0].size(); }
    std::size_t affine_dimension() const;
    bool empty() const noexcept { return v_.empty(); }

    bool operator==(const RationalPolytope&) const = default;

private:
    std::vector<PointQ> v_;
};

/// Linear map Q^cols -> Q^rows.
using LinearMapExact = RationalMatrix;

inline constexpr std::size_t kDefaultBasisBudget = 5'000'000;

/// Vertices of {x >= 0 : boundary x = 0, sum x = 1}, by enumerating basic
/// feasible solutions over column subsets. BudgetExceeded past `budget`
/// subsets; ValidationError if the system is infeasible (no directed cycle).
RationalPolytope sigma1(const DirectedGraph& g, std::size_t budget = kDefaultBasisBudget);
RationalPolytope sigma1_serial(const DirectedGraph& g, std::size_t budget = kDefaultBasisBudget);

RationalPolytope linear_image(const RationalPolytope& p, const LinearMapExact& m);

struct CycleMeanPolytope {
    RationalPolytope polytope;
    Integer simple_cycles = 0;  // = number of vertices of sigma1
};

/// conv{ mean of labels over a simple directed cycle }, equal to
/// linear_image(sigma1(g), labels as columns). Parallel edges are collapsed
/// to the extreme points of their labels, so only cycles in the underlying
/// simple digraph are walked.
CycleMeanPolytope cycle_mean_polytope(const DirectedGraph& g, const std::vector<PointQ>& labels);

/// Exact membership (linear programming).
bool contains(const RationalPolytope& p, const PointQ& x);
/// Euclidean distance <= tol.
bool contains(const RationalPolytope& p, const PointD& x, double tol);

/// Minimum-norm point of conv(points) (Wolfe). Returns barycentric weights.
std::vector<Rational> min_norm_weights(const std::vector<PointQ>& points);
std::vector<double> min_norm_weights(const std::vector<PointD>& points);

Rational squared_distance_exact(const RationalPolytope& p, const PointQ& x);
double distance(const RationalPolytope& p, const PointD& x);

/// Vertices plus barycentric grid points with denominator 2^depth on every
/// segment and triangle spanned by vertices, plus the barycenter.
PointCloud sample(const RationalPolytope& p, unsigned depth = 3);

/// max(max over S of distance to P, max over sample(P) of distance to S).
double hausdorff_to_cloud(const RationalPolytope& p, const PointCloud& s, unsigned depth = 3);

}  // namespace hshadow
