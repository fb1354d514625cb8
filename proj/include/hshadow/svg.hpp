#pragma once

#include "hshadow/polytope.hpp"
#include "hshadow/shadows.hpp"

#include <string>
#include <vector>

namespace hshadow {

/// Rows of a 2 x n matrix.
using Projection = std::vector<std::vector<double>>;

Projection default_projection(std::size_t dim);

struct SvgPolyline {
    std::string label;
    std::vector<PointD> points;  // in R^n, projected at render time
    std::string stroke = "black";
    bool closed = false;
};

/// Shadow vertices scaled by 1/scale.
SvgPolyline shadow_polyline(const PolygonalShadow& s, double scale, std::string label);
/// Vertices of P on the boundary of its projected hull, in order.
SvgPolyline polytope_outline(const RationalPolytope& p, const Projection& proj, std::string label);

/// One <polyline> (or <polygon> when closed) per object; coordinates printed
/// with fixed precision so equal inputs give equal bytes.
std::string render_svg(const std::vector<SvgPolyline>& objects, const Projection& proj, double size = 480.0);

}  // namespace hshadow
