#include "hshadow/svg.hpp"

#include "hshadow/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hshadow {

Projection default_projection(std::size_t dim) {
    Projection p(2, std::vector<double>(dim, 0.0));
    if (dim > 0) p[0][0] = 1.0;
    if (dim > 1) p[1][1] = 1.0;
    return p;
}

namespace {

std::pair<double, double> project(const Projection& proj, const PointD& x) {
    if (proj.size() != 2 || proj[0].size() != x.size() || proj[1].size() != x.size())
        throw ValidationError("projection must be a 2 x " + std::to_string(x.size()) + " matrix");
    double a = 0, b = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        a += proj[0][i] * x[i];
        b += proj[1][i] * x[i];
    }
    return {a, b};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else if (c == '"') out += "&quot;";
        else out += c;
    }
    return out;
}

}  // namespace

SvgPolyline shadow_polyline(const PolygonalShadow& s, double scale, std::string label) {
    SvgPolyline out;
    out.label = std::move(label);
    for (const auto& v : s.vertices) {
        PointD p(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) p[i] = static_cast<double>(v[i]) / scale;
        out.points.push_back(std::move(p));
    }
    return out;
}

SvgPolyline polytope_outline(const RationalPolytope& p, const Projection& proj, std::string label) {
    SvgPolyline out;
    out.label = std::move(label);
    out.closed = true;
    out.stroke = "red";
    struct Pt {
        double x, y;
        std::size_t i;
    };
    std::vector<Pt> pts;
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
        auto [a, b] = project(proj, to_double(p.vertices()[i]));
        pts.push_back({a, b, i});
    }
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (pts.size() < 3) {
        for (const auto& q : pts) out.points.push_back(to_double(p.vertices()[q.i]));
        return out;
    }
    // monotone chain
    auto cross = [](const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
    std::vector<Pt> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& q : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], q) <= 1e-12) --k;
        hull[k++] = q;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-12) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    for (const auto& q : hull) out.points.push_back(to_double(p.vertices()[q.i]));
    return out;
}

std::string render_svg(const std::vector<SvgPolyline>& objects, const Projection& proj, double size) {
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
    double xmax = -xmin, ymax = -xmin;
    std::vector<std::vector<std::pair<double, double>>> flat;
    for (const auto& o : objects) {
        auto& f = flat.emplace_back();
        for (const auto& p : o.points) {
            auto q = project(proj, p);
            xmin = std::min(xmin, q.first);
            xmax = std::max(xmax, q.first);
            ymin = std::min(ymin, q.second);
            ymax = std::max(ymax, q.second);
            f.push_back(q);
        }
    }
    if (xmin > xmax) xmin = ymin = 0, xmax = ymax = 1;
    const double margin = 0.05 * size;
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double s = (size - 2 * margin) / span;
    auto sx = [&](double x) { return margin + (x - xmin) * s; };
    auto sy = [&](double y) { return size - margin - (y - ymin) * s; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\"" << fmt(size)
       << "\" viewBox=\"0 0 " << fmt(size) << " " << fmt(size) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& o = objects[i];
        os << "<" << (o.closed ? "polygon" : "polyline") << " data-label=\"" << escape(o.label) << "\" fill=\"none\" stroke=\""
           << escape(o.stroke) << "\" stroke-width=\"1\" points=\"";
        for (std::size_t j = 0; j < flat[i].size(); ++j)
            os << (j ? " " : "") << fmt(sx(flat[i][j].first)) << "," << fmt(sy(flat[i][j].second));
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace hshadow
