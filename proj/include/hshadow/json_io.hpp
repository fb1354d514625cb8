#pragma once

#include "hshadow/pipeline.hpp"

#include <json.hpp>

#include <string>

namespace hshadow {

using Json = nlohmann::ordered_json;

/// Rationals as "p/q" strings (or "p" when integral).
Json to_json(const Rational& q);
/// {minpoly, rep, interval, approx}: rep holds coefficients in powers of the
/// field generator r, the root of minpoly inside interval. For rational
/// values minpoly is the linear polynomial of the value itself.
Json to_json(const Algebraic& a);
Json to_json(const PointQ& p);
Json to_json(const AlgebraicVector& v);
Json to_json(const RationalPolytope& p);
Json to_json(const IntMatrix& m);
Json to_json(const ZPoly& p);
Json to_json(const PFData& pf);
Json to_json(const ShadowLimit& s);
Json to_json(const DarknessLimit& d);
Json to_json(const ConvergenceReport& r);
Json to_json(const EquivarianceReport& r);
Json to_json(const MassCheck& m);
Json to_json(const RatioCheck& r);
Json to_json(const HPGraph& hp, const MarkovWeights* w = nullptr);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace hshadow
