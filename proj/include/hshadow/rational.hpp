#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hshadow {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact point in Q^n.
using PointQ = std::vector<Rational>;
/// Floating point in R^n.
using PointD = std::vector<double>;

/// "p/q" (or "p" when the denominator is one).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p", "p/q" or a finite decimal such as "0.25". Throws
/// ValidationError on anything else.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);
PointD to_double(const PointQ& p);

/// Squared Euclidean distance, exact.
Rational squared_distance(const PointQ& a, const PointQ& b);

}  // namespace hshadow
