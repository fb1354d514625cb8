#pragma once

#include "hshadow/graphs.hpp"
#include "hshadow/rational.hpp"
#include "hshadow/words.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hshadow {

enum class LengthChoice { unit, train, file };

LengthChoice parse_length_choice(std::string_view s);
std::string to_string(LengthChoice c);

/// Parsed input file. Rose inputs (`map:`) and graph inputs (`graph:` +
/// `ttmap:`) both end up as a GraphMap; seeds, conjugators and predicted
/// points live in F_n with n = number of edges outside the spanning tree,
/// lettered a, b, c, ... in edge declaration order.
struct ProblemSpec {
    std::string name;
    GraphMap map;
    bool rose = false;
    std::optional<Automorphism> rose_automorphism;  // with its inverse when `map_inverse:` is given
    bool explicit_gates = false;
    std::optional<Automorphism> conjugator;  // always carries the inverse
    std::vector<Word> seeds;
    LengthChoice length = LengthChoice::unit;
    std::vector<Rational> lengths;  // per edge of G, `lengths:` section
    unsigned k_min = 1;
    unsigned k_max = 8;
    bool override_hypotheses = false;
    std::vector<PointQ> predicted;  // optional vertices of an expected shadow limit

    std::size_t free_rank() const;
};

/// Throws ParseError (line, column) on syntax errors, unknown generators and
/// edge images that are not immersed paths.
ProblemSpec parse_input(std::string_view text);

/// Canonical text: fixed section order, one item per line, two-space indent.
std::string serialize(const ProblemSpec& spec);

}  // namespace hshadow
