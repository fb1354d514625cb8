#include "doctest.h"

#include "hshadow/dsl.hpp"
#include "hshadow/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hshadow;

namespace {

std::string read(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<std::size_t, std::size_t> error_position(const std::string& text) {
    try {
        parse_input(text);
    } catch (const ParseError& e) {
        return {e.line(), e.column()};
    }
    return {0, 0};
}

}  // namespace

TEST_CASE("canonical text is a fixed point for every input") {
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(HSHADOW_DATA_DIR)) {
        if (entry.path().extension() != ".txt") continue;
        ++files;
        CAPTURE(entry.path().string());
        ProblemSpec a = parse_input(read(entry.path()));
        std::string canon = serialize(a);
        ProblemSpec b = parse_input(canon);
        CHECK(serialize(b) == canon);
        CHECK(b.name == a.name);
        CHECK(b.seeds == a.seeds);
        CHECK(b.map.edge_images() == a.map.edge_images());
        CHECK(b.map.gates().gate_of == a.map.gates().gate_of);
        CHECK(b.predicted == a.predicted);
        CHECK(b.lengths == a.lengths);
        CHECK(b.override_hypotheses == a.override_hypotheses);
    }
    CHECK(files >= 9);
}

TEST_CASE("the g input") {
    ProblemSpec g = parse_input(read(std::string(HSHADOW_DATA_DIR) + "/g.txt"));
    CHECK(g.name == "g");
    CHECK(g.rose);
    CHECK(g.free_rank() == 3);
    CHECK(g.k_min == 1);
    CHECK(g.k_max == 6);
    CHECK(g.seeds == std::vector<Word>{parse_word("a", 3)});
    CHECK(g.rose_automorphism->has_inverse());
    CHECK(to_string(g.rose_automorphism->image(1)) == "cbCbaBcBC");
    CHECK(g.length == LengthChoice::unit);
}

TEST_CASE("graph inputs") {
    ProblemSpec t = parse_input(read(std::string(HSHADOW_DATA_DIR) + "/theta_mechanical.txt"));
    CHECK_FALSE(t.rose);
    CHECK(t.map.graph().vertex_count() == 2);
    CHECK(t.free_rank() == 2);
    CHECK(t.lengths == std::vector<Rational>{1, 2, Rational(1, 2)});
    CHECK(t.length == LengthChoice::file);
    CHECK(t.override_hypotheses);
    // vertex images inferred from edge images
    CHECK(t.map.vertex_images() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rejections carry positions") {
    const std::string head = "name: bad\nrank: 2\nmap:\n";
    CHECK(error_position(head + "  a -> a A b\n  b -> b\n") == std::pair<std::size_t, std::size_t>{4, 10});
    CHECK(error_position(head + "  a -> ab\n  b -> c\n") == std::pair<std::size_t, std::size_t>{5, 8});
    CHECK(error_position(head + "  a -> ab\n").first == 3);
    CHECK(error_position(head + "  a -> ab\n  b -> a\nfoo: 1\n") == std::pair<std::size_t, std::size_t>{6, 1});
    CHECK(error_position(head + "  a -> ab\n  b -> a\nmap:\n  a -> a\n").first == 6);
    CHECK(error_position(head + "  a -> ab\n  b -> a\niterations: 3..x\n").first == 6);

    const std::string graph = "name: bad\ngraph:\n  x: v -> w\n  y: w -> v\nbasepoint: v\nttmap:\n";
    // x then x^-1 inside an image
    CHECK(error_position(graph + "  x -> x y y^-1\n  y -> y\n").first == 7);
    // y does not start at the end of x
    CHECK(error_position(graph + "  x -> x x\n  y -> y\n").first == 7);
    CHECK(error_position(graph + "  x -> x z\n  y -> y\n") == std::pair<std::size_t, std::size_t>{7, 10});

    CHECK_THROWS_AS(parse_length_choice("nope"), ValidationError);
    CHECK(parse_length_choice("train") == LengthChoice::train);
    CHECK(to_string(LengthChoice::file) == "file");
}

TEST_CASE("inverse and conjugator sections are checked") {
    const std::string head = "name: x\nrank: 2\nmap:\n  a -> ab\n  b -> a\n";
    CHECK_NOTHROW(parse_input(head + "map_inverse:\n  a -> b\n  b -> Ba\n"));
    CHECK_THROWS_AS(parse_input(head + "map_inverse:\n  a -> b\n  b -> a\n"), ValidationError);
    CHECK_THROWS_AS(parse_input(head + "conjugator:\n  a -> ab\n  b -> b\n"), ValidationError);
    ProblemSpec c = parse_input(head + "conjugator:\n  a -> ab\n  b -> b\nconjugator_inverse:\n  a -> aB\n  b -> b\n");
    CHECK(c.conjugator->has_inverse());
}
