#include "doctest.h"

#include "hshadow/dsl.hpp"
#include "hshadow/errors.hpp"
#include "hshadow/graphs.hpp"
#include "hshadow/linprog.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace hshadow;

namespace {

DirectedGraph theta() {
    DirectedGraph g;
    auto v = g.add_vertex("v");
    auto w = g.add_vertex("w");
    g.add_edge("e1", v, w);
    g.add_edge("e2", v, w);
    g.add_edge("e3", v, w);
    return g;
}

GraphMap rose_map(const char* a, const char* b) {
    return GraphMap::from_automorphism(Automorphism({parse_word(a, 2), parse_word(b, 2)}));
}

ProblemSpec load(const std::string& name) {
    std::ifstream in(std::string(HSHADOW_DATA_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_input(ss.str());
}

}  // namespace

TEST_CASE("spanning tree and reading map on the theta graph") {
    DirectedGraph g = theta();
    SpanningTree t = spanning_tree(g, 0);
    CHECK(t.in_tree == std::vector<bool>{true, false, false});
    CHECK(t.complement == std::vector<std::size_t>{1, 2});
    // x2 is generator 1, x3 generator 2
    GraphPath p = GraphPath::checked(g, 0, {{1, 1}, {0, -1}});
    CHECK(to_string(reading_map(t, p)) == "a");
    GraphPath c = GraphPath::checked(g, 0, {{1, 1}, {2, -1}});
    CHECK(to_string(reading_map(t, c)) == "aB");
    CHECK_THROWS_AS(GraphPath::checked(g, 0, {{1, 1}, {2, 1}}), ValidationError);

    DirectedGraph split;
    split.add_vertex("a");
    split.add_vertex("b");
    CHECK_THROWS_AS(spanning_tree(split, 0), ValidationError);
}

TEST_CASE("path_reduce") {
    CHECK(path_reduce(GraphPath(0, {{0, 1}, {0, -1}})).empty());
    GraphPath im(0, {{0, 1}, {1, 1}, {2, -1}});
    CHECK(path_reduce(im) == im);
    CHECK(path_reduce(GraphPath(0, {{0, 1}, {1, 1}, {1, -1}, {2, 1}})) == GraphPath(0, {{0, 1}, {2, 1}}));
    CHECK(path_reduce(GraphPath(0, {{0, 1}, {1, 1}, {2, 1}, {2, -1}, {1, -1}, {0, -1}})).empty());
}

TEST_CASE("cycle space") {
    auto check_kernel = [](const DirectedGraph& g, std::size_t dim) {
        auto basis = cycle_space(g);
        CHECK(basis.size() == dim);
        IntMatrix bd = boundary_matrix(g);
        for (const auto& z : basis)
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                Rational s = 0;
                for (std::size_t e = 0; e < g.edge_count(); ++e) s += z[e] * static_cast<long>(bd(v, e));
                CHECK(s == 0);
            }
        if (!basis.empty()) CHECK(rank(basis) == dim);
    };
    check_kernel(DirectedGraph::rose(4), 4);
    auto rb = cycle_space(DirectedGraph::rose(2));
    CHECK(rb == std::vector<std::vector<Rational>>{{1, 0}, {0, 1}});

    DirectedGraph th = theta();
    check_kernel(th, 2);
    // same span as {e1 - e2, e2 - e3}
    auto basis = cycle_space(th);
    RationalMatrix both = basis;
    both.push_back({1, -1, 0});
    both.push_back({0, 1, -1});
    CHECK(rank(both) == 2);

    DirectedGraph tree;
    for (int i = 0; i < 4; ++i) tree.add_vertex("v" + std::to_string(i));
    tree.add_edge("x", 0, 1);
    tree.add_edge("y", 1, 2);
    tree.add_edge("z", 1, 3);
    CHECK(cycle_space(tree).empty());
}

TEST_CASE("transition matrices") {
    CHECK(transition_matrix(rose_map("ababA", "baBAb")) == IntMatrix{{3, 2}, {2, 3}});
    CHECK(transition_matrix(rose_map("a", "b")) == IntMatrix::identity(2));
    CHECK(transition_matrix(rose_map("ab", "a")) == IntMatrix{{1, 1}, {1, 0}});
}

TEST_CASE("train track validation") {
    TrainTrackReport fib = validate_train_track(rose_map("ab", "a"));
    CHECK(fib.ok());

    TrainTrackReport s = validate_train_track(rose_map("ababA", "baBAb"));
    CHECK(s.ok());
    CHECK(s.primitivity_exponent == 1u);

    TrainTrackReport id = validate_train_track(rose_map("a", "b"));
    CHECK_FALSE(id.ok());
    CHECK_FALSE(id.primitive);

    // e e-bar inside an edge image
    DirectedGraph r = DirectedGraph::rose(2);
    MarkedGraph m{r, 0, {}};
    bool rejected = false;
    try {
        GraphMap bad(m, {0}, {GraphPath(0, {{0, 1}, {1, 1}, {1, -1}}), GraphPath(0, {{1, 1}})});
        rejected = !validate_train_track(bad).images_immersed;
    } catch (const ValidationError&) {
        rejected = true;
    }
    CHECK(rejected);

    // g has a single gate at the vertex once induced
    ProblemSpec g = load("g.txt");
    CHECK_FALSE(validate_train_track(g.map).ok());
}

TEST_CASE("gates and legality") {
    GraphMap fib = rose_map("ab", "a");
    const Gates& gates = fib.gates();
    CHECK(fib.gates_were_induced());
    // Df(a+) = a+, Df(b+) = a+ so a+ ~ b+; Df swaps a- and b-
    CHECK(gates.same_gate({0, 1}, {1, 1}));
    CHECK_FALSE(gates.same_gate({0, -1}, {1, -1}));
    CHECK_FALSE(gates.same_gate({0, 1}, {0, -1}));
    CHECK(is_legal(gates, fib.edge_image(0)));
}

TEST_CASE("abelianization defect") {
    GraphMap id = rose_map("a", "b");
    CHECK(abelianization_defect(id, GraphPath(0, {{0, 1}, {1, -1}})) == std::vector<std::int64_t>{0, 0});

    ProblemSpec ia = load("ia_train_track.txt");
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        Word w = random_reduced_word(rng, 3, 12);
        std::vector<Step> steps;
        for (Letter l : w.letters()) steps.push_back({static_cast<std::size_t>(generator_of(l) - 1), sign_of(l)});
        CHECK(abelianization_defect(ia.map, GraphPath(0, steps)) == std::vector<std::int64_t>(3, 0));
    }

    // on the subdivided rose the defect only depends on the endpoints
    ProblemSpec sub = load("ia_subdivided.txt");
    const DirectedGraph& g = sub.map.graph();
    std::vector<std::vector<std::int64_t>> by_end(g.vertex_count());
    std::vector<bool> seen(g.vertex_count(), false);
    for (std::size_t len = 1; len <= 4; ++len)
        for (const auto& p : enumerate_immersed_paths(g, 0, len)) {
            auto d = abelianization_defect(sub.map, p);
            std::size_t end = p.end(g);
            if (!seen[end]) {
                seen[end] = true;
                by_end[end] = d;
            }
            CHECK(d == by_end[end]);
        }
}

TEST_CASE("immersed path enumeration") {
    for (std::size_t n = 1; n <= 3; ++n) {
        std::size_t expected = 2 * n;
        for (std::size_t l = 1; l <= 4; ++l) {
            CHECK(enumerate_immersed_paths(DirectedGraph::rose(n), 0, l).size() == expected);
            expected *= 2 * n - 1;
        }
    }
    DirectedGraph th = theta();
    CHECK(enumerate_immersed_paths(th, 0, 1).size() == 3);
    CHECK(enumerate_immersed_paths(th, 0, 2).size() == 6);
    CHECK(enumerate_immersed_paths(th, 0, 0).size() == 1);
}

TEST_CASE("powers and iterated images") {
    ProblemSpec ia = load("ia_train_track.txt");
    GraphMap sq = ia.map.power(2);
    for (std::size_t e = 0; e < 3; ++e) CHECK(sq.edge_image(e) == ia.map.apply(ia.map.edge_image(e)));
    GraphPath p(0, {{0, 1}, {1, -1}});
    CHECK(ia.map.apply(p, 3, 1'000'000) == ia.map.apply(ia.map.apply(ia.map.apply(p))));
    CHECK_THROWS_AS(ia.map.apply(p, 12, 1000), BudgetExceeded);
}

TEST_CASE("induced automorphism of the subdivided rose") {
    ProblemSpec sub = load("ia_subdivided.txt");
    ProblemSpec rose = load("ia_train_track.txt");
    SpanningTree t = spanning_tree(sub.map.graph(), sub.map.basepoint());
    Automorphism f = induced_automorphism(sub.map, t);
    CHECK(f.images() == rose.rose_automorphism->images());
}
