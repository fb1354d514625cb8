#pragma once

#include "hshadow/int_matrix.hpp"
#include "hshadow/rational.hpp"
#include "hshadow/words.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hshadow {

struct Edge {
    std::string name;
    std::size_t from = 0;  // iota
    std::size_t to = 0;    // tau
};

/// Multigraph with oriented edges; loops and parallel edges allowed.
class DirectedGraph {
public:
    std::size_t add_vertex(std::string name);
    std::size_t add_edge(std::string name, std::size_t from, std::size_t to);

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }

    std::optional<std::size_t> find_vertex(const std::string& name) const;
    std::optional<std::size_t> find_edge(const std::string& name) const;

    /// Rose with one vertex "v" and petals named a, b, c, ...
    static DirectedGraph rose(std::size_t petals);

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
};

/// One traversal of an edge; dir = +1 runs iota -> tau. Also used for the
/// edge-end (direction) at its start vertex.
struct Step {
    std::size_t edge = 0;
    int dir = 1;

    Step inverse() const { return {edge, -dir}; }
    bool operator==(const Step&) const = default;
    auto operator<=>(const Step&) const = default;
};

std::size_t step_start(const DirectedGraph& g, Step s);
std::size_t step_end(const DirectedGraph& g, Step s);
/// Index in 0..2E-1: 2e for (e,+), 2e+1 for (e,-).
inline std::size_t direction_index(Step s) { return 2 * s.edge + (s.dir < 0 ? 1 : 0); }
inline Step direction_from_index(std::size_t i) { return {i / 2, (i % 2 == 0) ? 1 : -1}; }

class GraphPath {
public:
    GraphPath() = default;
    GraphPath(std::size_t start, std::vector<Step> steps);
    /// Checks that consecutive steps meet; throws ValidationError otherwise.
    static GraphPath checked(const DirectedGraph& g, std::size_t start, std::vector<Step> steps);
    static GraphPath single(const DirectedGraph& g, Step s);

    std::size_t start() const noexcept { return start_; }
    std::size_t end(const DirectedGraph& g) const;
    const std::vector<Step>& steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_.size(); }
    bool empty() const noexcept { return steps_.empty(); }

    GraphPath reversed(const DirectedGraph& g) const;
    /// Concatenation without reduction; `next` must start where this ends.
    GraphPath then(const DirectedGraph& g, const GraphPath& next) const;
    bool immersed() const;

    bool operator==(const GraphPath&) const = default;

private:
    std::size_t start_ = 0;
    std::vector<Step> steps_;
};

/// Repeatedly removes e e-bar.
GraphPath path_reduce(const GraphPath& p);
/// Signed crossing counts in Z^E (declared orientation positive).
std::vector<std::int64_t> hat(const GraphPath& p, std::size_t edge_count);
/// Readable form, e.g. "e1 e2^-1".
std::string to_string(const DirectedGraph& g, const GraphPath& p);

struct SpanningTree {
    std::vector<bool> in_tree;              // per edge
    std::vector<std::size_t> complement;    // A, in declaration order
    std::vector<GraphPath> to_basepoint;    // p_v: tree path from v to v0
};

/// Breadth-first from v0, edges scanned in declaration order. Throws
/// ValidationError if the graph is disconnected.
SpanningTree spanning_tree(const DirectedGraph& g, std::size_t v0);

/// Word over F_A (generator i+1 is complement[i]) read off p, reduced.
Word reading_map(const SpanningTree& t, const GraphPath& p);

/// Boundary matrix V x E: column e is tau(e) - iota(e).
IntMatrix boundary_matrix(const DirectedGraph& g);
/// Integral basis of ker(boundary): fundamental cycles of the BFS tree(s).
std::vector<std::vector<Rational>> cycle_space(const DirectedGraph& g);

/// Partition of the edge-ends at each vertex. gate_of[direction_index(d)]
/// is a gate id; ids are global, so two ends share a gate iff ids match.
struct Gates {
    std::vector<int> gate_of;

    bool same_gate(Step a, Step b) const { return gate_of[direction_index(a)] == gate_of[direction_index(b)]; }
    bool empty() const noexcept { return gate_of.empty(); }
};

struct MarkedGraph {
    DirectedGraph graph;
    std::size_t basepoint = 0;
    Gates gates;  // may be empty: GraphMap then uses the induced gates
};

/// Turn at a vertex: two edge-ends leaving it.
struct Turn {
    Step first, second;
    bool operator==(const Turn&) const = default;
    auto operator<=>(const Turn&) const = default;
};

class GraphMap {
public:
    GraphMap() = default;
    /// Edge images must be nonempty paths from the image of iota(e) to the
    /// image of tau(e); the basepoint must be fixed (ValidationError
    /// otherwise; replace the map by a power first). Missing gates are
    /// replaced by the gates induced by the derivative map.
    GraphMap(MarkedGraph marked, std::vector<std::size_t> vertex_images, std::vector<GraphPath> edge_images);

    /// Rose map from an automorphism; gates optional.
    static GraphMap from_automorphism(const Automorphism& f, Gates gates = {});

    const MarkedGraph& marked() const noexcept { return marked_; }
    const DirectedGraph& graph() const noexcept { return marked_.graph; }
    const Gates& gates() const noexcept { return marked_.gates; }
    bool gates_were_induced() const noexcept { return gates_induced_; }
    std::size_t basepoint() const noexcept { return marked_.basepoint; }
    std::size_t vertex_image(std::size_t v) const { return vertex_images_.at(v); }
    const std::vector<std::size_t>& vertex_images() const noexcept { return vertex_images_; }
    const GraphPath& edge_image(std::size_t e) const { return edge_images_.at(e); }
    const std::vector<GraphPath>& edge_images() const noexcept { return edge_images_; }

    /// phi(s) as a path (the reversed image for dir = -1).
    GraphPath step_image(Step s) const;
    /// Tightened image phi(p)^red.
    GraphPath apply(const GraphPath& p) const;
    /// k-fold tightened image; BudgetExceeded past `budget` steps.
    GraphPath apply(const GraphPath& p, unsigned k, std::size_t budget) const;
    /// Derivative map on edge-ends.
    Step derivative(Step d) const;

    /// phi^m with tightened edge images, same gates.
    GraphMap power(unsigned m) const;

private:
    MarkedGraph marked_;
    std::vector<std::size_t> vertex_images_;
    std::vector<GraphPath> edge_images_;
    bool gates_induced_ = false;
};

/// d1 ~ d2 iff their derivative orbits eventually meet.
Gates induced_gates(const GraphMap& phi);

bool is_legal(const Gates& gates, const GraphPath& p);
bool is_legal(const Gates& gates, const Turn& t);

/// T(i,j) = number of times phi(e_i) crosses e_j.
IntMatrix transition_matrix(const GraphMap& phi);
/// N x N matrix, column j = hat(phi(e_j)).
IntMatrix abelianization_on_edges(const GraphMap& phi);
/// phi_ab(p-hat) - p-hat.
std::vector<std::int64_t> abelianization_defect(const GraphMap& phi, const GraphPath& p);

struct TrainTrackReport {
    bool images_immersed = true;
    bool images_legal = true;
    bool gates_valid = true;
    bool turns_legal = true;  // every legal turn goes to a legal turn
    bool closure_legal = true;
    bool primitive = false;
    std::optional<unsigned> primitivity_exponent;
    /// Turns crossed by edge images, closed under the derivative map.
    std::vector<Turn> taken_turn_closure;
    std::vector<std::string> problems;

    bool ok() const {
        return images_immersed && images_legal && gates_valid && turns_legal && closure_legal && primitive;
    }
};

TrainTrackReport validate_train_track(const GraphMap& phi);

/// f_A on F_A for the BFS spanning tree at the basepoint.
Automorphism induced_automorphism(const GraphMap& phi, const SpanningTree& tree);

/// All immersed paths with exactly `length` steps starting at v (length 0
/// gives the empty path).
std::vector<GraphPath> enumerate_immersed_paths(const DirectedGraph& g, std::size_t v, std::size_t length);

}  // namespace hshadow
