#include "hshadow/graphs.hpp"

#include "hshadow/errors.hpp"
#include "hshadow/spectral.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace hshadow {

std::size_t DirectedGraph::add_vertex(std::string name) {
    if (find_vertex(name)) throw ValidationError("duplicate vertex '" + name + "'");
    vertices_.push_back(std::move(name));
    return vertices_.size() - 1;
}

std::size_t DirectedGraph::add_edge(std::string name, std::size_t from, std::size_t to) {
    if (from >= vertices_.size() || to >= vertices_.size()) throw ValidationError("edge '" + name + "' has an unknown endpoint");
    if (!name.empty() && find_edge(name)) throw ValidationError("duplicate edge '" + name + "'");
    edges_.push_back({std::move(name), from, to});
    return edges_.size() - 1;
}

std::optional<std::size_t> DirectedGraph::find_vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> DirectedGraph::find_edge(const std::string& name) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].name == name) return i;
    return std::nullopt;
}

DirectedGraph DirectedGraph::rose(std::size_t petals) {
    DirectedGraph g;
    g.add_vertex("v");
    for (std::size_t i = 0; i < petals; ++i) {
        std::string name = i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1);
        g.add_edge(name, 0, 0);
    }
    return g;
}

std::size_t step_start(const DirectedGraph& g, Step s) {
    const Edge& e = g.edge(s.edge);
    return s.dir > 0 ? e.from : e.to;
}

std::size_t step_end(const DirectedGraph& g, Step s) {
    const Edge& e = g.edge(s.edge);
    return s.dir > 0 ? e.to : e.from;
}

GraphPath::GraphPath(std::size_t start, std::vector<Step> steps) : start_(start), steps_(std::move(steps)) {}

GraphPath GraphPath::checked(const DirectedGraph& g, std::size_t start, std::vector<Step> steps) {
    if (start >= g.vertex_count()) throw ValidationError("path starts at an unknown vertex");
    std::size_t at = start;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i].edge >= g.edge_count() || (steps[i].dir != 1 && steps[i].dir != -1))
            throw ValidationError("path uses an unknown edge");
        if (step_start(g, steps[i]) != at)
            throw ValidationError("step " + std::to_string(i + 1) + " does not continue the path");
        at = step_end(g, steps[i]);
    }
    return GraphPath(start, std::move(steps));
}

GraphPath GraphPath::single(const DirectedGraph& g, Step s) { return GraphPath(step_start(g, s), {s}); }

std::size_t GraphPath::end(const DirectedGraph& g) const {
    return steps_.empty() ? start_ : step_end(g, steps_.back());
}

GraphPath GraphPath::reversed(const DirectedGraph& g) const {
    std::vector<Step> r;
    r.reserve(steps_.size());
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) r.push_back(it->inverse());
    return GraphPath(end(g), std::move(r));
}

GraphPath GraphPath::then(const DirectedGraph& g, const GraphPath& next) const {
    if (next.start_ != end(g)) throw ValidationError("paths do not concatenate");
    std::vector<Step> s = steps_;
    s.insert(s.end(), next.steps_.begin(), next.steps_.end());
    return GraphPath(start_, std::move(s));
}

bool GraphPath::immersed() const {
    for (std::size_t i = 1; i < steps_.size(); ++i)
        if (steps_[i] == steps_[i - 1].inverse()) return false;
    return true;
}

GraphPath path_reduce(const GraphPath& p) {
    std::vector<Step> out;
    out.reserve(p.size());
    for (const auto& s : p.steps()) {
        if (!out.empty() && out.back() == s.inverse())
            out.pop_back();
        else
            out.push_back(s);
    }
    return GraphPath(p.start(), std::move(out));
}

std::vector<std::int64_t> hat(const GraphPath& p, std::size_t edge_count) {
    std::vector<std::int64_t> v(edge_count, 0);
    for (const auto& s : p.steps()) v.at(s.edge) += s.dir;
    return v;
}

std::string to_string(const DirectedGraph& g, const GraphPath& p) {
    if (p.empty()) return "1";
    std::string out;
    for (const auto& s : p.steps()) {
        if (!out.empty()) out += ' ';
        out += g.edge(s.edge).name;
        if (s.dir < 0) out += "^-1";
    }
    return out;
}

namespace {

// BFS forest; parent[v] is the step entering v from its parent
struct Forest {
    std::vector<std::optional<Step>> parent;
    std::vector<bool> in_tree;
    std::vector<std::size_t> root;
};

Forest bfs_forest(const DirectedGraph& g, const std::vector<std::size_t>& roots_order) {
    Forest f;
    f.parent.assign(g.vertex_count(), std::nullopt);
    f.in_tree.assign(g.edge_count(), false);
    f.root.assign(g.vertex_count(), g.vertex_count());
    for (std::size_t r : roots_order) {
        if (f.root[r] != g.vertex_count()) continue;
        f.root[r] = r;
        std::deque<std::size_t> queue{r};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                const Edge& ed = g.edge(e);
                Step s;
                if (ed.from == u && f.root[ed.to] == g.vertex_count())
                    s = {e, 1};
                else if (ed.to == u && f.root[ed.from] == g.vertex_count())
                    s = {e, -1};
                else
                    continue;
                std::size_t w = step_end(g, s);
                f.root[w] = r;
                f.parent[w] = s;
                f.in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    return f;
}

// path from v up to its root
GraphPath path_to_root(const DirectedGraph& g, const Forest& f, std::size_t v) {
    std::vector<Step> steps;
    std::size_t at = v;
    while (f.parent[at]) {
        Step s = f.parent[at]->inverse();
        steps.push_back(s);
        at = step_end(g, s);
    }
    return GraphPath(v, std::move(steps));
}

}  // namespace

SpanningTree spanning_tree(const DirectedGraph& g, std::size_t v0) {
    if (v0 >= g.vertex_count()) throw ValidationError("basepoint is not a vertex");
    Forest f = bfs_forest(g, {v0});
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (f.root[v] != v0) throw ValidationError("graph is disconnected (vertex '" + g.vertex_name(v) + "')");
    SpanningTree t;
    t.in_tree = f.in_tree;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!f.in_tree[e]) t.complement.push_back(e);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) t.to_basepoint.push_back(path_to_root(g, f, v));
    return t;
}

Word reading_map(const SpanningTree& t, const GraphPath& p) {
    std::vector<int> letter_of(t.in_tree.size(), 0);
    for (std::size_t i = 0; i < t.complement.size(); ++i) letter_of[t.complement[i]] = static_cast<int>(i + 1);
    std::vector<Letter> raw;
    for (const auto& s : p.steps())
        if (letter_of.at(s.edge)) raw.push_back(static_cast<Letter>(letter_of[s.edge] * s.dir));
    return reduce_word(raw, t.complement.size());
}

IntMatrix boundary_matrix(const DirectedGraph& g) {
    IntMatrix m(g.vertex_count(), g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        m(g.edge(e).to, e) += 1;
        m(g.edge(e).from, e) -= 1;
    }
    return m;
}

std::vector<std::vector<Rational>> cycle_space(const DirectedGraph& g) {
    std::vector<std::size_t> order(g.vertex_count());
    for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
    Forest f = bfs_forest(g, order);
    std::vector<std::vector<Rational>> basis;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (f.in_tree[e]) continue;
        // e, then the tree path from tau(e) back to iota(e)
        auto up_to = hat(path_to_root(g, f, g.edge(e).to), g.edge_count());
        auto up_from = hat(path_to_root(g, f, g.edge(e).from), g.edge_count());
        std::vector<Rational> v(g.edge_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = up_to[i] - up_from[i];
        v[e] += 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_legal(const Gates& gates, const Turn& t) {
    if (t.first == t.second) return false;
    if (gates.empty()) return true;
    return !gates.same_gate(t.first, t.second);
}

bool is_legal(const Gates& gates, const GraphPath& p) {
    const auto& s = p.steps();
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!is_legal(gates, Turn{s[i - 1].inverse(), s[i]})) return false;
    return true;
}

GraphMap::GraphMap(MarkedGraph marked, std::vector<std::size_t> vertex_images, std::vector<GraphPath> edge_images)
    : marked_(std::move(marked)), vertex_images_(std::move(vertex_images)), edge_images_(std::move(edge_images)) {
    const DirectedGraph& g = marked_.graph;
    if (vertex_images_.size() != g.vertex_count()) throw ValidationError("one vertex image per vertex is required");
    if (edge_images_.size() != g.edge_count()) throw ValidationError("one edge image per edge is required");
    if (marked_.basepoint >= g.vertex_count()) throw ValidationError("basepoint is not a vertex");
    for (auto v : vertex_images_)
        if (v >= g.vertex_count()) throw ValidationError("vertex image out of range");
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const GraphPath& p = edge_images_[e];
        const std::string& name = g.edge(e).name;
        if (p.empty()) throw ValidationError("image of edge '" + name + "' is empty");
        GraphPath::checked(g, p.start(), p.steps());
        if (p.start() != vertex_images_[g.edge(e).from] || p.end(g) != vertex_images_[g.edge(e).to])
            throw ValidationError("image of edge '" + name + "' has endpoints inconsistent with the vertex map");
    }
    if (vertex_images_[marked_.basepoint] != marked_.basepoint)
        throw ValidationError("the basepoint is not fixed; pass a power of the map that fixes a vertex");
    if (marked_.gates.empty()) {
        marked_.gates = induced_gates(*this);
        gates_induced_ = true;
    } else if (marked_.gates.gate_of.size() != 2 * g.edge_count()) {
        throw ValidationError("gates must assign every edge-end");
    }
}

GraphMap GraphMap::from_automorphism(const Automorphism& f, Gates gates) {
    MarkedGraph m{DirectedGraph::rose(f.rank()), 0, std::move(gates)};
    std::vector<GraphPath> imgs;
    for (const auto& w : f.images()) {
        std::vector<Step> steps;
        for (Letter l : w.letters()) steps.push_back({static_cast<std::size_t>(generator_of(l) - 1), sign_of(l)});
        imgs.emplace_back(0, std::move(steps));
    }
    return GraphMap(std::move(m), {0}, std::move(imgs));
}

GraphPath GraphMap::step_image(Step s) const {
    const GraphPath& p = edge_images_.at(s.edge);
    return s.dir > 0 ? p : p.reversed(graph());
}

GraphPath GraphMap::apply(const GraphPath& p) const { return apply(p, 1, kDefaultLengthBudget); }

GraphPath GraphMap::apply(const GraphPath& p, unsigned k, std::size_t budget) const {
    GraphPath cur = p;
    for (unsigned it = 0; it < k; ++it) {
        std::vector<Step> out;
        out.reserve(cur.size() * 2);
        for (const auto& s : cur.steps()) {
            const auto& img = edge_images_[s.edge].steps();
            auto push = [&](Step x) {
                if (!out.empty() && out.back() == x.inverse())
                    out.pop_back();
                else
                    out.push_back(x);
            };
            if (s.dir > 0)
                for (const auto& x : img) push(x);
            else
                for (auto r = img.rbegin(); r != img.rend(); ++r) push(r->inverse());
            if (out.size() > budget) throw BudgetExceeded("path length exceeds budget of " + std::to_string(budget));
        }
        cur = GraphPath(vertex_images_[cur.start()], std::move(out));
    }
    return cur;
}

Step GraphMap::derivative(Step d) const {
    const auto& img = edge_images_.at(d.edge).steps();
    return d.dir > 0 ? img.front() : img.back().inverse();
}

GraphMap GraphMap::power(unsigned m) const {
    if (m == 0) throw std::invalid_argument("power must be positive");
    std::vector<GraphPath> imgs;
    for (std::size_t e = 0; e < graph().edge_count(); ++e)
        imgs.push_back(apply(GraphPath::single(graph(), {e, 1}), m, kDefaultLengthBudget));
    std::vector<std::size_t> vimg(graph().vertex_count());
    for (std::size_t v = 0; v < vimg.size(); ++v) {
        std::size_t x = v;
        for (unsigned i = 0; i < m; ++i) x = vertex_images_[x];
        vimg[v] = x;
    }
    MarkedGraph mg = marked_;
    if (gates_induced_) mg.gates = {};
    return GraphMap(std::move(mg), std::move(vimg), std::move(imgs));
}

Gates induced_gates(const GraphMap& phi) {
    const DirectedGraph& g = phi.graph();
    const std::size_t n = 2 * g.edge_count();
    std::vector<std::size_t> image(n);
    for (std::size_t i = 0; i < n; ++i) image[i] = direction_index(phi.derivative(direction_from_index(i)));
    // D^(n^2): if two orbits ever meet they have met by then
    std::vector<std::size_t> cur(n);
    for (std::size_t i = 0; i < n; ++i) cur[i] = i;
    for (std::size_t it = 0; it < n * n; ++it)
        for (auto& x : cur) x = image[x];
    std::map<std::pair<std::size_t, std::size_t>, int> ids;
    Gates gates;
    gates.gate_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto key = std::make_pair(step_start(g, direction_from_index(i)), cur[i]);
        auto [it, fresh] = ids.try_emplace(key, static_cast<int>(ids.size()));
        gates.gate_of[i] = it->second;
    }
    return gates;
}

IntMatrix transition_matrix(const GraphMap& phi) {
    const std::size_t n = phi.graph().edge_count();
    IntMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& s : phi.edge_image(i).steps()) t(i, s.edge) += 1;
    return t;
}

IntMatrix abelianization_on_edges(const GraphMap& phi) {
    const std::size_t n = phi.graph().edge_count();
    IntMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto h = hat(phi.edge_image(j), n);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = h[i];
    }
    return m;
}

std::vector<std::int64_t> abelianization_defect(const GraphMap& phi, const GraphPath& p) {
    const std::size_t n = phi.graph().edge_count();
    auto h = hat(p, n);
    auto image = abelianization_on_edges(phi).apply(h);
    for (std::size_t i = 0; i < n; ++i) image[i] -= h[i];
    return image;
}

TrainTrackReport validate_train_track(const GraphMap& phi) {
    TrainTrackReport rep;
    const DirectedGraph& g = phi.graph();
    const Gates& gates = phi.gates();
    const std::size_t n = 2 * g.edge_count();

    // gate structure: ids local to a vertex, at least two gates where valence >= 2
    std::map<int, std::size_t> vertex_of_gate;
    std::vector<std::set<int>> gates_at(g.vertex_count());
    std::vector<std::size_t> valence(g.vertex_count(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t v = step_start(g, direction_from_index(i));
        int id = gates.gate_of[i];
        auto [it, fresh] = vertex_of_gate.try_emplace(id, v);
        if (!fresh && it->second != v) {
            rep.gates_valid = false;
            rep.problems.push_back("gate " + std::to_string(id) + " spans two vertices");
        }
        gates_at[v].insert(id);
        ++valence[v];
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (valence[v] >= 2 && gates_at[v].size() < 2) {
            rep.gates_valid = false;
            rep.problems.push_back("vertex '" + g.vertex_name(v) + "' has a single gate");
        }

    std::set<Turn> taken;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const GraphPath& p = phi.edge_image(e);
        if (!p.immersed()) {
            rep.images_immersed = false;
            rep.problems.push_back("image of edge '" + g.edge(e).name + "' backtracks");
        } else if (!is_legal(gates, p)) {
            rep.images_legal = false;
            rep.problems.push_back("image of edge '" + g.edge(e).name + "' takes an illegal turn");
        }
        const auto& s = p.steps();
        for (std::size_t i = 1; i < s.size(); ++i) taken.insert(Turn{s[i - 1].inverse(), s[i]});
    }

    // every legal turn must map to a legal turn
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Step a = direction_from_index(i), b = direction_from_index(j);
            if (step_start(g, a) != step_start(g, b)) continue;
            Turn t{a, b};
            if (!is_legal(gates, t)) continue;
            Turn img{phi.derivative(a), phi.derivative(b)};
            if (!is_legal(gates, img)) {
                rep.turns_legal = false;
                rep.problems.push_back("legal turn (" + g.edge(a.edge).name + (a.dir > 0 ? "+" : "-") + ", " +
                                       g.edge(b.edge).name + (b.dir > 0 ? "+" : "-") + ") maps to an illegal turn");
            }
        }

    // closure of the taken turns under the derivative
    std::deque<Turn> queue(taken.begin(), taken.end());
    while (!queue.empty()) {
        Turn t = queue.front();
        queue.pop_front();
        Turn img{phi.derivative(t.first), phi.derivative(t.second)};
        if (img.second < img.first) std::swap(img.first, img.second);
        if (taken.insert(img).second) queue.push_back(img);
    }
    std::set<Turn> normalized;
    for (auto t : taken) {
        if (t.second < t.first) std::swap(t.first, t.second);
        normalized.insert(t);
    }
    rep.taken_turn_closure.assign(normalized.begin(), normalized.end());
    for (const auto& t : rep.taken_turn_closure)
        if (!is_legal(gates, t)) rep.closure_legal = false;
    if (!rep.closure_legal) rep.problems.push_back("iterated edge images take an illegal turn");

    auto cert = pf_certificate(transition_matrix(phi));
    rep.primitive = cert.primitive;
    if (cert.primitive)
        rep.primitivity_exponent = cert.exponent;
    else
        rep.problems.push_back("transition matrix is not primitive");
    return rep;
}

Automorphism induced_automorphism(const GraphMap& phi, const SpanningTree& tree) {
    const DirectedGraph& g = phi.graph();
    std::vector<Word> images;
    for (std::size_t e : tree.complement) {
        GraphPath from_base = tree.to_basepoint[g.edge(e).from].reversed(g);
        GraphPath loop = from_base.then(g, GraphPath::single(g, {e, 1})).then(g, tree.to_basepoint[g.edge(e).to]);
        images.push_back(reading_map(tree, phi.apply(loop)));
    }
    return Automorphism(std::move(images));
}

std::vector<GraphPath> enumerate_immersed_paths(const DirectedGraph& g, std::size_t v, std::size_t length) {
    std::vector<GraphPath> out;
    std::vector<Step> cur;
    auto rec = [&](auto&& self, std::size_t at) -> void {
        if (cur.size() == length) {
            out.emplace_back(v, cur);
            return;
        }
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            for (int dir : {1, -1}) {
                Step s{e, dir};
                if (step_start(g, s) != at) continue;
                if (!cur.empty() && cur.back() == s.inverse()) continue;
                cur.push_back(s);
                self(self, step_end(g, s));
                cur.pop_back();
            }
    };
    rec(rec, v);
    return out;
}

}  // namespace hshadow
