#include "hshadow/hp_graph.hpp"

#include "hshadow/errors.hpp"

#include <set>
#include <sstream>

namespace hshadow {

DirectedGraph HPGraph::digraph() const {
    DirectedGraph g;
    for (const auto& n : vertex_names) g.add_vertex("v_" + n);
    for (std::size_t i = 0; i < edges.size(); ++i) g.add_edge("h" + std::to_string(i + 1), edges[i].source, edges[i].target);
    return g;
}

IntMatrix HPGraph::adjacency() const {
    IntMatrix a(dim, dim);
    for (const auto& e : edges) a(e.source, e.target) += 1;
    return a;
}

std::vector<std::size_t> HPGraph::out_edges(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].source == v) out.push_back(i);
    return out;
}

HPGraph build_hp_graph(const GraphMap& phi) {
    const DirectedGraph& g = phi.graph();
    const std::size_t n = g.edge_count();
    HPGraph hp;
    hp.dim = n;
    hp.phi_ab = abelianization_on_edges(phi);
    for (const auto& e : g.edges()) hp.vertex_names.push_back(e.name);

    SpanningTree tree = spanning_tree(g, phi.basepoint());
    std::vector<LatticePoint> drift(g.vertex_count());
    for (std::size_t w = 0; w < g.vertex_count(); ++w) {
        auto t = hat(tree.to_basepoint[w].reversed(g), n);
        auto img = hp.phi_ab.apply(t);
        drift[w].resize(n);
        for (std::size_t i = 0; i < n; ++i) drift[w][i] = img[i] - t[i];
    }

    for (std::size_t d = 0; d < n; ++d) {
        const GraphPath& img = phi.edge_image(d);
        if (!img.immersed()) throw ValidationError("image of edge '" + g.edge(d).name + "' is not immersed");
        LatticePoint pos(n, 0);
        const auto& w = drift[g.edge(d).from];
        for (std::size_t j = 0; j < img.size(); ++j) {
            Step s = img.steps()[j];
            HPEdge h;
            h.source = d;
            h.target = s.edge;
            h.dir = s.dir;
            h.segment = j;
            h.label2.resize(n);
            for (std::size_t i = 0; i < n; ++i) h.label2[i] = 2 * pos[i];
            h.label2[s.edge] += s.dir;
            h.label2[d] -= 1;
            h.effective_label2 = h.label2;
            for (std::size_t i = 0; i < n; ++i) h.effective_label2[i] += 2 * w[i];
            h.step_offset = pos;
            if (s.dir < 0) h.step_offset[s.edge] -= 1;
            hp.edges.push_back(std::move(h));
            pos[s.edge] += s.dir;
        }
    }
    return hp;
}

namespace {

using PointSet = std::set<LatticePoint>;

LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
    LatticePoint c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

LatticePoint times(const LatticePoint& a, std::int64_t s) {
    LatticePoint c = a;
    for (auto& x : c) x *= s;
    return c;
}

// Z_j(d) from Z_{j-1}: union over HP edges out of d of 2 M B(eta) + Z_{j-1}(target)
PointSet next_level(const HPGraph& hp, const std::vector<std::vector<std::size_t>>& out, const IntMatrix& m,
                    const std::vector<PointSet>& prev, std::size_t d) {
    PointSet z;
    for (std::size_t id : out[d]) {
        const HPEdge& e = hp.edges[id];
        LatticePoint shift = times(m.apply(e.step_offset), 2);
        for (const auto& x : prev[e.target]) z.insert(add(shift, x));
    }
    return z;
}

HalfPointSet assemble(const HPGraph& hp, const GraphPath& p, const IntMatrix& mk, const std::vector<PointSet>& z) {
    HalfPointSet out;
    LatticePoint prefix(hp.dim, 0);
    for (const auto& s : p.steps()) {
        LatticePoint base = prefix;
        if (s.dir < 0) base[s.edge] -= 1;
        LatticePoint shift = times(mk.apply(base), 2);
        for (const auto& x : z[s.edge]) out.doubled.insert(add(shift, x));
        prefix[s.edge] += s.dir;
    }
    return out;
}

std::vector<PointSet> level_zero(const HPGraph& hp) {
    std::vector<PointSet> z(hp.dim);
    for (std::size_t d = 0; d < hp.dim; ++d) {
        LatticePoint e(hp.dim, 0);
        e[d] = 1;
        z[d].insert(e);
    }
    return z;
}

std::vector<std::vector<std::size_t>> out_lists(const HPGraph& hp) {
    std::vector<std::vector<std::size_t>> out(hp.dim);
    for (std::size_t i = 0; i < hp.edges.size(); ++i) out[hp.edges[i].source].push_back(i);
    return out;
}

void check_budget(const std::vector<PointSet>& z, std::size_t budget) {
    std::size_t total = 0;
    for (const auto& s : z) total += s.size();
    if (total > budget) throw BudgetExceeded("half-point iteration exceeds the state budget of " + std::to_string(budget));
}

}  // namespace

HalfPointSet hp_iterate(const HPGraph& hp, const GraphPath& p, unsigned k, std::size_t budget) {
    auto out = out_lists(hp);
    std::vector<PointSet> z = level_zero(hp);
    IntMatrix m = IntMatrix::identity(hp.dim);
    for (unsigned j = 1; j <= k; ++j) {
        std::vector<PointSet> next(hp.dim);
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(hp.dim);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t d = 0; d < n; ++d)
            next[static_cast<std::size_t>(d)] = next_level(hp, out, m, z, static_cast<std::size_t>(d));
        z = std::move(next);
        check_budget(z, budget);
        m = m * hp.phi_ab;
    }
    return assemble(hp, p, m, z);
}

HalfPointSet hp_iterate_serial(const HPGraph& hp, const GraphPath& p, unsigned k, std::size_t budget) {
    auto out = out_lists(hp);
    std::vector<PointSet> z = level_zero(hp);
    IntMatrix m = IntMatrix::identity(hp.dim);
    for (unsigned j = 1; j <= k; ++j) {
        std::vector<PointSet> next(hp.dim);
        for (std::size_t d = 0; d < hp.dim; ++d) next[d] = next_level(hp, out, m, z, d);
        z = std::move(next);
        check_budget(z, budget);
        m = m * hp.phi_ab;
    }
    return assemble(hp, p, m, z);
}

HalfPointSet direct_half_points(const GraphMap& phi, const GraphPath& p, unsigned k, std::size_t budget) {
    std::vector<Step> cur = p.steps();
    for (unsigned it = 0; it < k; ++it) {
        std::vector<Step> next;
        for (const auto& s : cur) {
            const auto& img = phi.edge_image(s.edge).steps();
            if (s.dir > 0)
                next.insert(next.end(), img.begin(), img.end());
            else
                for (auto r = img.rbegin(); r != img.rend(); ++r) next.push_back(r->inverse());
            if (next.size() > budget) throw BudgetExceeded("path length exceeds budget of " + std::to_string(budget));
        }
        cur = std::move(next);
    }
    return half_points(GraphPath(0, std::move(cur)), phi.graph().edge_count());
}

MarkovWeights markov_weights(const HPGraph& hp, const PFData& pf, const LengthFunction& l) {
    if (l.size() != hp.dim) throw ValidationError("length function has the wrong number of edges");
    MarkovWeights w;
    w.transition.assign(hp.dim, AlgebraicVector(hp.dim, Algebraic(0L)));
    AlgebraicVector out_sum(hp.dim, Algebraic(0L));
    std::vector<Algebraic> denom(hp.dim);
    for (std::size_t d = 0; d < hp.dim; ++d) denom[d] = (pf.rho * l[d]).inverse();
    for (const auto& e : hp.edges) {
        Algebraic mu = l[e.target] * denom[e.source];
        w.mu.push_back(mu);
        w.transition[e.source][e.target] += mu;
        out_sum[e.source] += mu;
    }
    for (std::size_t d = 0; d < hp.dim; ++d)
        if (out_sum[d] != Algebraic(1L))
            throw ValidationError("outgoing weights at v_" + hp.vertex_names[d] + " sum to " + out_sum[d].to_string() +
                                  ", not 1: not a train length function");
    w.pi = stationary_distribution(w.transition);

    if (pf.left.size() != hp.dim) throw ValidationError("eigendata has the wrong dimension");
    Algebraic z(0L);
    for (std::size_t d = 0; d < hp.dim; ++d) {
        w.pi_closed.push_back(pf.left[d] * l[d]);
        z += w.pi_closed.back();
    }
    for (auto& x : w.pi_closed) x /= z;
    for (std::size_t d = 0; d < hp.dim; ++d)
        if (w.pi[d] != w.pi_closed[d]) throw ValidationError("stationary vector disagrees with u_d l(d) / Z");
    return w;
}

LimitDarknessPoint limit_darkness_point(const HPGraph& hp, const MarkovWeights& w) {
    LimitDarknessPoint out;
    out.point.assign(hp.dim, Algebraic(0L));
    Algebraic total(0L);
    for (std::size_t i = 0; i < hp.edges.size(); ++i) {
        const HPEdge& e = hp.edges[i];
        Algebraic q = w.pi[e.source] * w.mu[i];
        total += q;
        for (std::size_t j = 0; j < hp.dim; ++j)
            if (e.effective_label2[j] != 0) out.point[j] += q * Algebraic(Rational(static_cast<long>(e.effective_label2[j]), 2));
        out.q.push_back(std::move(q));
    }
    if (total != Algebraic(1L)) throw std::logic_error("edge expectations do not sum to 1");
    out.approx = to_double(out.point);
    return out;
}

namespace {

std::string half_vector(const LatticePoint& doubled) {
    std::string s = "(";
    for (std::size_t i = 0; i < doubled.size(); ++i) {
        if (i) s += ",";
        Rational q(static_cast<long>(doubled[i]), 2);
        q.canonicalize();
        s += to_string(q);
    }
    return s + ")";
}

}  // namespace

std::string to_dot(const HPGraph& hp, const MarkovWeights* w) {
    std::ostringstream os;
    os << "digraph HP {\n";
    for (const auto& n : hp.vertex_names) os << "  \"v_" << n << "\";\n";
    for (std::size_t i = 0; i < hp.edges.size(); ++i) {
        const HPEdge& e = hp.edges[i];
        os << "  \"v_" << hp.vertex_names[e.source] << "\" -> \"v_" << hp.vertex_names[e.target] << "\" [label=\""
           << half_vector(e.label2) << "\", H=\"" << half_vector(e.label2) << "\", H_eff=\""
           << half_vector(e.effective_label2) << "\", segment=" << e.segment + 1;
        if (w) os << ", mu=\"" << w->mu[i].to_string() << "\", mu_approx=" << w->mu[i].to_double();
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace hshadow
