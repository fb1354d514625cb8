#include "hshadow/pipeline.hpp"

#include "hshadow/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace hshadow {

PreparedMap prepare(const ProblemSpec& spec) {
    PreparedMap p;
    p.phi = spec.map;
    p.report = validate_train_track(p.phi);
    if (!p.report.ok()) {
        std::string msg = "not a train track map:";
        for (const auto& s : p.report.problems) msg += "\n  " + s;
        throw ValidationError(msg);
    }
    p.tree = spanning_tree(p.phi.graph(), p.phi.basepoint());
    p.f_a = induced_automorphism(p.phi, p.tree);
    p.f_ab = abelianization_matrix(p.f_a);
    const std::size_t n = p.f_ab.rows();
    auto m = finite_order(p.f_ab, default_finite_order_bound(n));
    if (m) {
        p.order = *m;
    } else {
        if (!spec.override_hypotheses)
            throw ValidationError("the induced abelianization has infinite order:\n" + p.f_ab.to_string() +
                                  "\nset 'hypotheses: override' for a mechanical run");
        p.order = 1;
        p.hypotheses_hold = false;
    }
    p.psi = p.order == 1 ? p.phi : p.phi.power(p.order);
    return p;
}

LinearMapExact label_map(const HPGraph& hp) {
    LinearMapExact m(hp.dim, std::vector<Rational>(hp.edges.size(), Rational(0)));
    for (std::size_t j = 0; j < hp.edges.size(); ++j)
        for (std::size_t i = 0; i < hp.dim; ++i) {
            m[i][j] = Rational(static_cast<long>(hp.edges[j].effective_label2[i]), 2);
            m[i][j].canonicalize();
        }
    return m;
}

LinearMapExact reading_projection(const SpanningTree& tree, std::size_t edges) {
    LinearMapExact m(tree.complement.size(), std::vector<Rational>(edges, Rational(0)));
    for (std::size_t i = 0; i < tree.complement.size(); ++i) m[i][tree.complement[i]] = 1;
    return m;
}

LinearMapExact to_rational(const IntMatrix& a) {
    LinearMapExact m(a.rows(), std::vector<Rational>(a.cols(), Rational(0)));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = static_cast<long>(a(i, j));
    return m;
}

namespace {

LinearMapExact multiply(const LinearMapExact& a, const LinearMapExact& b) {
    const std::size_t inner = b.size();
    const std::size_t cols = inner ? b[0].size() : 0;
    LinearMapExact c(a.size(), std::vector<Rational>(cols, Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// h_ab * scale * R_A
LinearMapExact output_map(const ProblemSpec& spec, const PreparedMap& prep, const Rational& scale) {
    LinearMapExact r = reading_projection(prep.tree, prep.phi.graph().edge_count());
    for (auto& row : r)
        for (auto& x : row) x *= scale;
    if (spec.conjugator) r = multiply(to_rational(abelianization_matrix(*spec.conjugator)), r);
    return r;
}

}  // namespace

namespace {

std::vector<PointQ> label_points(const HPGraph& hp) {
    std::vector<PointQ> out;
    for (const auto& e : hp.edges) {
        PointQ x(hp.dim);
        for (std::size_t i = 0; i < hp.dim; ++i) {
            x[i] = Rational(static_cast<long>(e.effective_label2[i]), 2);
            x[i].canonicalize();
        }
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

RationalPolytope graph_shadow_polytope(const GraphMap& phi) {
    HPGraph hp = build_hp_graph(phi);
    return cycle_mean_polytope(hp.digraph(), label_points(hp)).polytope;
}

ShadowLimit compute_shadow_limit(const ProblemSpec& spec) {
    PreparedMap prep = prepare(spec);
    ShadowLimit out;
    out.order = prep.order;
    out.scale = Rational(1, prep.order);
    out.hypotheses_hold = prep.hypotheses_hold;
    out.f_ab = prep.f_ab;
    HPGraph hp = build_hp_graph(prep.psi);
    CycleMeanPolytope cm = cycle_mean_polytope(hp.digraph(), label_points(hp));
    out.sigma_vertices = cm.simple_cycles;
    out.graph_polytope = std::move(cm.polytope);
    out.polytope = linear_image(out.graph_polytope, output_map(spec, prep, out.scale));
    return out;
}

DarknessLimit compute_darkness_limit(const ProblemSpec& spec) {
    PreparedMap prep = prepare(spec);
    DarknessLimit out;
    out.order = prep.order;
    out.scale = Rational(1, prep.order);
    out.hypotheses_hold = prep.hypotheses_hold;
    out.pf = dominant_eigendata(transition_matrix(prep.psi));
    HPGraph hp = build_hp_graph(prep.psi);
    LengthFunction l(out.pf.right);
    MarkovWeights w = markov_weights(hp, out.pf, l);
    LimitDarknessPoint ldp = limit_darkness_point(hp, w);
    out.graph_point = ldp.point;
    LinearMapExact m = output_map(spec, prep, out.scale);
    out.point.assign(m.size(), Algebraic(0L));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != 0) out.point[i] += Algebraic(m[i][j]) * out.graph_point[j];
    out.approx = to_double(out.point);
    return out;
}

LengthFunction select_length(const ProblemSpec& spec, LengthChoice choice) {
    const std::size_t e = spec.map.graph().edge_count();
    switch (choice) {
        case LengthChoice::unit: return LengthFunction::unit(e);
        case LengthChoice::train: return train_length_function(spec.map);
        case LengthChoice::file:
            if (spec.lengths.empty()) throw ValidationError("length 'file' needs a 'lengths:' section in the input");
            return LengthFunction::rational(spec.lengths);
    }
    return LengthFunction::unit(e);
}

LengthFunction restrict_to_free_letters(const LengthFunction& l, const SpanningTree& tree) {
    if (l.size() != tree.in_tree.size()) throw ValidationError("length function and graph have different edge counts");
    AlgebraicVector v;
    for (auto e : tree.complement) v.push_back(l[e]);
    return LengthFunction(std::move(v));
}

Automorphism measured_automorphism(const ProblemSpec& spec) {
    Automorphism f = spec.rose ? *spec.rose_automorphism
                               : induced_automorphism(spec.map, spanning_tree(spec.map.graph(), spec.map.basepoint()));
    if (!spec.conjugator) return f;
    return compose(*spec.conjugator, compose(f, spec.conjugator->inverse()));
}

PointD darkness_mean(const SegmentMeasure& mu) {
    const double k = mu.scale.get_d();
    PointD m;
    for (const auto& [seg, mass] : mu.mass) {
        if (m.empty()) m.assign(seg.base.size(), 0.0);
        const double w = mass.to_double();
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += w * (static_cast<double>(seg.base[i]) + (i == seg.axis ? 0.5 : 0.0)) / k;
    }
    return m;
}

double fit_inverse_k(const std::vector<std::pair<unsigned, double>>& samples) {
    double num = 0.0, den = 0.0;
    for (auto [k, d] : samples) {
        num += d / k;
        den += 1.0 / (double(k) * k);
    }
    return den > 0 ? num / den : 0.0;
}

std::vector<ConvergenceReport> verify_convergence(const ProblemSpec& spec, unsigned kmax, LengthChoice length,
                                                  std::size_t budget, unsigned burn_in) {
    using clock = std::chrono::steady_clock;
    const std::size_t n = spec.free_rank();
    SpanningTree tree = spanning_tree(spec.map.graph(), spec.map.basepoint());
    Automorphism g = measured_automorphism(spec);
    LengthFunction la = restrict_to_free_letters(select_length(spec, length), tree);

    std::optional<RationalPolytope> predicted;
    std::optional<PointD> point;
    if (!spec.predicted.empty()) {
        predicted = RationalPolytope::from_points(spec.predicted);
    } else {
        try {
            predicted = compute_shadow_limit(spec).polytope;
            point = compute_darkness_limit(spec).approx;
        } catch (const ValidationError&) {
            // no exact prediction; successive distances only
        }
    }

    std::vector<Word> seeds = spec.seeds;
    if (seeds.empty()) seeds.push_back(Word::from_reduced({1}));

    std::vector<ConvergenceReport> reports;
    for (const Word& x : seeds) {
        ConvergenceReport rep;
        rep.seed = to_string(x);
        rep.predicted = predicted;
        rep.predicted_point = point;
        rep.burn_in = burn_in;
        Word w = x;
        PointCloud prev;
        for (unsigned k = 1; k <= kmax; ++k) {
            auto t0 = clock::now();
            w = apply_automorphism(g, w, 1, budget);
            ShadowAccumulator acc(n);
            acc.push(w);
            PointCloud cloud = shadow_point_cloud(acc, 2, double(k));
            if (k > spec.k_min && !rep.rows.empty()) rep.rows.back().successive = hausdorff_distance(prev, cloud);
            prev = std::move(cloud);
            if (k < spec.k_min) continue;
            ConvergenceRow row;
            row.k = k;
            row.word_length = w.size();
            if (predicted) row.hausdorff = hausdorff_to_cloud(*predicted, prev);
            if (point) {
                SegmentMeasure mu = darkness_measure(acc, la, Rational(k));
                std::array<double, 3> masses{};
                for (std::size_t r = 0; r < kBallRadii.size(); ++r) masses[r] = ball_mass_approx(mu, *point, kBallRadii[r]);
                row.ball_mass = masses;
                PointD m = darkness_mean(mu);
                double d2 = 0.0;
                for (std::size_t i = 0; i < m.size(); ++i) d2 += (m[i] - (*point)[i]) * (m[i] - (*point)[i]);
                row.mean_distance = std::sqrt(d2);
            }
            row.seconds = std::chrono::duration<double>(clock::now() - t0).count();
            rep.rows.push_back(std::move(row));
        }
        std::vector<std::pair<unsigned, double>> fit;
        for (const auto& r : rep.rows)
            if (r.hausdorff) fit.push_back({r.k, *r.hausdorff});
        if (!fit.empty()) rep.fitted_c = fit_inverse_k(fit);
        for (std::size_t i = 1; i < rep.rows.size(); ++i) {
            const auto& a = rep.rows[i - 1];
            const auto& b = rep.rows[i];
            if (b.k <= burn_in) continue;
            if (predicted) {
                if (*b.hausdorff > *a.hausdorff + 1e-12) rep.monotone_after_burn_in = false;
            } else if (a.successive && b.successive && !(*b.successive < *a.successive)) {
                rep.monotone_after_burn_in = false;
            }
        }
        if (point && !rep.rows.empty()) rep.final_ball_ok = (*rep.rows.back().ball_mass)[1] >= 0.9;
        reports.push_back(std::move(rep));
    }
    return reports;
}

namespace {

// dyadic points on the edges of P, exact
std::vector<PointQ> exact_sample(const RationalPolytope& p, unsigned depth) {
    const auto& v = p.vertices();
    std::vector<PointQ> out = v;
    const long g = 1L << depth;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            for (long a = 1; a < g; ++a) {
                PointQ x(v[i].size());
                for (std::size_t c = 0; c < x.size(); ++c) x[c] = (Rational(a) * v[i][c] + Rational(g - a) * v[j][c]) / g;
                out.push_back(std::move(x));
            }
    return out;
}

}  // namespace

Rational squared_hausdorff_exact(const RationalPolytope& p, const ShadowAccumulator& acc, unsigned k, unsigned depth) {
    if (p.empty() || acc.length() == 0) throw ValidationError("Hausdorff distance of an empty set");
    const Rational inv(1, k);
    Rational forward = 0;
    for (const auto& v : acc.vertices()) {
        PointQ x(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) x[i] = Rational(static_cast<long>(v[i])) * inv;
        forward = std::max(forward, squared_distance_exact(p, x));
    }
    Rational backward = 0;
    for (const auto& y : exact_sample(p, depth)) {
        std::optional<Rational> best;
        for (const auto& [seg, c] : acc.segment_counts()) {
            Rational d = 0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                Rational lo = Rational(static_cast<long>(seg.base[i])) * inv;
                Rational t = y[i];
                if (i == seg.axis) {
                    Rational hi = lo + inv;
                    Rational c2 = t < lo ? lo : (t > hi ? hi : t);
                    d += (t - c2) * (t - c2);
                } else {
                    d += (t - lo) * (t - lo);
                }
            }
            if (!best || d < *best) best = d;
            if (*best == 0) break;
        }
        backward = std::max(backward, *best);
    }
    return std::max(forward, backward);
}

EquivarianceReport verify_equivariance_and_power(const ProblemSpec& spec, const Automorphism& h,
                                                 const std::vector<unsigned>& powers, unsigned max_log_length,
                                                 unsigned samples_per_length, std::uint64_t seed) {
    if (!h.has_inverse()) throw ValidationError("the conjugator needs its inverse");
    const std::size_t n = h.rank();
    if (n != spec.free_rank()) throw ValidationError("conjugator rank does not match the free group of the input");
    IntMatrix hab = abelianization_matrix(h);
    std::mt19937_64 rng(seed);
    EquivarianceReport rep;
    for (unsigned e = 0; e <= max_log_length; ++e) {
        EquivarianceRow row;
        row.length = std::size_t{1} << e;
        row.samples = samples_per_length;
        for (unsigned s = 0; s < samples_per_length; ++s) {
            Word w = random_reduced_word(rng, n, row.length);
            ShadowAccumulator base(n), image(n);
            base.push(w);
            image.push(apply_automorphism(h, w));
            PointCloud moved = shadow_point_cloud(base, 4, 1.0);
            for (auto& x : moved) {
                PointD y(n, 0.0);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) y[i] += static_cast<double>(hab(i, j)) * x[j];
                x = std::move(y);
            }
            row.max_distance = std::max(row.max_distance, hausdorff_distance(shadow_point_cloud(image, 4, 1.0), moved));
        }
        rep.max_distance = std::max(rep.max_distance, row.max_distance);
        rep.rows.push_back(row);
    }

    if (!powers.empty()) {
        RationalPolytope p1 = graph_shadow_polytope(spec.map);
        auto abs_sum = [](const RationalPolytope& p) {
            Rational s = 0;
            for (const auto& v : p.vertices())
                for (const auto& x : v) s += abs(x);
            return s;
        };
        const Rational s1 = abs_sum(p1);
        for (unsigned L : powers) {
            PowerCheck pc;
            pc.power = L;
            RationalPolytope pl = graph_shadow_polytope(spec.map.power(L));
            if (s1 != 0) {
                Rational cand = abs_sum(pl) / s1;
                std::vector<PointQ> scaled;
                for (auto v : p1.vertices()) {
                    for (auto& x : v) x *= cand;
                    scaled.push_back(std::move(v));
                }
                if (RationalPolytope::from_points(scaled) == pl) pc.scalar = cand;
            } else if (pl == p1) {
                pc.scalar = Rational(1);
            }
            if (pc.scalar) {
                pc.equals_power = *pc.scalar == Rational(L);
                pc.equals_inverse_power = *pc.scalar == Rational(1, L);
            }
            rep.powers.push_back(pc);
        }
    }
    return rep;
}

namespace {

double length_of_counts(const std::vector<double>& c, const std::vector<double>& l, const std::vector<bool>* only) {
    double s = 0.0;
    for (std::size_t e = 0; e < c.size(); ++e)
        if (!only || (*only)[e]) s += c[e] * l[e];
    return s;
}

std::vector<double> abs_counts(const GraphPath& p, std::size_t edges) {
    std::vector<double> c(edges, 0.0);
    for (const auto& s : p.steps()) c[s.edge] += 1.0;
    return c;
}

}  // namespace

MassCheck mass_ratio_check(const PreparedMap& prep, const GraphPath& p, const LengthFunction& l, unsigned kmax) {
    if (!is_legal(prep.phi.gates(), p)) throw ValidationError("the test path for the mass check must be legal");
    const std::size_t ne = prep.phi.graph().edge_count();
    std::vector<bool> in_a(ne, false);
    for (auto e : prep.tree.complement) in_a[e] = true;
    std::vector<double> ld = to_double(l.values());
    MassCheck out;
    GraphPath cur = p;
    for (unsigned k = 0; k <= kmax; ++k) {
        auto c = abs_counts(cur, ne);
        out.empirical.push_back(length_of_counts(c, ld, &in_a) / length_of_counts(c, ld, nullptr));
        if (k < kmax) cur = prep.phi.apply(cur);
    }
    PFData pf = dominant_eigendata(transition_matrix(prep.phi));
    std::vector<double> v = to_double(pf.left);
    double va = 0, v1 = 0, mua = 0, mu = 0;
    for (std::size_t e = 0; e < ne; ++e) {
        v1 += std::abs(v[e]);
        mu += ld[e];
        if (in_a[e]) {
            va += std::abs(v[e]);
            mua += ld[e];
        }
    }
    out.displayed_formula = (mua * va) / (mu * v1);
    out.direct_formula = length_of_counts(v, ld, &in_a) / length_of_counts(v, ld, nullptr);
    const double last = out.empirical.back();
    const double tol = 1e-6 + 10.0 * std::abs(last - out.empirical[out.empirical.size() > 1 ? out.empirical.size() - 2 : 0]);
    bool direct = std::abs(last - out.direct_formula) <= tol;
    bool displayed = std::abs(last - out.displayed_formula) <= tol;
    out.matches = direct && displayed ? "both" : direct ? "direct" : displayed ? "displayed" : "neither";
    return out;
}

RatioCheck ratio_check(const GraphMap& phi, const GraphPath& p, const LengthFunction& l, unsigned kmax) {
    const DirectedGraph& g = phi.graph();
    const std::size_t ne = g.edge_count();
    // longest legal subpath
    std::size_t best_start = 0, best_len = 0, run_start = 0;
    const auto& st = p.steps();
    for (std::size_t i = 0; i <= st.size(); ++i) {
        bool cut = i == st.size() || (i > 0 && !is_legal(phi.gates(), Turn{st[i - 1].inverse(), st[i]}));
        if (cut) {
            if (i - run_start > best_len) best_start = run_start, best_len = i - run_start;
            run_start = i;
        }
    }
    if (best_len == 0) throw ValidationError("ratio check needs a nonempty path");
    GraphPath q(step_start(g, st[best_start]),
                std::vector<Step>(st.begin() + static_cast<std::ptrdiff_t>(best_start),
                                  st.begin() + static_cast<std::ptrdiff_t>(best_start + best_len)));
    std::vector<double> ld = to_double(l.values());
    IntMatrix t = transition_matrix(phi);
    RatioCheck out;
    std::vector<double> counts = abs_counts(p, ne);
    GraphPath red = path_reduce(p), qk = q;
    for (unsigned k = 0; k <= kmax; ++k) {
        double lred = length_of_counts(abs_counts(red, ne), ld, nullptr);
        if (lred == 0) throw ValidationError("the test path tightens to a point under iteration");
        out.legal_over_reduced.push_back(length_of_counts(abs_counts(qk, ne), ld, nullptr) / lred);
        out.total_over_reduced.push_back(length_of_counts(counts, ld, nullptr) / lred);
        if (k == kmax) break;
        red = phi.apply(red);
        qk = phi.apply(qk);
        std::vector<double> next(ne, 0.0);
        for (std::size_t i = 0; i < ne; ++i)
            for (std::size_t j = 0; j < ne; ++j) next[j] += counts[i] * static_cast<double>(t(i, j));
        counts = std::move(next);
    }
    out.minimum = std::min(*std::min_element(out.legal_over_reduced.begin(), out.legal_over_reduced.end()),
                           *std::min_element(out.total_over_reduced.begin(), out.total_over_reduced.end()));
    auto close = [](const std::vector<double>& v) {
        if (v.size() < 2) return true;
        double a = v[v.size() - 2], b = v.back();
        return std::abs(a - b) <= 1e-3 * std::max(std::abs(a), std::abs(b));
    };
    out.stable = close(out.legal_over_reduced) && close(out.total_over_reduced);
    return out;
}

}  // namespace hshadow
