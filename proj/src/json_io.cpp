#include "hshadow/json_io.hpp"

namespace hshadow {

namespace {

Json integer(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return to_string(z);
}

Json half_vector(const LatticePoint& doubled) {
    Json j = Json::array();
    for (auto x : doubled) {
        Rational q(static_cast<long>(x), 2);
        q.canonicalize();
        j.push_back(to_json(q));
    }
    return j;
}

}  // namespace

Json to_json(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return to_string(c);
}

Json to_json(const Algebraic& a) {
    Json j;
    if (a.is_rational() || !a.field()) {
        Rational q = a.rational_value();
        j["minpoly"] = Json::array({integer(-q.get_num()), integer(q.get_den())});
        j["rep"] = Json::array({to_json(q)});
        j["interval"] = Json::array({to_json(q), to_json(q)});
    } else {
        const NumberField& f = *a.field();
        Json mp = Json::array();
        for (const auto& c : f.minimal_polynomial()) mp.push_back(integer(c));
        j["minpoly"] = mp;
        Json rep = Json::array();
        for (const auto& c : a.representative().coeffs()) rep.push_back(to_json(c));
        j["rep"] = rep;
        j["interval"] = Json::array({to_json(f.isolating_interval().lo), to_json(f.isolating_interval().hi)});
    }
    j["approx"] = a.to_double();
    return j;
}

Json to_json(const PointQ& p) {
    Json j = Json::array();
    for (const auto& x : p) j.push_back(to_json(x));
    return j;
}

Json to_json(const AlgebraicVector& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x));
    return j;
}

Json to_json(const RationalPolytope& p) {
    Json j;
    j["ambient_dimension"] = p.ambient_dimension();
    j["affine_dimension"] = p.affine_dimension();
    Json v = Json::array();
    for (const auto& x : p.vertices()) v.push_back(to_json(x));
    j["vertices"] = v;
    return j;
}

Json to_json(const IntMatrix& m) {
    Json j = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        j.push_back(row);
    }
    return j;
}

Json to_json(const ZPoly& p) {
    Json j = Json::array();
    for (const auto& c : p) j.push_back(integer(c));
    return j;
}

Json to_json(const PFData& pf) {
    Json j;
    j["characteristic_polynomial"] = to_json(pf.characteristic);
    j["rho"] = to_json(pf.rho);
    j["primitivity_exponent"] = pf.exponent;
    j["right_eigenvector"] = to_json(pf.right);
    j["left_eigenvector"] = to_json(pf.left);
    return j;
}

Json to_json(const ShadowLimit& s) {
    Json j;
    j["hypotheses_hold"] = s.hypotheses_hold;
    j["abelianization"] = to_json(s.f_ab);
    j["order"] = s.order;
    j["scale"] = to_json(s.scale);
    if (s.sigma_vertices.fits_ulong_p())
        j["sigma1_vertices"] = s.sigma_vertices.get_ui();
    else
        j["sigma1_vertices"] = s.sigma_vertices.get_str();
    j["graph_polytope"] = to_json(s.graph_polytope);
    j["limit"] = to_json(s.polytope);
    return j;
}

Json to_json(const DarknessLimit& d) {
    Json j;
    j["hypotheses_hold"] = d.hypotheses_hold;
    j["order"] = d.order;
    j["scale"] = to_json(d.scale);
    j["perron_frobenius"] = to_json(d.pf);
    j["graph_point"] = to_json(d.graph_point);
    j["point"] = to_json(d.point);
    j["approx"] = d.approx;
    return j;
}

Json to_json(const ConvergenceReport& r) {
    Json j;
    j["seed"] = r.seed;
    if (r.predicted) j["predicted"] = to_json(*r.predicted);
    if (r.predicted_point) j["predicted_point"] = *r.predicted_point;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["k"] = row.k;
        x["word_length"] = row.word_length;
        if (row.hausdorff) x["hausdorff"] = *row.hausdorff;
        if (row.successive) x["successive"] = *row.successive;
        if (row.ball_mass) {
            Json b;
            for (std::size_t i = 0; i < kBallRadii.size(); ++i) b.push_back({{"radius", kBallRadii[i]}, {"mass", (*row.ball_mass)[i]}});
            x["ball_mass"] = b;
        }
        if (row.mean_distance) x["darkness_mean_distance"] = *row.mean_distance;
        rows.push_back(x);
    }
    j["rows"] = rows;
    if (r.fitted_c) j["fitted_c"] = *r.fitted_c;
    j["burn_in"] = r.burn_in;
    j["monotone_after_burn_in"] = r.monotone_after_burn_in;
    if (r.final_ball_ok) j["final_ball_mass_ok"] = *r.final_ball_ok;
    j["passed"] = r.passed();
    return j;
}

Json to_json(const EquivarianceReport& r) {
    Json j;
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"length", row.length}, {"samples", row.samples}, {"max_distance", row.max_distance}});
    j["rows"] = rows;
    j["max_distance"] = r.max_distance;
    Json p = Json::array();
    for (const auto& pc : r.powers) {
        Json x;
        x["power"] = pc.power;
        x["scalar"] = pc.scalar ? to_json(*pc.scalar) : Json(nullptr);
        x["equals_power"] = pc.equals_power;
        x["equals_inverse_power"] = pc.equals_inverse_power;
        p.push_back(x);
    }
    j["powers"] = p;
    return j;
}

Json to_json(const MassCheck& m) {
    return {{"empirical", m.empirical},
            {"displayed_formula", m.displayed_formula},
            {"direct_formula", m.direct_formula},
            {"matches", m.matches}};
}

Json to_json(const RatioCheck& r) {
    return {{"legal_over_reduced", r.legal_over_reduced},
            {"total_over_reduced", r.total_over_reduced},
            {"minimum", r.minimum},
            {"stable", r.stable}};
}

Json to_json(const HPGraph& hp, const MarkovWeights* w) {
    Json j;
    j["vertices"] = hp.vertex_names;
    Json edges = Json::array();
    for (std::size_t i = 0; i < hp.edges.size(); ++i) {
        const HPEdge& e = hp.edges[i];
        Json x;
        x["source"] = hp.vertex_names[e.source];
        x["target"] = hp.vertex_names[e.target];
        x["segment"] = e.segment + 1;
        x["H"] = half_vector(e.label2);
        x["H_eff"] = half_vector(e.effective_label2);
        if (w) x["mu"] = to_json(w->mu[i]);
        edges.push_back(x);
    }
    j["edges"] = edges;
    j["abelianization"] = to_json(hp.phi_ab);
    if (w) j["stationary"] = to_json(w->pi);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hshadow
