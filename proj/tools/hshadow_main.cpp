#include "hshadow/dsl.hpp"
#include "hshadow/errors.hpp"
#include "hshadow/json_io.hpp"
#include "hshadow/pipeline.hpp"
#include "hshadow/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace hshadow;

namespace {

struct Options {
    std::string input;
    std::string out = ".";
    unsigned k = 0;  // 0: take kmax from the input
    std::string length;  // empty: take the input's choice
    std::string projection;
    std::size_t budget = kDefaultLengthBudget;
    std::vector<unsigned> powers;
};

struct Timer {
    std::ostringstream log;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    void mark(const std::string& what) {
        auto t = std::chrono::steady_clock::now();
        log << what << " " << std::chrono::duration<double>(t - t0).count() << " s\n";
        t0 = t;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << text;
}

Projection parse_projection(const std::string& s, std::size_t dim) {
    if (s.empty()) return default_projection(dim);
    Projection p;
    std::stringstream rows(s);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::vector<double> r;
        std::stringstream cols(row);
        std::string x;
        while (std::getline(cols, x, ',')) r.push_back(std::stod(x));
        p.push_back(r);
    }
    if (p.size() != 2 || p[0].size() != dim || p[1].size() != dim)
        throw ValidationError("--projection needs two rows of " + std::to_string(dim) + " comma separated numbers");
    return p;
}

struct Context {
    Options opt;
    ProblemSpec spec;
    unsigned k = 0;
    LengthChoice length = LengthChoice::unit;
    fs::path out;
    Timer timer;
};

Context load(const Options& opt) {
    Context c;
    c.opt = opt;
    c.spec = parse_input(read_file(opt.input));
    c.k = opt.k ? opt.k : c.spec.k_max;
    c.length = opt.length.empty() ? c.spec.length : parse_length_choice(opt.length);
    c.out = opt.out;
    fs::create_directories(c.out);
    c.timer.mark("parse");
    return c;
}

Json header(const Context& c, const char* command) {
    Json j;
    j["command"] = command;
    j["name"] = c.spec.name;
    j["k"] = c.k;
    j["length"] = to_string(c.length);
    return j;
}

std::vector<Word> seeds(const ProblemSpec& spec) {
    if (!spec.seeds.empty()) return spec.seeds;
    return {Word::from_reduced({1})};
}

int cmd_shadow(Context& c) {
    ShadowLimit lim = compute_shadow_limit(c.spec);
    c.timer.mark("limit");
    Json j = header(c, "shadow");
    j["shadow_limit"] = to_json(lim);
    const std::size_t n = c.spec.free_rank();
    Projection proj = parse_projection(c.opt.projection, n);
    Automorphism g = measured_automorphism(c.spec);
    std::vector<SvgPolyline> objs{polytope_outline(lim.polytope, proj, "limit")};
    Json per_seed = Json::array();
    for (const Word& x : seeds(c.spec)) {
        Word w = apply_automorphism(g, x, c.k, c.opt.budget);
        ShadowAccumulator acc(n);
        acc.push(w);
        per_seed.push_back({{"seed", to_string(x)},
                            {"word_length", w.size()},
                            {"hausdorff_to_limit", hausdorff_to_cloud(lim.polytope, shadow_point_cloud(acc, 2, c.k))}});
        objs.push_back(shadow_polyline(parametrized_shadow(w, n), c.k, "shd_" + std::to_string(c.k) + "(" + to_string(x) + ")"));
    }
    j["shadows"] = per_seed;
    c.timer.mark("shadows");
    write_file(c.out / "shadow.json", dump(j));
    write_file(c.out / "shadow.svg", render_svg(objs, proj));
    return 0;
}

int cmd_darkness(Context& c) {
    DarknessLimit lim = compute_darkness_limit(c.spec);
    c.timer.mark("limit");
    Json j = header(c, "darkness");
    j["darkness_limit"] = to_json(lim);
    const std::size_t n = c.spec.free_rank();
    SpanningTree tree = spanning_tree(c.spec.map.graph(), c.spec.map.basepoint());
    LengthFunction la = restrict_to_free_letters(select_length(c.spec, c.length), tree);
    Automorphism g = measured_automorphism(c.spec);
    Json per_seed = Json::array();
    for (const Word& x : seeds(c.spec)) {
        Word w = apply_automorphism(g, x, c.k, c.opt.budget);
        ShadowAccumulator acc(n);
        acc.push(w);
        SegmentMeasure mu = darkness_measure(acc, la, Rational(c.k));
        Json balls = Json::array();
        for (double r : kBallRadii) balls.push_back({{"radius", r}, {"mass", ball_mass_approx(mu, lim.approx, r)}});
        per_seed.push_back({{"seed", to_string(x)}, {"word_length", w.size()}, {"ball_mass", balls}});
    }
    j["measures"] = per_seed;
    c.timer.mark("measures");
    write_file(c.out / "darkness.json", dump(j));
    return 0;
}

int cmd_polytope(Context& c) {
    PreparedMap prep = prepare(c.spec);
    HPGraph hp = build_hp_graph(prep.psi);
    RationalPolytope sigma = sigma1(hp.digraph());
    c.timer.mark("sigma1");
    ShadowLimit lim = compute_shadow_limit(c.spec);
    Json j = header(c, "polytope");
    j["order"] = prep.order;
    j["sigma1"] = to_json(sigma);
    j["shadow_limit"] = to_json(lim);
    write_file(c.out / "polytope.json", dump(j));
    return 0;
}

int cmd_hpgraph(Context& c) {
    GraphMap phi = c.spec.map;
    unsigned order = 1;
    try {
        PreparedMap prep = prepare(c.spec);
        phi = prep.psi;
        order = prep.order;
    } catch (const ValidationError&) {
        // not a train track: the half-point graph is still defined
    }
    HPGraph hp = build_hp_graph(phi);
    std::optional<MarkovWeights> w;
    try {
        PFData pf = dominant_eigendata(transition_matrix(phi));
        w = markov_weights(hp, pf, LengthFunction(pf.right));
    } catch (const ValidationError&) {
    }
    Json j = header(c, "hpgraph");
    j["order"] = order;
    j["hp_graph"] = to_json(hp, w ? &*w : nullptr);
    write_file(c.out / "hpgraph.json", dump(j));
    write_file(c.out / "hpgraph.dot", to_dot(hp, w ? &*w : nullptr));
    c.timer.mark("hpgraph");
    return 0;
}

// a reduced loop at the basepoint through an illegal turn, or a single edge loop
GraphPath test_path(const GraphMap& phi, bool want_illegal) {
    const DirectedGraph& g = phi.graph();
    SpanningTree tree = spanning_tree(g, phi.basepoint());
    auto loop_through = [&](std::vector<Step> middle) {
        std::size_t x = step_start(g, middle.front()), y = step_end(g, middle.back());
        GraphPath in = tree.to_basepoint[x].reversed(g);
        GraphPath mid(x, std::move(middle));
        return path_reduce(in.then(g, mid).then(g, tree.to_basepoint[y]));
    };
    if (want_illegal)
        for (std::size_t a = 0; a < 2 * g.edge_count(); ++a)
            for (std::size_t b = 0; b < 2 * g.edge_count(); ++b) {
                Step d1 = direction_from_index(a), d2 = direction_from_index(b);
                if (a == b || step_start(g, d1) != step_start(g, d2)) continue;
                if (!phi.gates().same_gate(d1, d2)) continue;
                GraphPath p = loop_through({d1.inverse(), d2});
                if (!p.empty() && !is_legal(phi.gates(), p) && !phi.apply(p).empty()) return p;
            }
    for (std::size_t e : tree.complement) {
        GraphPath p = loop_through({Step{e, 1}});
        if (is_legal(phi.gates(), p)) return p;
    }
    return loop_through({Step{tree.complement.at(0), 1}});
}

int cmd_verify(Context& c) {
    Json j = header(c, "verify");
    auto reports = verify_convergence(c.spec, c.k, c.length, c.opt.budget);
    c.timer.mark("convergence");
    bool ok = true;
    Json reps = Json::array();
    for (const auto& r : reports) {
        reps.push_back(to_json(r));
        ok = ok && r.passed();
        for (const auto& row : r.rows) c.timer.log << "k=" << row.k << " " << row.seconds << " s\n";
    }
    j["convergence"] = reps;

    try {
        PreparedMap prep = prepare(c.spec);
        LengthFunction l = select_length(c.spec, c.length);
        j["mass_check"] = to_json(mass_ratio_check(prep, test_path(prep.phi, false), l, std::min(c.k, 10U)));
        RatioCheck rc = ratio_check(prep.phi, test_path(prep.phi, true), l, std::min(c.k, 10U));
        j["ratio_check"] = to_json(rc);
        ok = ok && rc.minimum > 0;
    } catch (const ValidationError& e) {
        j["train_track"] = e.what();
    }
    c.timer.mark("mass and ratio checks");

    if (c.spec.conjugator) {
        j["equivariance"] = to_json(verify_equivariance_and_power(c.spec, *c.spec.conjugator, c.opt.powers));
        c.timer.mark("equivariance");
    } else if (!c.opt.powers.empty()) {
        j["equivariance"] =
            to_json(verify_equivariance_and_power(c.spec, Automorphism::identity(c.spec.free_rank()), c.opt.powers, 0, 1));
        c.timer.mark("powers");
    }
    j["passed"] = ok;
    write_file(c.out / "verify.json", dump(j));
    if (!ok) std::cerr << "verification assertions failed; see verify.json\n";
    return ok ? 0 : 1;
}

int cmd_figures(Context& c) {
    const std::size_t n = c.spec.free_rank();
    Projection proj = parse_projection(c.opt.projection, n);
    Automorphism g = measured_automorphism(c.spec);
    Word x = seeds(c.spec).front();
    Word w = x;
    std::vector<PointCloud> clouds;
    std::vector<SvgPolyline> all;
    Json figs = Json::array();
    for (unsigned k = 1; k <= c.k; ++k) {
        w = apply_automorphism(g, w, 1, c.opt.budget);
        ShadowAccumulator acc(n);
        acc.push(w);
        clouds.push_back(shadow_point_cloud(acc, 2, k));
        std::string label = "shd_" + std::to_string(k) + "(" + to_string(x) + ")";
        SvgPolyline line = shadow_polyline(parametrized_shadow(w, n), k, label);
        std::string file = "figure_" + std::to_string(k) + ".svg";
        write_file(c.out / file, render_svg({line}, proj));
        all.push_back(std::move(line));
        figs.push_back({{"k", k}, {"file", file}, {"word_length", w.size()}});
        c.timer.mark("figure " + std::to_string(k));
    }
    write_file(c.out / "figures_all.svg", render_svg(all, proj));
    Json dist = Json::array();
    std::vector<double> d;
    for (std::size_t i = 0; i + 1 < clouds.size(); ++i) {
        d.push_back(hausdorff_distance(clouds[i], clouds[i + 1]));
        dist.push_back({{"k", i + 1}, {"hausdorff_to_next", d.back()}});
    }
    c.timer.mark("distances");
    bool decreasing = true;
    for (std::size_t i = 3; i < d.size(); ++i) decreasing = decreasing && d[i] < d[i - 1];
    Json j = header(c, "figures");
    j["seed"] = to_string(x);
    j["figures"] = figs;
    j["successive_distances"] = dist;
    j["strictly_decreasing_after_k3"] = decreasing;
    write_file(c.out / "figures.json", dump(j));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shadows and darkness of free group automorphisms"};
    app.require_subcommand(1);
    Options opt;
    std::string command;
    auto add = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--input", opt.input, "input file")->required()->check(CLI::ExistingFile);
        s->add_option("--out", opt.out, "output directory");
        s->add_option("--k", opt.k, "iteration count (default: upper end of 'iterations:')");
        s->add_option("--length", opt.length, "length function")->check(CLI::IsMember({"unit", "train", "file"}));
        s->add_option("--projection", opt.projection, "2 x n projection for SVG, rows separated by ';'");
        s->add_option("--budget", opt.budget, "maximal word length");
        s->add_option("--powers", opt.powers, "powers L for the power check (verify)");
        s->callback([&command, name] { command = name; });
        return s;
    };
    add("shadow", "limit polytope and rescaled shadows");
    add("darkness", "limit darkness point and ball masses");
    add("polytope", "Sigma_1 and its images");
    add("hpgraph", "half-point graph as JSON and DOT");
    add("verify", "convergence, mass, ratio and equivariance checks");
    add("figures", "SVG shadows of f^k(x) for k = 1..K");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // bad arguments count as a validation failure
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        Context c = load(opt);
        int rc = 0;
        if (command == "shadow") rc = cmd_shadow(c);
        else if (command == "darkness") rc = cmd_darkness(c);
        else if (command == "polytope") rc = cmd_polytope(c);
        else if (command == "hpgraph") rc = cmd_hpgraph(c);
        else if (command == "verify") rc = cmd_verify(c);
        else if (command == "figures") rc = cmd_figures(c);
        write_file(c.out / "timings.txt", c.timer.log.str());
        return rc;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
