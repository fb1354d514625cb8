#include "hshadow/dsl.hpp"

#include "hshadow/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace hshadow {

LengthChoice parse_length_choice(std::string_view s) {
    if (s == "unit") return LengthChoice::unit;
    if (s == "train") return LengthChoice::train;
    if (s == "file") return LengthChoice::file;
    throw ValidationError("length must be unit, train or file, not '" + std::string(s) + "'");
}

std::string to_string(LengthChoice c) {
    switch (c) {
        case LengthChoice::unit: return "unit";
        case LengthChoice::train: return "train";
        case LengthChoice::file: return "file";
    }
    return "unit";
}

std::size_t ProblemSpec::free_rank() const {
    return spanning_tree(map.graph(), map.basepoint()).complement.size();
}

namespace {

const std::set<std::string> kSections = {"name",  "rank",  "map",        "map_inverse",       "graph",  "basepoint",
                                         "ttmap", "gates", "conjugator", "conjugator_inverse", "seeds",  "length",
                                         "lengths", "iterations", "hypotheses", "predicted"};

struct Item {
    std::string text;
    std::size_t line = 0;
    std::size_t col = 0;  // column of text[0]
};

struct Section {
    std::size_t line = 0;
    std::vector<Item> items;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// trims in place, shifting the column
Item trimmed(std::string_view s, std::size_t line, std::size_t col) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return {std::string(s.substr(b, e - b)), line, col + b};
}

std::map<std::string, Section> split_sections(std::string_view text) {
    std::map<std::string, Section> out;
    Section* cur = nullptr;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        Item it = trimmed(line, line_no, 1);
        if (it.text.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        bool header = false;
        if (!line.empty() && !is_space(line[0])) {
            auto colon = line.find(':');
            if (colon != std::string_view::npos) {
                std::string key(line.substr(0, colon));
                if (kSections.count(key)) {
                    header = true;
                    if (out.count(key)) throw ParseError("section '" + key + "' appears twice", line_no, 1);
                    cur = &out[key];
                    cur->line = line_no;
                    Item rest = trimmed(line.substr(colon + 1), line_no, colon + 2);
                    if (!rest.text.empty()) cur->items.push_back(rest);
                }
            }
        }
        if (!header) {
            if (!is_space(line[0])) {
                auto colon = line.find(':');
                if (colon != std::string_view::npos)
                    throw ParseError("unknown section '" + std::string(line.substr(0, colon)) + "'", line_no, 1);
                throw ParseError("section items must be indented", line_no, 1);
            }
            if (!cur) throw ParseError("expected a section header such as 'map:' or 'graph:'", line_no, it.col);
            cur->items.push_back(it);
        }
        if (nl == text.size()) break;
    }
    return out;
}

const Item& single(const Section& s, const std::string& key) {
    if (s.items.size() != 1) throw ParseError("section '" + key + "' takes exactly one value", s.line, 1);
    return s.items[0];
}

unsigned parse_unsigned(const std::string& s, std::size_t line, std::size_t col) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("expected a nonnegative integer, got '" + s + "'", line, col);
    if (s.size() > 9) throw ParseError("integer too large", line, col);
    return static_cast<unsigned>(std::stoul(s));
}

// Parses a case-notation word and rejects it if any cancellation occurs,
// reporting the column of the cancelling letter.
Word parse_reduced_word(const Item& it, std::size_t rank) {
    const std::string& s = it.text;
    std::vector<std::pair<Letter, std::size_t>> stack;
    std::size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        if (is_space(s[i])) {
            ++i;
            continue;
        }
        if (!std::isalpha(static_cast<unsigned char>(s[i]))) {
            if (s[i] == '1' && !any) {
                ++i;
                continue;
            }
            throw ParseError(std::string("unexpected character '") + s[i] + "' in word", it.line, it.col + i);
        }
        std::size_t j = i + 1;
        while (j < s.size() && !std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
        Word token = parse_word(std::string_view(s).substr(i, j - i), rank, it.line, it.col + i);
        std::size_t shown = j;
        while (shown > i && is_space(s[shown - 1])) --shown;
        for (Letter l : token.letters()) {
            if (!stack.empty() && stack.back().first == -l)
                throw ParseError("word is not reduced: '" + s.substr(i, shown - i) + "' cancels the preceding letter",
                                 it.line, it.col + i);
            stack.push_back({l, it.col + i});
        }
        any = true;
        i = j;
    }
    std::vector<Letter> letters;
    for (auto& p : stack) letters.push_back(p.first);
    return Word::from_reduced(std::move(letters));
}

// "a -> word" lines; every generator exactly once.
std::vector<Word> parse_images(const Section& sec, const std::string& key, std::size_t rank) {
    std::vector<std::optional<Word>> imgs(rank);
    for (const auto& it : sec.items) {
        auto arrow = it.text.find("->");
        if (arrow == std::string::npos) throw ParseError("expected 'x -> word'", it.line, it.col);
        Item lhs = trimmed(std::string_view(it.text).substr(0, arrow), it.line, it.col);
        Item rhs = trimmed(std::string_view(it.text).substr(arrow + 2), it.line, it.col + arrow + 2);
        if (lhs.text.size() != 1 || !std::islower(static_cast<unsigned char>(lhs.text[0])))
            throw ParseError("left side must be a single lowercase generator", lhs.line, lhs.col);
        std::size_t g = static_cast<std::size_t>(lhs.text[0] - 'a');
        if (g >= rank)
            throw ParseError("unknown generator '" + lhs.text + "' for rank " + std::to_string(rank), lhs.line, lhs.col);
        if (imgs[g]) throw ParseError("generator '" + lhs.text + "' mapped twice", lhs.line, lhs.col);
        if (rhs.text.empty()) throw ParseError("missing image", rhs.line, rhs.col);
        Word w = parse_reduced_word(rhs, rank);
        if (w.empty()) throw ParseError("image is the empty word", rhs.line, rhs.col);
        imgs[g] = std::move(w);
    }
    std::vector<Word> out;
    for (std::size_t g = 0; g < rank; ++g) {
        if (!imgs[g])
            throw ParseError("section '" + key + "' lacks an image for '" + std::string(1, char('a' + g)) + "'", sec.line, 1);
        out.push_back(*imgs[g]);
    }
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<std::pair<Item, std::size_t>> tokens(const Item& it) {
    std::vector<std::pair<Item, std::size_t>> out;
    std::size_t i = 0;
    const std::string& s = it.text;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        if (i >= s.size()) break;
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j])) ++j;
        out.push_back({Item{s.substr(i, j - i), it.line, it.col + i}, i});
        i = j;
    }
    return out;
}

GraphPath parse_path(const Item& it, const DirectedGraph& g) {
    std::vector<Step> steps;
    std::optional<std::size_t> start;
    for (auto& [tok, off] : tokens(it)) {
        std::string name = tok.text;
        long exponent = 1;
        if (auto caret = name.find('^'); caret != std::string::npos) {
            std::string e = name.substr(caret + 1);
            name = name.substr(0, caret);
            if (e.size() >= 2 && e.front() == '{' && e.back() == '}') e = e.substr(1, e.size() - 2);
            bool neg = !e.empty() && e[0] == '-';
            if (neg) e = e.substr(1);
            exponent = parse_unsigned(e, tok.line, tok.col + caret + 1);
            if (exponent == 0) throw ParseError("zero exponent", tok.line, tok.col + caret + 1);
            if (neg) exponent = -exponent;
        }
        auto e = g.find_edge(name);
        if (!e) throw ParseError("unknown edge '" + name + "'", tok.line, tok.col);
        Step s{*e, exponent < 0 ? -1 : 1};
        for (long k = 0; k < std::labs(exponent); ++k) {
            if (!steps.empty()) {
                if (step_end(g, steps.back()) != step_start(g, s))
                    throw ParseError("edge '" + name + "' does not continue the path", tok.line, tok.col);
                if (steps.back() == s.inverse())
                    throw ParseError("image is not immersed: '" + tok.text + "' backtracks", tok.line, tok.col);
            } else {
                start = step_start(g, s);
            }
            steps.push_back(s);
        }
    }
    if (steps.empty()) throw ParseError("missing edge image", it.line, it.col);
    return GraphPath(*start, std::move(steps));
}

Gates parse_gates(const Section& sec, const DirectedGraph& g) {
    Gates gates;
    gates.gate_of.assign(2 * g.edge_count(), -1);
    int next = 0;
    for (const auto& it : sec.items) {
        auto colon = it.text.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'vertex: {e1+, e2-} ...'", it.line, it.col);
        Item vname = trimmed(std::string_view(it.text).substr(0, colon), it.line, it.col);
        auto v = g.find_vertex(vname.text);
        if (!v) throw ParseError("unknown vertex '" + vname.text + "'", vname.line, vname.col);
        std::size_t i = colon + 1;
        const std::string& s = it.text;
        while (i < s.size()) {
            if (is_space(s[i])) {
                ++i;
                continue;
            }
            if (s[i] != '{') throw ParseError("expected '{'", it.line, it.col + i);
            std::size_t close = s.find('}', i);
            if (close == std::string::npos) throw ParseError("unterminated gate", it.line, it.col + i);
            std::size_t p = i + 1;
            int id = next++;
            bool nonempty = false;
            while (p < close) {
                std::size_t comma = std::min(s.find(',', p), close);
                Item end = trimmed(std::string_view(s).substr(p, comma - p), it.line, it.col + p);
                p = comma + 1;
                if (end.text.empty()) continue;
                char sign = end.text.back();
                if (sign != '+' && sign != '-') throw ParseError("edge end must end in '+' or '-'", end.line, end.col);
                auto e = g.find_edge(end.text.substr(0, end.text.size() - 1));
                if (!e) throw ParseError("unknown edge in '" + end.text + "'", end.line, end.col);
                Step d{*e, sign == '+' ? 1 : -1};
                if (step_start(g, d) != *v)
                    throw ParseError("edge end '" + end.text + "' is not at vertex '" + vname.text + "'", end.line, end.col);
                auto& slot = gates.gate_of[direction_index(d)];
                if (slot != -1) throw ParseError("edge end '" + end.text + "' listed twice", end.line, end.col);
                slot = id;
                nonempty = true;
            }
            if (!nonempty) throw ParseError("empty gate", it.line, it.col + i);
            i = close + 1;
        }
    }
    for (std::size_t d = 0; d < gates.gate_of.size(); ++d)
        if (gates.gate_of[d] == -1) {
            Step s = direction_from_index(d);
            throw ParseError("edge end '" + g.edge(s.edge).name + (s.dir > 0 ? "+" : "-") + "' has no gate", sec.line, 1);
        }
    return gates;
}

}  // namespace

ProblemSpec parse_input(std::string_view text) {
    auto secs = split_sections(text);
    auto has = [&](const char* k) { return secs.count(k) > 0; };
    ProblemSpec spec;
    if (has("name")) spec.name = single(secs["name"], "name").text;

    if (has("map") == has("graph"))
        throw ParseError("exactly one of 'map:' (rose) or 'graph:' (train track) is required", 1, 1);

    std::optional<Gates> gates;
    if (has("map")) {
        for (const char* k : {"ttmap", "basepoint"})
            if (has(k)) throw ParseError(std::string("section '") + k + "' needs 'graph:'", secs[k].line, 1);
        std::size_t rank = secs["map"].items.size();
        if (has("rank")) {
            const Item& r = single(secs["rank"], "rank");
            rank = parse_unsigned(r.text, r.line, r.col);
        }
        if (rank == 0 || rank > 26) throw ParseError("rank must be between 1 and 26", secs["map"].line, 1);
        auto imgs = parse_images(secs["map"], "map", rank);
        std::optional<std::vector<Word>> inv;
        if (has("map_inverse")) inv = parse_images(secs["map_inverse"], "map_inverse", rank);
        spec.rose_automorphism = Automorphism(imgs, inv);
        spec.rose = true;
        DirectedGraph rose = DirectedGraph::rose(rank);
        if (has("gates")) gates = parse_gates(secs["gates"], rose);
        spec.map = GraphMap::from_automorphism(*spec.rose_automorphism, gates.value_or(Gates{}));
    } else {
        for (const char* k : {"rank", "map_inverse"})
            if (has(k)) throw ParseError(std::string("section '") + k + "' needs 'map:'", secs[k].line, 1);
        if (!has("ttmap")) throw ParseError("'graph:' requires a 'ttmap:' section", secs["graph"].line, 1);
        DirectedGraph g;
        for (const auto& it : secs["graph"].items) {
            auto colon = it.text.find(':');
            auto arrow = it.text.find("->");
            if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
                throw ParseError("expected 'edge: from -> to'", it.line, it.col);
            Item e = trimmed(std::string_view(it.text).substr(0, colon), it.line, it.col);
            Item a = trimmed(std::string_view(it.text).substr(colon + 1, arrow - colon - 1), it.line, it.col + colon + 1);
            Item b = trimmed(std::string_view(it.text).substr(arrow + 2), it.line, it.col + arrow + 2);
            for (const Item* x : {&e, &a, &b})
                if (!valid_name(x->text)) throw ParseError("invalid name '" + x->text + "'", x->line, x->col);
            if (kSections.count(e.text)) throw ParseError("edge name '" + e.text + "' is reserved", e.line, e.col);
            if (g.find_edge(e.text)) throw ParseError("edge '" + e.text + "' declared twice", e.line, e.col);
            auto va = g.find_vertex(a.text);
            std::size_t ia = va ? *va : g.add_vertex(a.text);
            auto vb = g.find_vertex(b.text);
            std::size_t ib = vb ? *vb : g.add_vertex(b.text);
            g.add_edge(e.text, ia, ib);
        }
        if (g.edge_count() == 0) throw ParseError("graph has no edges", secs["graph"].line, 1);
        std::size_t base = 0;
        if (has("basepoint")) {
            const Item& b = single(secs["basepoint"], "basepoint");
            auto v = g.find_vertex(b.text);
            if (!v) throw ParseError("unknown vertex '" + b.text + "'", b.line, b.col);
            base = *v;
        }
        std::vector<std::optional<GraphPath>> imgs(g.edge_count());
        std::vector<std::optional<std::size_t>> vimg(g.vertex_count());
        for (const auto& it : secs["ttmap"].items) {
            auto arrow = it.text.find("->");
            if (arrow == std::string::npos) throw ParseError("expected 'edge -> path'", it.line, it.col);
            Item lhs = trimmed(std::string_view(it.text).substr(0, arrow), it.line, it.col);
            Item rhs = trimmed(std::string_view(it.text).substr(arrow + 2), it.line, it.col + arrow + 2);
            auto e = g.find_edge(lhs.text);
            if (!e) throw ParseError("unknown edge '" + lhs.text + "'", lhs.line, lhs.col);
            if (imgs[*e]) throw ParseError("edge '" + lhs.text + "' mapped twice", lhs.line, lhs.col);
            GraphPath p = parse_path(rhs, g);
            auto bind = [&](std::size_t v, std::size_t w) {
                if (vimg[v] && *vimg[v] != w)
                    throw ParseError("image of '" + lhs.text + "' sends vertex '" + g.vertex_name(v) +
                                         "' to a different vertex than an earlier image",
                                     rhs.line, rhs.col);
                vimg[v] = w;
            };
            bind(g.edge(*e).from, p.start());
            bind(g.edge(*e).to, p.end(g));
            imgs[*e] = std::move(p);
        }
        std::vector<GraphPath> edge_images;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            if (!imgs[e]) throw ParseError("'ttmap:' lacks an image for edge '" + g.edge(e).name + "'", secs["ttmap"].line, 1);
            edge_images.push_back(*imgs[e]);
        }
        std::vector<std::size_t> vertex_images;
        for (auto& v : vimg) vertex_images.push_back(v.value_or(0));
        if (has("gates")) gates = parse_gates(secs["gates"], g);
        spec.map = GraphMap(MarkedGraph{std::move(g), base, gates.value_or(Gates{})}, std::move(vertex_images),
                            std::move(edge_images));
    }
    spec.explicit_gates = gates.has_value();

    const std::size_t n = spec.free_rank();
    if (has("conjugator") != has("conjugator_inverse"))
        throw ParseError("'conjugator:' and 'conjugator_inverse:' must be given together",
                         secs[has("conjugator") ? "conjugator" : "conjugator_inverse"].line, 1);
    if (has("conjugator")) {
        auto h = parse_images(secs["conjugator"], "conjugator", n);
        auto hi = parse_images(secs["conjugator_inverse"], "conjugator_inverse", n);
        spec.conjugator = Automorphism(h, hi);
    }
    if (has("seeds")) {
        for (const auto& it : secs["seeds"].items) {
            std::size_t p = 0;
            while (p <= it.text.size()) {
                std::size_t comma = std::min(it.text.find(',', p), it.text.size());
                Item w = trimmed(std::string_view(it.text).substr(p, comma - p), it.line, it.col + p);
                if (w.text.empty()) throw ParseError("empty seed", w.line, w.col);
                Word x = parse_reduced_word(w, n);
                if (x.empty()) throw ParseError("seed words must be nontrivial", w.line, w.col);
                spec.seeds.push_back(std::move(x));
                p = comma + 1;
            }
        }
    }
    if (has("length")) {
        const Item& l = single(secs["length"], "length");
        try {
            spec.length = parse_length_choice(l.text);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), l.line, l.col);
        }
    }
    if (has("lengths")) {
        const DirectedGraph& g = spec.map.graph();
        std::vector<std::optional<Rational>> ls(g.edge_count());
        for (const auto& it : secs["lengths"].items) {
            auto colon = it.text.find(':');
            if (colon == std::string::npos) throw ParseError("expected 'edge: length'", it.line, it.col);
            Item e = trimmed(std::string_view(it.text).substr(0, colon), it.line, it.col);
            Item v = trimmed(std::string_view(it.text).substr(colon + 1), it.line, it.col + colon + 1);
            auto id = g.find_edge(e.text);
            if (!id) throw ParseError("unknown edge '" + e.text + "'", e.line, e.col);
            if (ls[*id]) throw ParseError("length of '" + e.text + "' given twice", e.line, e.col);
            Rational q;
            try {
                q = parse_rational(v.text);
            } catch (const std::exception&) {
                throw ParseError("invalid rational '" + v.text + "'", v.line, v.col);
            }
            if (q <= 0) throw ParseError("lengths must be positive", v.line, v.col);
            ls[*id] = q;
        }
        for (std::size_t e = 0; e < ls.size(); ++e) {
            if (!ls[e]) throw ParseError("no length for edge '" + g.edge(e).name + "'", secs["lengths"].line, 1);
            spec.lengths.push_back(*ls[e]);
        }
    }
    if (spec.length == LengthChoice::file && spec.lengths.empty())
        throw ParseError("'length: file' requires a 'lengths:' section", secs.count("length") ? secs["length"].line : 1, 1);
    if (has("iterations")) {
        const Item& it = single(secs["iterations"], "iterations");
        auto dots = it.text.find("..");
        if (dots == std::string::npos) {
            spec.k_min = 1;
            spec.k_max = parse_unsigned(it.text, it.line, it.col);
        } else {
            spec.k_min = parse_unsigned(it.text.substr(0, dots), it.line, it.col);
            spec.k_max = parse_unsigned(it.text.substr(dots + 2), it.line, it.col + dots + 2);
        }
        if (spec.k_min == 0 || spec.k_min > spec.k_max) throw ParseError("iterations must satisfy 1 <= kmin <= kmax", it.line, it.col);
    }
    if (has("hypotheses")) {
        const Item& h = single(secs["hypotheses"], "hypotheses");
        if (h.text == "override")
            spec.override_hypotheses = true;
        else if (h.text != "assert")
            throw ParseError("hypotheses must be 'assert' or 'override'", h.line, h.col);
    }
    if (has("predicted")) {
        for (const auto& it : secs["predicted"].items) {
            PointQ p;
            for (auto& [tok, off] : tokens(it)) {
                try {
                    p.push_back(parse_rational(tok.text));
                } catch (const std::exception&) {
                    throw ParseError("invalid rational '" + tok.text + "'", tok.line, tok.col);
                }
            }
            if (p.size() != n) throw ParseError("predicted points need " + std::to_string(n) + " coordinates", it.line, it.col);
            spec.predicted.push_back(std::move(p));
        }
    }
    return spec;
}

namespace {

std::string gate_lines(const GraphMap& m) {
    const DirectedGraph& g = m.graph();
    std::ostringstream os;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::map<int, std::vector<std::size_t>> by_gate;
        std::vector<int> order;
        for (std::size_t d = 0; d < 2 * g.edge_count(); ++d) {
            if (step_start(g, direction_from_index(d)) != v) continue;
            int id = m.gates().gate_of[d];
            if (!by_gate.count(id)) order.push_back(id);
            by_gate[id].push_back(d);
        }
        if (order.empty()) continue;
        os << "  " << g.vertex_name(v) << ":";
        for (int id : order) {
            os << " {";
            bool first = true;
            for (auto d : by_gate[id]) {
                Step s = direction_from_index(d);
                os << (first ? "" : ", ") << g.edge(s.edge).name << (s.dir > 0 ? "+" : "-");
                first = false;
            }
            os << "}";
        }
        os << "\n";
    }
    return os.str();
}

void images_block(std::ostringstream& os, const char* key, const std::vector<Word>& imgs) {
    os << key << ":\n";
    for (std::size_t i = 0; i < imgs.size(); ++i) os << "  " << char('a' + i) << " -> " << to_string(imgs[i]) << "\n";
}

}  // namespace

std::string serialize(const ProblemSpec& spec) {
    std::ostringstream os;
    if (!spec.name.empty()) os << "name: " << spec.name << "\n";
    const DirectedGraph& g = spec.map.graph();
    if (spec.rose) {
        const Automorphism& f = *spec.rose_automorphism;
        os << "rank: " << f.rank() << "\n";
        images_block(os, "map", f.images());
        if (f.has_inverse()) images_block(os, "map_inverse", f.inverse().images());
    } else {
        os << "graph:\n";
        for (const auto& e : g.edges())
            os << "  " << e.name << ": " << g.vertex_name(e.from) << " -> " << g.vertex_name(e.to) << "\n";
        os << "basepoint: " << g.vertex_name(spec.map.basepoint()) << "\n";
        os << "ttmap:\n";
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            os << "  " << g.edge(e).name << " -> " << to_string(g, spec.map.edge_image(e)) << "\n";
    }
    if (spec.explicit_gates) os << "gates:\n" << gate_lines(spec.map);
    if (spec.conjugator) {
        images_block(os, "conjugator", spec.conjugator->images());
        images_block(os, "conjugator_inverse", spec.conjugator->inverse().images());
    }
    if (!spec.seeds.empty()) {
        os << "seeds: ";
        for (std::size_t i = 0; i < spec.seeds.size(); ++i) os << (i ? ", " : "") << to_string(spec.seeds[i]);
        os << "\n";
    }
    os << "length: " << to_string(spec.length) << "\n";
    if (!spec.lengths.empty()) {
        os << "lengths:\n";
        for (std::size_t e = 0; e < spec.lengths.size(); ++e) os << "  " << g.edge(e).name << ": " << to_string(spec.lengths[e]) << "\n";
    }
    os << "iterations: " << spec.k_min << ".." << spec.k_max << "\n";
    os << "hypotheses: " << (spec.override_hypotheses ? "override" : "assert") << "\n";
    if (!spec.predicted.empty()) {
        os << "predicted:\n";
        for (const auto& p : spec.predicted) {
            os << " ";
            for (const auto& x : p) os << " " << to_string(x);
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace hshadow
