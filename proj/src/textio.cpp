#include "isocone/textio.hpp"

#include "isocone/error.hpp"

#include <map>
#include <sstream>

namespace isocone {

namespace {

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Next non-comment line split into tokens; false at end of input.
    bool next(std::vector<std::string>& tok)
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            std::istringstream ss(line);
            tok.clear();
            for (std::string t; ss >> t;)
                tok.push_back(t);
            if (!tok.empty() && tok[0][0] != '#')
                return true;
        }
        if (in_.bad())
            throw ParseError(line_, "read failure");
        return false;
    }

    std::size_t line() const { return line_; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

    void expect(const std::vector<std::string>& tok, std::size_t n, const char* usage) const
    {
        if (tok.size() != n)
            fail(std::string("expected '") + usage + "'");
    }

    Rat rat(const std::string& text)
    {
        bool normalized = false;
        Rat q;
        try {
            q = parse_rat(text, &normalized);
        } catch (const ParseError& e) {
            fail(e.what());
        }
        if (normalized)
            notes.push_back("line " + std::to_string(line_) + ": " + text + " normalized to " + to_string(q));
        return q;
    }

    LexVec lexvec(const std::string& text)
    {
        bool normalized = false;
        LexVec v;
        try {
            v = parse_lexvec(text, &normalized);
        } catch (const ParseError& e) {
            fail(e.what());
        }
        if (normalized)
            notes.push_back("line " + std::to_string(line_) + ": " + text + " normalized to " + to_string(v));
        return v;
    }

    // Runs f, attaching the current line to domain errors.
    template <class F>
    void at_line(F&& f) const
    {
        try {
            f();
        } catch (const DomainError& e) {
            throw DomainError(e.invariant(), "line " + std::to_string(line_) + ": " + e.what());
        }
    }

    std::vector<std::string> notes;

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

std::pair<std::string, int> split_face(const Reader& r, const std::string& text)
{
    const auto dot = text.rfind('.');
    if (dot == std::string::npos || dot + 2 != text.size() || text[dot + 1] < '0' || text[dot + 1] > '3')
        r.fail("expected <tet>.<face> with face 0-3, got '" + text + "'");
    return {text.substr(0, dot), text[dot + 1] - '0'};
}

int edge_factor(const FlatSurface& s, const SurfaceTriangulation& c, std::size_t h)
{
    return c.edge_rep(c.edge(h)) == h || s.pos(h) ? 1 : -1;
}

} // namespace

Parsed<MetricTree> parse_tree(std::istream& in)
{
    Reader r(in);
    MetricTree t;
    std::vector<std::string> tok;
    while (r.next(tok)) {
        if (tok[0] == "vertex") {
            r.expect(tok, 2, "vertex <id>");
            r.at_line([&] { t.add_vertex(tok[1]); });
        } else if (tok[0] == "edge") {
            r.expect(tok, 5, "edge <id> <u> <v> <length>");
            LexVec len = r.lexvec(tok[4]);
            r.at_line([&] { t.add_edge(tok[1], tok[2], tok[3], len); });
        } else if (tok[0] == "end") {
            r.expect(tok, 2, "end <anchor>");
            r.at_line([&] { t.set_end(tok[1]); });
        } else {
            r.fail("unknown directive '" + tok[0] + "'");
        }
    }
    t.validate();
    return {std::move(t), std::move(r.notes)};
}

std::string serialize(const MetricTree& t)
{
    std::ostringstream out;
    for (const auto& v : t.vertex_ids())
        out << "vertex " << v << "\n";
    for (const auto& e : t.edges())
        out << "edge " << e.id << " " << t.vertex_ids()[e.u] << " " << t.vertex_ids()[e.v] << " "
            << to_string(e.length) << "\n";
    if (t.end_anchor())
        out << "end " << t.vertex_ids()[*t.end_anchor()] << "\n";
    return out.str();
}

Parsed<TrackInput> parse_track(std::istream& in)
{
    Reader r(in);
    TrackInput ti;
    std::vector<std::string> tok;
    while (r.next(tok)) {
        if (tok[0] == "branch") {
            r.expect(tok, 2, "branch <id>");
            r.at_line([&] { ti.track.add_branch(tok[1]); });
        } else if (tok[0] == "switch") {
            if ((tok.size() != 7 && tok.size() != 8) || tok[2] != "in" || tok[5] != "out"
                || (tok.size() == 8 && tok[7] != "ccw"))
                r.fail("expected 'switch <id> in <a> <b> out <c> [ccw]'");
            r.at_line([&] { ti.track.add_switch(tok[1], tok[3], tok[4], tok[6], tok.size() == 8); });
        } else if (tok[0] == "weight") {
            r.expect(tok, 3, "weight <branch> <value>");
            ti.weights.emplace_back(tok[1], r.rat(tok[2]));
        } else {
            r.fail("unknown directive '" + tok[0] + "'");
        }
    }
    return {std::move(ti), std::move(r.notes)};
}

std::string serialize(const TrainTrack& t, const NamedWeights& weights)
{
    std::ostringstream out;
    for (const auto& b : t.branches())
        out << "branch " << b << "\n";
    for (const Switch& s : t.switches())
        out << "switch " << s.id << " in " << t.branches()[s.a] << " " << t.branches()[s.b] << " out "
            << t.branches()[s.c] << (s.ccw ? " ccw" : "") << "\n";
    for (const auto& [b, w] : weights)
        out << "weight " << b << " " << to_string(w) << "\n";
    return out.str();
}

Parsed<SurfaceTriangulation> parse_surface(std::istream& in)
{
    Reader r(in);
    SurfaceTriangulation s;
    std::vector<std::string> tok;
    while (r.next(tok)) {
        if (tok[0] == "triangle") {
            r.expect(tok, 5, "triangle <id> <e0> <e1> <e2>");
            r.at_line([&] { s.add_triangle(tok[1], {tok[2], tok[3], tok[4]}); });
        } else if (tok[0] == "glue") {
            r.expect(tok, 3, "glue <e> <e'>");
            r.at_line([&] { s.glue(tok[1], tok[2]); });
        } else {
            r.fail("unknown directive '" + tok[0] + "'");
        }
    }
    s.finalize();
    return {std::move(s), std::move(r.notes)};
}

std::string serialize(const SurfaceTriangulation& s)
{
    std::ostringstream out;
    for (std::size_t t = 0; t < s.num_triangles(); ++t)
        out << "triangle " << s.triangle_name(t) << " " << s.half_edge_name(3 * t) << " "
            << s.half_edge_name(3 * t + 1) << " " << s.half_edge_name(3 * t + 2) << "\n";
    for (std::size_t h = 0; h < s.num_half_edges(); ++h)
        if (s.partner(h) != kNone && h < s.partner(h))
            out << "glue " << s.half_edge_name(h) << " " << s.half_edge_name(s.partner(h)) << "\n";
    return out.str();
}

Parsed<FlatSurface> parse_flat(std::istream& in)
{
    Reader r(in);
    FlatSurface s;
    std::vector<std::string> tok;
    bool have_kind = false;
    while (r.next(tok)) {
        if (tok[0] == "kind") {
            r.expect(tok, 2, "kind translation|half-translation");
            if (have_kind)
                r.fail("kind given twice");
            if (tok[1] == "translation")
                s.kind = FlatKind::Translation;
            else if (tok[1] == "half-translation")
                s.kind = FlatKind::HalfTranslation;
            else
                r.fail("unknown kind '" + tok[1] + "'");
            have_kind = true;
        } else if (tok[0] == "triangle") {
            r.expect(tok, 5, "triangle <id> <e0> <e1> <e2>");
            r.at_line([&] { s.add_triangle(tok[1], {tok[2], tok[3], tok[4]}); });
        } else if (tok[0] == "vector") {
            r.expect(tok, 4, "vector <e> <re> <im>");
            const Cx v{r.rat(tok[2]), r.rat(tok[3])};
            r.at_line([&] { s.set_vector(tok[1], v); });
        } else if (tok[0] == "glue") {
            if (tok.size() != 3 && tok.size() != 4)
                r.fail("expected 'glue <e> <e'> [neg|pos]'");
            if (tok.size() == 4 && tok[3] != "neg" && tok[3] != "pos")
                r.fail("gluing sign must be neg or pos");
            r.at_line([&] { s.glue(tok[1], tok[2], tok.size() == 4 && tok[3] == "pos"); });
        } else {
            r.fail("unknown directive '" + tok[0] + "'");
        }
    }
    return {std::move(s), std::move(r.notes)};
}

std::string serialize(const FlatSurface& s)
{
    std::ostringstream out;
    out << "kind " << (s.kind == FlatKind::Translation ? "translation" : "half-translation") << "\n";
    for (std::size_t t = 0; t < s.num_triangles(); ++t)
        out << "triangle " << s.triangle_name(t) << " " << s.half_edge_name(3 * t) << " "
            << s.half_edge_name(3 * t + 1) << " " << s.half_edge_name(3 * t + 2) << "\n";
    for (std::size_t h = 0; h < s.num_half_edges(); ++h)
        out << "vector " << s.half_edge_name(h) << " " << to_string(s.vec(h)) << "\n";
    for (std::size_t h = 0; h < s.num_half_edges(); ++h)
        if (s.partner(h) != kNone && h < s.partner(h))
            out << "glue " << s.half_edge_name(h) << " " << s.half_edge_name(s.partner(h)) << " "
                << (s.pos(h) ? "pos" : "neg") << "\n";
    return out.str();
}

Parsed<ManifoldInput> parse_manifold(std::istream& in)
{
    Reader r(in);
    ManifoldInput mi;
    std::vector<std::string> tok;
    std::vector<std::pair<std::size_t, std::pair<std::string, int>>> switches;
    while (r.next(tok)) {
        if (tok[0] == "tet") {
            r.expect(tok, 2, "tet <id>");
            r.at_line([&] { mi.manifold.add_tet(tok[1]); });
        } else if (tok[0] == "glue") {
            r.expect(tok, 4, "glue <t1>.<f1> <t2>.<f2> <xyz>");
            const auto [a, f1] = split_face(r, tok[1]);
            const auto [b, f2] = split_face(r, tok[2]);
            if (tok[3].size() != 3)
                r.fail("vertex images must be three digits, got '" + tok[3] + "'");
            std::array<int, 3> images{};
            for (int i = 0; i < 3; ++i) {
                if (tok[3][i] < '0' || tok[3][i] > '3')
                    r.fail("vertex images must be digits 0-3");
                images[i] = tok[3][i] - '0';
            }
            r.at_line([&] {
                mi.manifold.glue(mi.manifold.tet_index(a), f1, mi.manifold.tet_index(b), f2, images);
            });
        } else if (tok[0] == "switch") {
            if (tok.size() != 4 || tok[2] != "out" || tok[3].size() != 1 || tok[3][0] < '0' || tok[3][0] > '2')
                r.fail("expected 'switch <tet>.<face> out <0|1|2>'");
            switches.push_back({r.line(), {tok[1], tok[3][0] - '0'}});
        } else if (tok[0] == "weight") {
            r.expect(tok, 3, "weight <edge> <value>");
            mi.weights.emplace_back(tok[1], r.rat(tok[2]));
        } else {
            r.fail("unknown directive '" + tok[0] + "'");
        }
    }
    mi.manifold.finalize();
    for (const auto& [line, sw] : switches) {
        try {
            mi.manifold.boundary_triangle(sw.first);
        } catch (const DomainError& e) {
            throw DomainError(e.invariant(), "line " + std::to_string(line) + ": " + e.what());
        }
        if (!mi.track.out.emplace(sw.first, sw.second).second)
            throw ParseError(line, "second switch on boundary triangle " + sw.first);
    }
    return {std::move(mi), std::move(r.notes)};
}

std::string serialize(const ManifoldInput& mi)
{
    const Triangulation3& m = mi.manifold;
    std::ostringstream out;
    for (std::size_t t = 0; t < m.num_tets(); ++t)
        out << "tet " << m.tet_name(t) << "\n";
    for (const auto& g : m.gluings())
        out << "glue " << m.tet_name(g.t1) << "." << g.f1 << " " << m.tet_name(g.t2) << "." << g.f2 << " "
            << g.images[0] << g.images[1] << g.images[2] << "\n";
    for (std::size_t tri = 0; tri < m.boundary().num_triangles(); ++tri) {
        auto it = mi.track.out.find(m.boundary().triangle_name(tri));
        if (it != mi.track.out.end())
            out << "switch " << it->first << " out " << it->second << "\n";
    }
    for (const auto& [e, w] : mi.weights)
        out << "weight " << e << " " << to_string(w) << "\n";
    return out.str();
}

Parsed<std::vector<NamedTangent>> parse_tangents(std::istream& in, const FlatSurface& s)
{
    Reader r(in);
    const SurfaceTriangulation c = s.combinatorics();
    std::vector<NamedTangent> out;
    std::vector<std::vector<bool>> given;
    std::vector<std::string> tok;
    while (r.next(tok)) {
        if (tok[0] == "tangent") {
            r.expect(tok, 2, "tangent <name>");
            out.push_back({tok[1], {std::vector<Cx>(c.num_edges())}});
            given.emplace_back(c.num_edges(), false);
        } else if (tok[0] == "delta") {
            r.expect(tok, 4, "delta <half-edge> <re> <im>");
            if (out.empty())
                r.fail("delta before any tangent");
            const Cx d{r.rat(tok[2]), r.rat(tok[3])};
            r.at_line([&] {
                const std::size_t h = s.half_edge_index(tok[1]);
                const std::size_t e = c.edge(h);
                if (given.back()[e])
                    throw DomainError("structure", "edge of '" + tok[1] + "' given twice");
                given.back()[e] = true;
                out.back().tangent.delta[e] = edge_factor(s, c, h) > 0 ? d : -d;
            });
        } else {
            r.fail("unknown directive '" + tok[0] + "'");
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k)
        for (std::size_t e = 0; e < c.num_edges(); ++e)
            if (!given[k][e])
                throw DomainError("missing-value", "tangent " + out[k].name + " has no delta for edge '"
                                                       + s.half_edge_name(c.edge_rep(e)) + "'");
    return {std::move(out), std::move(r.notes)};
}

std::string serialize(const FlatSurface& s, const std::vector<NamedTangent>& tangents)
{
    const SurfaceTriangulation c = s.combinatorics();
    std::ostringstream out;
    for (const auto& t : tangents) {
        out << "tangent " << t.name << "\n";
        for (std::size_t e = 0; e < c.num_edges(); ++e)
            out << "delta " << s.half_edge_name(c.edge_rep(e)) << " " << to_string(t.tangent.delta[e]) << "\n";
    }
    return out.str();
}

RatVec boundary_weights(const Triangulation3& m, const NamedWeights& w)
{
    const SurfaceTriangulation& b = m.boundary();
    std::map<std::string, std::size_t> by_label;
    for (std::size_t e = 0; e < b.num_edges(); ++e)
        by_label[m.edge_label(m.boundary_edge_class(e))] = e;
    RatVec out(b.num_edges());
    std::vector<bool> given(b.num_edges(), false);
    for (const auto& [label, value] : w) {
        auto it = by_label.find(label);
        if (it == by_label.end())
            throw DomainError("structure", "'" + label + "' is not a boundary edge");
        if (given[it->second])
            throw DomainError("structure", "weight for '" + label + "' given twice");
        given[it->second] = true;
        out[it->second] = value;
    }
    for (std::size_t e = 0; e < b.num_edges(); ++e)
        if (!given[e])
            throw DomainError("missing-value", "no weight for boundary edge '"
                                                   + m.edge_label(m.boundary_edge_class(e)) + "'");
    return out;
}

} // namespace isocone
