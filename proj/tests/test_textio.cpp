#include "support.hpp"

#include "isocone/error.hpp"
#include "isocone/textio.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <sstream>

using namespace isocone;

namespace {

template <class Parser>
auto parse_string(const std::string& text, Parser parser)
{
    std::istringstream in(text);
    return parser(in);
}

std::size_t parse_error_line(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST(TextRoundTrip, EveryFixture)
{
    for (const std::string& name : fixture_names()) {
        const std::string text = fixture_text(name);
        std::string again;
        if (name == "square_torus" || name == "hex_torus" || name == "lshape_h2" || name == "pillowcase")
            again = serialize(parse_string(text, parse_flat).value);
        else if (name == "lshape_h2_tangents") {
            std::istringstream in(text);
            again = serialize(lshape_h2(), parse_tangents(in, lshape_h2()).value);
        } else if (name == "genus2_track")
            again = serialize(parse_string(text, parse_track).value.track);
        else if (name == "small_tree")
            again = serialize(parse_string(text, parse_tree).value);
        else
            again = serialize(parse_string(text, parse_manifold).value);
        EXPECT_EQ(again, text) << name;
    }
    EXPECT_THROW(fixture_text("nope"), DomainError);
}

TEST(TextRoundTrip, WeightsAndBoundaryTrackSurvive)
{
    const std::string text = "tet A\ntet B\nglue A.3 B.3 021\nswitch A.0 out 1\nweight A:01 3/2\n";
    const ManifoldInput mi = parse_string(text, parse_manifold).value;
    EXPECT_EQ(mi.weights.size(), 1u);
    EXPECT_EQ(mi.track.out.at("A.0"), 1);
    const ManifoldInput again = parse_string(serialize(mi), parse_manifold).value;
    EXPECT_EQ(serialize(again), serialize(mi));
    EXPECT_EQ(again.weights, mi.weights);
}

TEST(TextNotes, RationalsAreNormalizedWithANote)
{
    const auto p = parse_string("vertex a\nvertex b\nedge ab a b (2/4,6/3)\n", parse_tree);
    EXPECT_EQ(p.value.edges()[0].length, (LexVec{Rat(1, 2), 2}));
    ASSERT_EQ(p.notes.size(), 1u);
    EXPECT_EQ(p.notes[0], "line 3: (2/4,6/3) normalized to (1/2,2)");
    const auto q = parse_string("branch a\nweight a 2/4\n", parse_track);
    EXPECT_EQ(q.notes, std::vector<std::string>{"line 2: 2/4 normalized to 1/2"});
    EXPECT_EQ(serialize(p.value), "vertex a\nvertex b\nedge ab a b (1/2,2)\n");
}

TEST(TextErrors, LineNumbersAreReported)
{
    EXPECT_EQ(parse_error_line([] { parse_string("vertex a\n# fine\n\nbogus x\n", parse_tree); }), 4u);
    EXPECT_EQ(parse_error_line([] { parse_string("branch a\nswitch s in a\n", parse_track); }), 2u);
    EXPECT_EQ(parse_error_line([] { parse_string("kind translation\ntriangle T a b c\nvector a 1 x\n", parse_flat); }),
              3u);
    EXPECT_EQ(parse_error_line([] { parse_string("tet A\nglue A.7 A.0 012\n", parse_manifold); }), 2u);
    EXPECT_EQ(parse_error_line([] { parse_string("triangle T a b c\nglue a\n", parse_surface); }), 2u);
}

TEST(TextErrors, DomainViolationsCarryTheLine)
{
    try {
        parse_string("vertex a\nvertex b\nedge ab a b (-1)\n", parse_tree);
        FAIL() << "expected a domain error";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(TextTangents, MissingEdgeIsADomainError)
{
    const FlatSurface s = square_torus();
    std::istringstream in("tangent t\ndelta b 1 0\n");
    try {
        parse_tangents(in, s);
        FAIL() << "expected missing-value";
    } catch (const DomainError& e) {
        EXPECT_EQ(e.invariant(), "missing-value");
    }
}

TEST(TextTangents, DeltasAreReadInTheirOwnTriangleFrame)
{
    const FlatSurface s = lshape_h2();
    const SurfaceTriangulation c = s.combinatorics();
    std::ostringstream text;
    text << "tangent scale\n";
    for (std::size_t h = 0; h < s.num_half_edges(); ++h)
        if (c.edge_rep(c.edge(h)) != h)
            text << "delta " << s.half_edge_name(h) << " " << to_string(s.vec(h)) << "\n";
    std::istringstream in(text.str());
    const auto parsed = parse_tangents(in, s).value;
    ASSERT_EQ(parsed.size(), 1u);
    const PeriodTangent e = scaling_tangent(s);
    for (std::size_t k = 0; k < c.num_edges(); ++k)
        EXPECT_TRUE(parsed[0].tangent.delta[k] == e.delta[k]) << k;
}

TEST(TextBoundaryWeights, KeyedByEdgeLabel)
{
    const ManifoldInput mi = single_tet();
    const Triangulation3& m = mi.manifold;
    NamedWeights w;
    for (std::size_t c = 0; c < m.num_edges(); ++c)
        w.push_back({m.edge_label(c), Rat(static_cast<long>(c) + 1)});
    const RatVec b = boundary_weights(m, w);
    ASSERT_EQ(b.size(), m.boundary().num_edges());
    for (std::size_t e = 0; e < b.size(); ++e)
        EXPECT_EQ(b[e], Rat(static_cast<long>(m.boundary_edge_class(e)) + 1));
}
