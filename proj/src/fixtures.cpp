#include "isocone/fixtures.hpp"

#include "isocone/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace isocone {

namespace {

const char* const kSquareTorus = R"(kind translation
triangle T0 b r d
triangle T1 e t l
vector b 1 0
vector r 0 1
vector d -1 -1
vector e 1 1
vector t -1 0
vector l 0 -1
glue b t
glue r l
glue d e
)";

const char* const kHexTorus = R"(kind translation
triangle T0 s0 s1 d02
triangle T1 s2 s3 d24
triangle T2 s4 s5 d40
triangle T3 e02 e24 e40
vector s0 -1 2
vector s1 -2 0
vector d02 3 -2
vector s2 -1 -2
vector s3 1 -2
vector d24 0 4
vector s4 2 0
vector s5 1 2
vector d40 -3 -2
vector e02 -3 2
vector e24 0 -4
vector e40 3 2
glue s0 s3
glue s1 s4
glue s2 s5
glue d02 e02
glue d24 e24
glue d40 e40
)";

const char* const kLShape = R"(kind translation
triangle A1 botA rtA dA
triangle A2 eA topA lfA
triangle B1 botB rtB dB
triangle B2 eB topB lfB
triangle C1 botC rtC dC
triangle C2 eC topC lfC
vector botA 1 0
vector rtA 0 1
vector dA -1 -1
vector eA 1 1
vector topA -1 0
vector lfA 0 -1
vector botB 1 0
vector rtB 0 1
vector dB -1 -1
vector eB 1 1
vector topB -1 0
vector lfB 0 -1
vector botC 1 0
vector rtC 0 1
vector dC -1 -1
vector eC 1 1
vector topC -1 0
vector lfC 0 -1
glue rtA lfB
glue topA botC
glue rtB lfA
glue topB botB
glue rtC lfC
glue topC botA
glue dA eA
glue dB eB
glue dC eC
)";

const char* const kPillowcase = R"(kind half-translation
triangle Q1a b1 m1 d1
triangle Q1b e1 t1 l1
triangle Q2a b2 r2 d2
triangle Q2b e2 t2 m2
vector b1 1 0
vector m1 0 1
vector d1 -1 -1
vector e1 1 1
vector t1 -1 0
vector l1 0 -1
vector b2 1 0
vector r2 0 1
vector d2 -1 -1
vector e2 1 1
vector t2 -1 0
vector m2 0 -1
glue d1 e1 neg
glue d2 e2 neg
glue m1 m2 neg
glue b1 b2 pos
glue t1 t2 pos
glue l1 r2 neg
)";

// Switch (a, b, c) branch numbers; all counterclockwise.
constexpr int kGenus2Switches[12][3] = {
    {1, 2, 0},   {5, 3, 4},   {7, 8, 6},    {10, 9, 6},  {11, 12, 4},  {13, 0, 14},
    {15, 1, 10}, {2, 15, 3},  {16, 7, 5},   {8, 16, 9},  {17, 11, 14}, {12, 17, 13},
};

// Genus-2 boundary; the Thurston form of this boundary track is nondegenerate.
const char* const kFourTets = R"(tet t0
tet t1
tet t2
tet t3
glue t2.1 t0.0 312
glue t1.0 t0.1 302
glue t3.2 t0.3 012
glue t1.3 t2.2 130
glue t2.0 t3.1 302
switch t0.2 out 0
switch t1.1 out 2
switch t1.2 out 2
switch t2.3 out 1
switch t3.0 out 2
switch t3.3 out 1
)";

const char* const kSmallTree = R"(vertex a
vertex b
vertex c
vertex d
vertex e
edge ab a b (1,0)
edge bc b c (0,1)
edge bd b d (2,-1)
edge de d e (1/2,3)
end a
)";

template <class T, class F>
T parse_text(const char* text, F parse)
{
    std::istringstream in(text);
    return parse(in).value;
}

} // namespace

Triangulation3 from_labels(const std::vector<std::array<int, 4>>& tets)
{
    Triangulation3 m;
    for (std::size_t t = 0; t < tets.size(); ++t)
        m.add_tet("t" + std::to_string(t));
    auto face_labels = [&](std::size_t t, int f) {
        std::vector<int> l;
        for (int i = 0; i < 4; ++i)
            if (i != f)
                l.push_back(tets[t][i]);
        std::sort(l.begin(), l.end());
        return l;
    };
    for (std::size_t t1 = 0; t1 < tets.size(); ++t1)
        for (int f1 = 0; f1 < 4; ++f1)
            for (std::size_t t2 = t1 + 1; t2 < tets.size(); ++t2)
                for (int f2 = 0; f2 < 4; ++f2) {
                    if (face_labels(t1, f1) != face_labels(t2, f2))
                        continue;
                    std::array<int, 3> images{};
                    int k = 0;
                    for (int i = 0; i < 4; ++i) {
                        if (i == f1)
                            continue;
                        images[k++] = static_cast<int>(
                            std::find(tets[t2].begin(), tets[t2].end(), tets[t1][i]) - tets[t2].begin());
                    }
                    m.glue(t1, f1, t2, f2, images);
                }
    m.finalize();
    return m;
}


FlatSurface square_torus() { return parse_text<FlatSurface>(kSquareTorus, parse_flat); }
FlatSurface hex_torus() { return parse_text<FlatSurface>(kHexTorus, parse_flat); }
FlatSurface lshape_h2() { return parse_text<FlatSurface>(kLShape, parse_flat); }
FlatSurface pillowcase() { return parse_text<FlatSurface>(kPillowcase, parse_flat); }

std::vector<NamedTangent> lshape_tangents()
{
    const FlatSurface s = lshape_h2();
    const SurfaceTriangulation c = s.combinatorics();
    PeriodTangent shear;
    for (std::size_t e = 0; e < c.num_edges(); ++e)
        shear.delta.push_back(Cx(s.vec(c.edge_rep(e)).im));
    return {{"scale", scaling_tangent(s)}, {"shear", shear}};
}

TrainTrack genus2_track()
{
    TrainTrack t;
    for (int b = 0; b < 18; ++b)
        t.add_branch("b" + std::to_string(b));
    for (int v = 0; v < 12; ++v) {
        const auto& s = kGenus2Switches[v];
        t.add_switch("s" + std::to_string(v), "b" + std::to_string(s[0]), "b" + std::to_string(s[1]),
                     "b" + std::to_string(s[2]), true);
    }
    t.validate();
    return t;
}

MetricTree small_tree() { return parse_text<MetricTree>(kSmallTree, parse_tree); }

ManifoldInput single_tet()
{
    ManifoldInput mi;
    mi.manifold.add_tet("T");
    mi.manifold.finalize();
    return mi;
}

ManifoldInput two_tets()
{
    ManifoldInput mi;
    mi.manifold.add_tet("A");
    mi.manifold.add_tet("B");
    mi.manifold.glue(0, 3, 1, 3, {0, 2, 1});
    mi.manifold.finalize();
    return mi;
}

ManifoldInput four_tets() { return parse_text<ManifoldInput>(kFourTets, parse_manifold); }

ManifoldInput stellar_ball()
{
    ManifoldInput mi;
    mi.manifold = from_labels({{1, 3, 2, 4}, {0, 2, 3, 4}, {0, 3, 1, 4}, {0, 1, 2, 4}});
    const SurfaceTriangulation& b = mi.manifold.boundary();
    for (std::size_t t = 0; t < b.num_triangles(); ++t)
        mi.track.out[b.triangle_name(t)] = 0;
    return mi;
}

ProductFixture g2_product()
{
    ProductFixture f;
    f.track = genus2_track();
    const DualComplex d = dual_triangulation(f.track);
    f.product = product_triangulation(d.surface);
    f.boundary_track = product_boundary_track(f.product, std::vector<int>(d.surface.num_triangles(), 2));
    return f;
}

std::vector<std::string> fixture_names()
{
    return {"square_torus", "hex_torus", "lshape_h2", "pillowcase", "lshape_h2_tangents", "genus2_track",
            "small_tree", "single_tet", "two_tets", "four_tets", "stellar_ball", "g2xI"};
}

std::string fixture_text(const std::string& name)
{
    if (name == "square_torus")
        return serialize(square_torus());
    if (name == "hex_torus")
        return serialize(hex_torus());
    if (name == "lshape_h2")
        return serialize(lshape_h2());
    if (name == "pillowcase")
        return serialize(pillowcase());
    if (name == "lshape_h2_tangents")
        return serialize(lshape_h2(), lshape_tangents());
    if (name == "genus2_track")
        return serialize(genus2_track());
    if (name == "small_tree")
        return serialize(small_tree());
    if (name == "single_tet")
        return serialize(single_tet());
    if (name == "two_tets")
        return serialize(two_tets());
    if (name == "four_tets")
        return serialize(four_tets());
    if (name == "stellar_ball")
        return serialize(stellar_ball());
    if (name == "g2xI") {
        const ProductFixture f = g2_product();
        return serialize(ManifoldInput{f.product.manifold, f.boundary_track, {}});
    }
    throw DomainError("unknown-fixture", "no fixture named '" + name + "'");
}

} // namespace isocone
