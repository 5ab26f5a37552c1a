#include "support.hpp"

#include "isocone/error.hpp"
#include "isocone/track.hpp"

#include <gtest/gtest.h>

using namespace isocone;
using testsupport::random_carried_weight;

namespace {

// Switch relations written out directly: one row w(a) + w(b) - w(c) per switch.
RatMat switch_matrix(const TrainTrack& t)
{
    RatMat m;
    for (const auto& s : t.switches()) {
        RatVec row(t.num_branches(), 0);
        row[s.a] += 1;
        row[s.b] += 1;
        row[s.c] -= 1;
        m.push_back(row);
    }
    return m;
}

RatVec combo(const RatMat& basis, const RatVec& coeffs)
{
    RatVec w(basis.empty() ? 0 : basis[0].size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            w[j] += coeffs[i] * basis[i][j];
    return w;
}

Rat determinant(RatMat m)
{
    const std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const Rat f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

SurfaceTriangulation one_triangle()
{
    SurfaceTriangulation s;
    s.add_triangle("T", {"e", "f", "g"});
    s.finalize();
    return s;
}

// Delaunay, then rotated so that no edge is horizontal.
TrainTrack flat_track(const FlatSurface& f)
{
    const FlatSurface d = delaunay(f).surface;
    return dual_track(rotate(d, find_rotation(d)));
}

RatVec indicator(std::size_t n, std::size_t i)
{
    RatVec v(n, 0);
    v[i] = 1;
    return v;
}

} // namespace

TEST(Surface, SquareTorusCombinatorics)
{
    const SurfaceTriangulation s = square_torus().combinatorics();
    EXPECT_TRUE(s.closed());
    EXPECT_EQ(s.num_edges(), 3u);
    EXPECT_EQ(s.num_vertices(), 1u);
    EXPECT_EQ(s.euler_characteristic(), 0);
    EXPECT_EQ(s.genus(), 1);
    for (std::size_t h = 0; h < s.num_half_edges(); ++h) {
        EXPECT_EQ(s.partner(s.partner(h)), h);
        EXPECT_EQ(s.edge(h), s.edge(s.partner(h)));
        EXPECT_EQ(s.edge_sign(h), -s.edge_sign(s.partner(h)));
        // glued half-edges run in opposite directions
        EXPECT_EQ(s.tail(h), s.head(s.partner(h)));
    }
}

TEST(Surface, GlueRejectsNonsense)
{
    SurfaceTriangulation s;
    s.add_triangle("A", {"a0", "a1", "a2"});
    EXPECT_THROW(s.glue("a0", "a0"), DomainError);
    EXPECT_THROW(s.glue("a0", "zz"), DomainError);
    EXPECT_THROW(s.add_triangle("B", {"a0", "b1", "b2"}), DomainError);
}

TEST(SurfaceHomology, RankAndIntersectionMatrix)
{
    for (const FlatSurface& f : {square_torus(), hex_torus(), lshape_h2()}) {
        const SurfaceTriangulation s = f.combinatorics();
        const SurfaceHomology h(s);
        EXPECT_EQ(h.rank(), static_cast<std::size_t>(2 * s.genus()));
        const RatMat& m = h.dual_matrix();
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j)
                EXPECT_EQ(m[i][j], -m[j][i]);
        // Poincaré duality: the intersection form is unimodular
        EXPECT_EQ(abs(determinant(m)), 1);
    }
}

TEST(SwitchCheck, Examples)
{
    const TrainTrack t = genus2_track();
    EXPECT_TRUE(switch_check(t, RatVec(t.num_branches(), 0)));
    const RatMat basis = weight_space_basis(t);
    ASSERT_FALSE(basis.empty());
    EXPECT_TRUE(switch_check(t, basis[0]));
    RatVec bumped = basis[0];
    bumped[3] += 1;
    EXPECT_FALSE(switch_check(t, bumped));
    EXPECT_THROW(switch_check(t, RatVec(t.num_branches() - 1, 0)), DomainError);
}

TEST(WeightSpace, Dimensions)
{
    const TrainTrack g2 = genus2_track();
    EXPECT_EQ(weight_space_basis(g2).size(), 6u);
    EXPECT_EQ(weight_space_basis(TrainTrack{}).size(), 0u);
    // The Delaunay-dual track of a one-zero genus-2 surface is oriented, so its
    // switch relations carry one dependency and W has dimension 9 - 6 + 1 = 2g.
    const TrainTrack l = flat_track(lshape_h2());
    EXPECT_EQ(l.num_branches(), 9u);
    EXPECT_EQ(l.switches().size(), 6u);
    EXPECT_EQ(weight_space_basis(l).size(), 4u);
}

TEST(WeightSpaceProperty, DimensionMatchesRankOracle)
{
    std::vector<TrainTrack> tracks{genus2_track(), flat_track(lshape_h2()), flat_track(square_torus()),
                                   flat_track(hex_torus()), g2_product().track};
    for (const TrainTrack& t : tracks) {
        const RatMat basis = weight_space_basis(t);
        const RatMat m = switch_matrix(t);
        EXPECT_EQ(basis.size(), t.num_branches() - rank(m));
        EXPECT_EQ(rank(basis), basis.size());
        for (const auto& w : basis)
            EXPECT_TRUE(switch_check(t, w));
        const std::size_t expected_gap = track_orientation(t) ? 1 : 0;
        EXPECT_EQ(basis.size(), t.num_branches() - t.switches().size() + expected_gap);
    }
}

TEST(ThurstonForm, Examples)
{
    const TrainTrack t = genus2_track();
    const RatMat b = weight_space_basis(t);
    for (const auto& w : b)
        EXPECT_EQ(thurston_form(t, w, w), 0);
    RatVec w2 = b[0];
    for (auto& x : w2)
        x *= 2;
    EXPECT_EQ(thurston_form(t, w2, b[1]), 2 * thurston_form(t, b[0], b[1]));
    try {
        thurston_form(t, indicator(t.num_branches(), 0), b[0]);
        FAIL() << "expected invalid-weight";
    } catch (const DomainError& e) {
        EXPECT_EQ(e.invariant(), "invalid-weight");
    }
}

TEST(ThurstonForm, NondegenerateOnMaximalTrack)
{
    const TrainTrack t = genus2_track();
    const RatMat b = weight_space_basis(t);
    RatMat gram(b.size(), RatVec(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            gram[i][j] = thurston_form(t, b[i], b[j]);
    EXPECT_NE(determinant(gram), 0);
}

TEST(ThurstonFormProperty, AntisymmetricBilinearAndPullsBack)
{
    std::mt19937_64 rng(21);
    for (const TrainTrack& t : {genus2_track(), flat_track(lshape_h2()), flat_track(hex_torus())}) {
        const RatMat b = weight_space_basis(t);
        const DualComplex d = dual_complex(t);
        for (int iter = 0; iter < 40; ++iter) {
            const RatVec u = combo(b, testsupport::random_vec(rng, b.size()));
            const RatVec v = combo(b, testsupport::random_vec(rng, b.size()));
            const RatVec x = combo(b, testsupport::random_vec(rng, b.size()));
            const Rat c = testsupport::small_rat(rng, -4, 4, 3);
            RatVec cu_x = u;
            for (std::size_t i = 0; i < cu_x.size(); ++i)
                cu_x[i] = c * u[i] + x[i];
            EXPECT_EQ(thurston_form(t, u, v), -thurston_form(t, v, u));
            EXPECT_EQ(thurston_form(t, cu_x, v), c * thurston_form(t, u, v) + thurston_form(t, x, v));
            EXPECT_EQ(thurston_form(t, u, v),
                      triangle_form_sum(d.surface, embed_weights(t, d, u), embed_weights(t, d, v)));
        }
    }
}

TEST(DualTriangulation, Genus2Counts)
{
    const TrainTrack t = genus2_track();
    const DualComplex d = dual_triangulation(t);
    EXPECT_EQ(d.surface.num_triangles(), 12u);
    EXPECT_EQ(d.surface.num_edges(), 18u);
    EXPECT_EQ(d.surface.num_vertices(), 4u);
    EXPECT_EQ(d.surface.genus(), 2);
    for (std::size_t b = 0; b < t.num_branches(); ++b)
        EXPECT_EQ(d.branch_of_edge[d.edge_of_branch[b]], b);
}

TEST(DualTriangulation, RecoversSwitchStructure)
{
    // Each dual triangle lists its switch's branches in positive order.
    const TrainTrack t = genus2_track();
    const DualComplex d = dual_triangulation(t);
    for (std::size_t s = 0; s < t.switches().size(); ++s) {
        const Switch& sw = t.switches()[s];
        const std::array<std::size_t, 3> expect = sw.ccw ? std::array{sw.a, sw.b, sw.c}
                                                         : std::array{sw.b, sw.a, sw.c};
        std::array<std::size_t, 3> got{};
        for (std::size_t k = 0; k < 3; ++k)
            got[k] = d.branch_of_edge[d.surface.edge(3 * s + k)];
        EXPECT_EQ(got, expect);
    }
}

TEST(DualTriangulation, NonMaximalTrackIsRejected)
{
    // one vertex of cone angle 6π: the single complementary region is a hexagon
    try {
        dual_triangulation(flat_track(lshape_h2()));
        FAIL() << "expected not-maximal";
    } catch (const DomainError& e) {
        EXPECT_EQ(e.invariant(), "not-maximal");
    }
}

TEST(TriangleFormSum, Examples)
{
    const SurfaceTriangulation s = one_triangle();
    EXPECT_EQ(triangle_form_sum(s, indicator(3, 0), indicator(3, 1)), Rat(-1, 2));
    EXPECT_EQ(triangle_form_sum(s, indicator(3, 1), indicator(3, 0)), Rat(1, 2));
    const RatVec u{3, -1, 2};
    EXPECT_EQ(triangle_form_sum(s, u, u), 0);
}

TEST(TriangleFormSumProperty, ReversalNegates)
{
    std::mt19937_64 rng(22);
    for (const FlatSurface& f : {lshape_h2(), hex_torus(), pillowcase()}) {
        const SurfaceTriangulation s = f.combinatorics();
        const SurfaceTriangulation r = s.reversed();
        for (int iter = 0; iter < 20; ++iter) {
            const RatVec u = testsupport::random_vec(rng, s.num_edges());
            const RatVec v = testsupport::random_vec(rng, s.num_edges());
            // carry the weights over by half-edge name, since edge numbering may differ
            RatVec ur(s.num_edges()), vr(s.num_edges());
            for (std::size_t h = 0; h < s.num_half_edges(); ++h) {
                const std::size_t hr = r.half_edge_index(s.half_edge_name(h));
                ur[r.edge(hr)] = u[s.edge(h)];
                vr[r.edge(hr)] = v[s.edge(h)];
            }
            EXPECT_EQ(triangle_form_sum(r, ur, vr), -triangle_form_sum(s, u, v));
        }
    }
}

TEST(EmbedWeights, Examples)
{
    const TrainTrack t = genus2_track();
    const DualComplex d = dual_complex(t);
    for (const Rat& x : embed_weights(t, d, RatVec(t.num_branches(), 0)))
        EXPECT_EQ(x, 0);
    EXPECT_THROW(embed_weights(t, d, indicator(t.num_branches(), 0)), DomainError);
}

TEST(CyclePairing, MatchesThurstonFormOnOrientedTrack)
{
    const TrainTrack t = flat_track(lshape_h2());
    ASSERT_TRUE(track_orientation(t).has_value());
    const RatMat b = weight_space_basis(t);
    bool some_nonzero = false;
    for (const auto& u : b) {
        EXPECT_EQ(cycle_pairing(t, u, u), 0);
        for (const auto& v : b) {
            EXPECT_EQ(cycle_pairing(t, u, v), thurston_form(t, u, v));
            some_nonzero = some_nonzero || thurston_form(t, u, v) != 0;
        }
    }
    EXPECT_TRUE(some_nonzero);
}

TEST(CyclePairingProperty, CarriedCyclesOnOrientedTracks)
{
    std::mt19937_64 rng(23);
    for (const FlatSurface& f : {lshape_h2(), hex_torus(), square_torus()}) {
        const TrainTrack t = flat_track(f);
        if (!track_orientation(t))
            continue;
        for (int iter = 0; iter < 20; ++iter) {
            const RatVec u = random_carried_weight(t, rng, 1 + static_cast<int>(rng() % 3));
            const RatVec v = random_carried_weight(t, rng, 1 + static_cast<int>(rng() % 3));
            ASSERT_TRUE(switch_check(t, u));
            EXPECT_EQ(cycle_pairing(t, u, v), thurston_form(t, u, v));
        }
    }
}

TEST(CyclePairing, UnorientableTrackIsRejected)
{
    const TrainTrack t = genus2_track();
    ASSERT_FALSE(track_orientation(t).has_value());
    const RatMat b = weight_space_basis(t);
    try {
        cycle_pairing(t, b[0], b[1]);
        FAIL() << "expected not-orientable";
    } catch (const DomainError& e) {
        EXPECT_EQ(e.invariant(), "not-orientable");
    }
}
