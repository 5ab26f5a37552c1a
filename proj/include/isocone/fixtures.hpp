#pragma once

// Small named inputs used by the tests and shipped through `fixtures <name>`.

#include "isocone/textio.hpp"

#include <array>
#include <string>
#include <vector>

namespace isocone {

// Two triangles, unit square; every edge is horizontal, vertical or diagonal.
FlatSurface square_torus();
// Centrally symmetric hexagon with opposite sides glued; two marked points.
FlatSurface hex_torus();
// Three unit squares in an L; genus 2 with one cone point of angle 6π.
FlatSurface lshape_h2();
// Two unit squares glued into a sphere with four π cone points.
FlatSurface pillowcase();
// Scaling and horizontal-shear tangents of lshape_h2.
std::vector<NamedTangent> lshape_tangents();

// Maximal track on the genus-2 surface (not orientable): 12 switches, 18 branches.
TrainTrack genus2_track();

MetricTree small_tree();

// Tetrahedra given by global vertex labels, glued along faces with equal label sets.
Triangulation3 from_labels(const std::vector<std::array<int, 4>>& tets);

ManifoldInput single_tet();
ManifoldInput two_tets();
// Five face pairings leaving a connected genus-2 boundary of six triangles.
ManifoldInput four_tets();
// Cone on the boundary of a tetrahedron: a ball with spherical boundary.
ManifoldInput stellar_ball();

// genus2_track's dual surface times an interval, with the track on both ends.
struct ProductFixture {
    TrainTrack track;
    ProductTriangulation product;
    BoundaryTrack boundary_track;
};
ProductFixture g2_product();

std::vector<std::string> fixture_names();
// Serialized fixture; DomainError "unknown-fixture" for other names.
std::string fixture_text(const std::string& name);

} // namespace isocone
