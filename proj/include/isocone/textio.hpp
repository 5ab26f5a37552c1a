#pragma once

// Line-oriented text formats for every model. Blank lines and lines starting
// with '#' are ignored; any other unknown directive is a ParseError.

#include "isocone/flat.hpp"
#include "isocone/lamtree.hpp"
#include "isocone/track.hpp"
#include "isocone/tri3.hpp"

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace isocone {

template <class T>
struct Parsed {
    T value;
    std::vector<std::string> notes;  // e.g. rationals reduced to lowest terms
};

using NamedWeights = std::vector<std::pair<std::string, Rat>>;

// vertex <id> / edge <id> <u> <v> <LexVec> / end <anchor>
Parsed<MetricTree> parse_tree(std::istream& in);
std::string serialize(const MetricTree& t);

// branch <id> / switch <id> in <a> <b> out <c> [ccw] / weight <branch> <q>
struct TrackInput {
    TrainTrack track;
    NamedWeights weights;
};
Parsed<TrackInput> parse_track(std::istream& in);
std::string serialize(const TrainTrack& t, const NamedWeights& weights = {});

// triangle <id> <e0> <e1> <e2> / glue <e> <e'>
Parsed<SurfaceTriangulation> parse_surface(std::istream& in);
std::string serialize(const SurfaceTriangulation& s);

// kind translation|half-translation / triangle <id> <e0> <e1> <e2> /
// vector <e> <re> <im> / glue <e> <e'> [neg|pos]
Parsed<FlatSurface> parse_flat(std::istream& in);
std::string serialize(const FlatSurface& s);

// tet <id> / glue <t1>.<f1> <t2>.<f2> <xyz> / switch <t.f> out <k> / weight <edge> <q>
struct ManifoldInput {
    Triangulation3 manifold;
    BoundaryTrack track;
    NamedWeights weights;
};
Parsed<ManifoldInput> parse_manifold(std::istream& in);
std::string serialize(const ManifoldInput& m);

// tangent <name> followed by delta <half-edge> <re> <im> lines
struct NamedTangent {
    std::string name;
    PeriodTangent tangent;
};
Parsed<std::vector<NamedTangent>> parse_tangents(std::istream& in, const FlatSurface& s);
std::string serialize(const FlatSurface& s, const std::vector<NamedTangent>& tangents);

// Boundary weights ordered by boundary edge, from weight lines keyed by edge label.
RatVec boundary_weights(const Triangulation3& m, const NamedWeights& w);

} // namespace isocone
