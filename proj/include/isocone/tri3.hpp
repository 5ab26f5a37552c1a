#pragma once

// Oriented tetrahedral complexes with boundary, the forms Ω_Σ and Ω_{Δ_M},
// four-point weight subspaces and the isotropic boundary cone.

#include "isocone/linalg.hpp"
#include "isocone/surface.hpp"
#include "isocone/track.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace isocone {

// Local edges of a tetrahedron in the order 01, 02, 03, 12, 13, 23.
std::size_t local_edge(int i, int j);
inline constexpr std::array<std::array<int, 2>, 6> kLocalEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Boundary orientation of face f (opposite vertex f) of a positive tetrahedron.
inline constexpr std::array<std::array<int, 3>, 4> kFaceOrder{{{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}};

// Opposite pairs {e,e'}, {f,f'}, {g,g'} as local edges, labelled so that
// e, f, g run around face 3 in its boundary orientation.
inline constexpr std::array<std::array<std::size_t, 2>, 3> kOppositePairs{{{1, 4}, {3, 2}, {0, 5}}};

std::array<std::array<std::size_t, 2>, 3> opposite_pairs();

// Ω_Σ(u, v) = −½ (dE∧dF + dF∧dG + dG∧dE) with E = e + e' etc.
Rat tet_form(const std::array<Rat, 6>& u, const std::array<Rat, 6>& v);

// Σ over the four boundary faces of the triangle form.
Rat tet_boundary_form(const std::array<Rat, 6>& u, const std::array<Rat, 6>& v);

using ChoiceVector = std::vector<int>;  // per tetrahedron: 1 (E = F), 2 (F = G) or 3 (G = E)

class Triangulation3 {
public:
    struct Gluing {
        std::size_t t1;
        int f1;
        std::size_t t2;
        int f2;
        std::array<int, 3> images;  // images in t2 of face f1's vertices, in increasing order
    };

    std::size_t add_tet(const std::string& id);
    void glue(std::size_t t1, int f1, std::size_t t2, int f2, std::array<int, 3> images);

    // Edge and vertex classes, boundary surface and its components.
    void finalize();

    std::size_t num_tets() const { return names_.size(); }
    const std::string& tet_name(std::size_t t) const { return names_[t]; }
    std::size_t tet_index(const std::string& id) const;
    const std::vector<Gluing>& gluings() const { return gluings_; }

    std::size_t num_edges() const { return edge_label_.size(); }
    std::size_t num_vertices() const { return num_vertices_; }
    std::size_t edge_class(std::size_t t, std::size_t local) const { return edge_class_[6 * t + local]; }
    std::array<std::size_t, 6> tet_edges(std::size_t t) const;
    const std::string& edge_label(std::size_t c) const { return edge_label_[c]; }

    const SurfaceTriangulation& boundary() const { return boundary_; }
    std::pair<std::size_t, int> boundary_face(std::size_t tri) const { return boundary_faces_[tri]; }
    std::size_t boundary_triangle(const std::string& id) const;
    // Edge class of boundary surface edge e.
    std::size_t boundary_edge_class(std::size_t e) const { return boundary_edge_class_[e]; }
    bool is_torus_component(std::size_t component) const { return torus_[component]; }
    bool boundary_edge_on_torus(std::size_t e) const;
    bool all_boundary_tori() const;

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
    std::vector<Gluing> gluings_;
    std::vector<std::array<std::optional<std::size_t>, 4>> glued_;  // gluing index per face

    std::vector<std::size_t> edge_class_;
    std::vector<std::string> edge_label_;
    std::size_t num_vertices_ = 0;
    SurfaceTriangulation boundary_;
    std::vector<std::pair<std::size_t, int>> boundary_faces_;
    std::map<std::string, std::size_t> boundary_index_;
    std::vector<std::size_t> boundary_edge_class_;
    std::vector<bool> torus_;
};

struct EdgeClassReport {
    std::size_t num_edges = 0, num_vertices = 0, boundary_components = 0;
    std::vector<std::size_t> members;  // number of tetrahedron edges in each class
    std::vector<bool> torus;           // per boundary component
};

EdgeClassReport validate(const Triangulation3& m);

std::array<Rat, 6> local_weights(const Triangulation3& m, std::size_t t, const RatVec& w);

Rat omega_M(const Triangulation3& m, const RatVec& u, const RatVec& v);

RatVec restrict(const Triangulation3& m, const RatVec& w);

// Rows of the per-tetrahedron equalities named by c and of the torus-zero constraints.
RatMat w4_equations(const Triangulation3& m, const ChoiceVector& c);
RatVec choice_equation(const Triangulation3& m, std::size_t t, int choice);
RatMat torus_equations(const Triangulation3& m);

RatMat w4_subspace(const Triangulation3& m, const ChoiceVector& c);

// For each tetrahedron, the choices whose pair equality w satisfies.
// w lies in W₄ iff every entry is nonempty.
template <class T>
std::vector<std::vector<int>> w4_member(const Triangulation3& m, const std::vector<T>& w)
{
    std::vector<std::vector<int>> out(m.num_tets());
    for (std::size_t t = 0; t < m.num_tets(); ++t) {
        const auto edges = m.tet_edges(t);
        std::array<T, 3> sums;
        for (std::size_t p = 0; p < 3; ++p) {
            sums[p] = w[edges[kOppositePairs[p][0]]];
            sums[p] += w[edges[kOppositePairs[p][1]]];
        }
        for (int c = 1; c <= 3; ++c)
            if (sums[c - 1] == sums[c % 3])
                out[t].push_back(c);
    }
    return out;
}

template <class T>
bool in_w4(const Triangulation3& m, const std::vector<T>& w)
{
    for (const auto& s : w4_member(m, w))
        if (s.empty())
            return false;
    return true;
}

bool isotropic(const Triangulation3& m, const RatMat& basis);
bool isotropy_check(const Triangulation3& m, const ChoiceVector& c);

// A train track on the boundary given by the outgoing side of each boundary
// triangle. Torus components carry no track.
struct BoundaryTrack {
    std::map<std::string, int> out;  // boundary triangle id -> side index
};

// The track with one branch per non-torus boundary edge, plus coordinate maps.
struct BoundaryTrackData {
    TrainTrack track;
    std::vector<std::size_t> boundary_edge_of_branch;
    std::vector<std::optional<std::size_t>> branch_of_boundary_edge;
};

BoundaryTrackData boundary_train_track(const Triangulation3& m, const BoundaryTrack& bt);

struct ConeComponent {
    RatMat span;                     // canonical basis over branch coordinates
    std::vector<std::size_t> active; // branches not identically zero on the span
    auto operator<=>(const ConeComponent&) const = default;
};

struct PLCone {
    std::vector<ConeComponent> components;
    std::size_t choices_examined = 0;   // leaves plus pruned prefixes
    Rat coverage = 0;                   // fraction of 3^T choice vectors represented
    std::size_t weight_space_dim = 0;
};

struct ConeOptions {
    std::optional<std::size_t> sample;  // number of random choice vectors; nullopt = all
    std::uint64_t seed = 0;
};

PLCone cone(const Triangulation3& m, const BoundaryTrack& bt, const ConeOptions& opt = {});

// Component of the cone for a single choice vector.
ConeComponent cone_component(const Triangulation3& m, const BoundaryTrackData& d, const ChoiceVector& c);

// ω_th vanishes on every pair of spanning vectors.
bool component_isotropic(const BoundaryTrackData& d, const ConeComponent& c);

struct MemberResult {
    bool member = false;
    std::string reason;      // "nonnegative", "switch", "torus" or "infeasible" when not a member
    RatVec witness;          // weight on every edge class
    ChoiceVector choices;
    std::size_t nodes = 0;   // search nodes visited
};

// w over the boundary surface edges.
MemberResult member(const Triangulation3& m, const BoundaryTrack& bt, const RatVec& w);

struct ProductTriangulation {
    Triangulation3 manifold;
    // For each half-edge of the surface, the matching half-edge of the
    // boundary surface on the top (same orientation) and bottom copy.
    std::vector<std::size_t> top_half_edge, bottom_half_edge;
    std::vector<std::size_t> top_triangle, bottom_triangle;
};

ProductTriangulation product_triangulation(const SurfaceTriangulation& s);

// Boundary track on both copies induced by a track whose outgoing side in
// surface triangle t is out_slot[t].
BoundaryTrack product_boundary_track(const ProductTriangulation& p, const std::vector<int>& out_slot);

} // namespace isocone
