#pragma once

// Oriented triangulated surfaces built from half-edges, and a tree/cotree
// homology basis for intersection numbers of cellular cycles.

#include "isocone/linalg.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace isocone {

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Half-edge h belongs to triangle h / 3 at slot h % 3. Slots run
// counterclockwise, so slot i goes from corner i to corner i + 1. Two glued
// half-edges traverse their common edge in opposite directions.
class SurfaceTriangulation {
public:
    SurfaceTriangulation() = default;
    explicit SurfaceTriangulation(std::size_t num_triangles);

    std::size_t add_triangle(const std::string& id, const std::array<std::string, 3>& half_edges);
    void glue(std::size_t h, std::size_t g);
    void glue(const std::string& h, const std::string& g);

    // Computes edges and vertices; call after the last glue().
    void finalize();

    std::size_t num_triangles() const { return partner_.size() / 3; }
    std::size_t num_half_edges() const { return partner_.size(); }
    std::size_t num_edges() const { return edge_rep_.size(); }
    std::size_t num_vertices() const { return num_vertices_; }

    static std::size_t tri(std::size_t h) { return h / 3; }
    static std::size_t slot(std::size_t h) { return h % 3; }
    static std::size_t next(std::size_t h) { return h - h % 3 + (h % 3 + 1) % 3; }
    static std::size_t prev(std::size_t h) { return h - h % 3 + (h % 3 + 2) % 3; }

    std::size_t partner(std::size_t h) const { return partner_[h]; }   // kNone on the boundary
    std::size_t edge(std::size_t h) const { return edge_of_[h]; }
    int edge_sign(std::size_t h) const { return edge_rep_[edge_of_[h]] == h ? 1 : -1; }
    std::size_t edge_rep(std::size_t e) const { return edge_rep_[e]; }
    std::size_t tail(std::size_t h) const { return tail_[h]; }
    std::size_t head(std::size_t h) const { return tail_[next(h)]; }
    bool is_boundary_edge(std::size_t e) const { return partner_[edge_rep_[e]] == kNone; }
    bool closed() const;

    long euler_characteristic() const;
    std::size_t num_components() const { return num_components_; }
    std::size_t component(std::size_t triangle) const { return component_[triangle]; }
    long component_euler_characteristic(std::size_t c) const;
    // Genus of a closed connected surface.
    long genus() const;

    const std::string& triangle_name(std::size_t t) const { return tri_names_[t]; }
    const std::string& half_edge_name(std::size_t h) const { return he_names_[h]; }
    std::size_t half_edge_index(const std::string& name) const;

    // The same surface with every triangle's orientation reversed.
    SurfaceTriangulation reversed() const;

private:
    std::vector<std::size_t> partner_;
    std::vector<std::string> tri_names_, he_names_;
    std::map<std::string, std::size_t> he_index_;
    std::vector<std::size_t> edge_of_, edge_rep_, tail_, component_;
    std::size_t num_vertices_ = 0, num_components_ = 0;
};

// A 1-cycle transverse to the triangulation, given as a flow across each edge:
// a positive value crosses edge e from the triangle of edge_rep(e) to the
// triangle of its partner. The flow out of every triangle must vanish.
class SurfaceHomology {
public:
    explicit SurfaceHomology(const SurfaceTriangulation& s);

    std::size_t rank() const { return cotree_edges_.size(); }
    bool is_cycle(const RatVec& flow) const;

    // Algebraic intersection number of two transverse cycles.
    Rat intersect(const RatVec& flow1, const RatVec& flow2) const;

    // Intersection of a transverse cycle with the edge-path cycle of basis element l.
    Rat pair_with_primal(const RatVec& flow, std::size_t l) const;

    // Intersection matrix of the dual basis cycles.
    const RatMat& dual_matrix() const { return dual_; }

private:
    const SurfaceTriangulation* s_;
    std::vector<std::size_t> cotree_edges_;
    std::vector<std::vector<std::size_t>> primal_;   // half-edges traversed along their direction
    std::vector<std::vector<std::size_t>> dual_walk_; // half-edges crossed out of their triangle
    std::vector<Rat> primal_dual_sign_;
    RatMat dual_;
};

} // namespace isocone
