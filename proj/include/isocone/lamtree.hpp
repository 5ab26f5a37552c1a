#pragma once

// Finite trees with lengths in a lexicographically ordered Q^n.

#include "isocone/linalg.hpp"
#include "isocone/ordgroup.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isocone {

struct TreePoint {
    enum class Kind { Vertex, Edge, Ray };

    Kind kind = Kind::Vertex;
    std::string id;   // vertex id, or edge id for Kind::Edge; unused on the ray
    LexVec offset;    // from the edge's first endpoint, or the excess along the ray

    static TreePoint vertex(std::string v) { return {Kind::Vertex, std::move(v), {}}; }
    static TreePoint on_edge(std::string e, LexVec off) { return {Kind::Edge, std::move(e), std::move(off)}; }
    static TreePoint on_ray(LexVec excess) { return {Kind::Ray, {}, std::move(excess)}; }
};

class MetricTree {
public:
    struct Edge {
        std::string id;
        std::size_t u = 0, v = 0;
        LexVec length;
    };

    void add_vertex(const std::string& id);
    void add_edge(const std::string& id, const std::string& u, const std::string& v, LexVec length);
    void set_end(const std::string& anchor);

    // Checks connectivity, acyclicity, positive lengths and a common rank.
    void validate() const;

    std::size_t rank() const;
    std::size_t num_vertices() const { return names_.size(); }
    const std::vector<std::string>& vertex_ids() const { return names_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_index(const std::string& id) const;
    std::size_t edge_index(const std::string& id) const;
    std::optional<std::size_t> end_anchor() const { return anchor_; }

    // Edges along the unique path from a to b, in order.
    std::vector<std::size_t> path(std::size_t a, std::size_t b) const;
    LexVec vertex_distance(std::size_t a, std::size_t b) const;
    std::vector<std::vector<LexVec>> distance_matrix() const;

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> edge_index_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;  // (neighbour, edge)
    std::optional<std::size_t> anchor_;
};

using DistanceMatrix = std::vector<std::vector<LexVec>>;

LexVec distance(const MetricTree& t, const TreePoint& x, const TreePoint& y);

// Of d(x,y)+d(z,t), d(x,z)+d(y,t), d(x,t)+d(y,z) the two largest are equal.
bool four_point_check(const DistanceMatrix& d);

// Brute force over all 4-tuples; throws DomainError("not-a-metric") when the
// triangle inequality fails.
bool is_zero_hyperbolic(const DistanceMatrix& d);

// g maps vertex ids to vertex ids. Evaluated on vertices and edge midpoints.
LexVec min_displacement(const MetricTree& t, const std::map<std::string, std::string>& g);

// Lengths are mapped by the matrix m (rows = output coordinates).
MetricTree base_change(const MetricTree& t, const RatMat& m);

// Vertices whose distance to x has zero coordinates before the 1-based index
// k, with lengths truncated to coordinates k..n.
MetricTree subtree_at(const MetricTree& t, const std::string& x, std::size_t k);

Rat busemann(const MetricTree& t, const TreePoint& x);

// The point at distance s from x toward the end.
TreePoint push(const MetricTree& t, const TreePoint& x, const Rat& s);

// w(e) = d(f(u), f(v)) for each edge e = {u, v}.
std::vector<LexVec> weight_from_vertex_map(const MetricTree& t,
                                           const std::vector<std::size_t>& domain,
                                           const std::map<std::size_t, std::string>& f,
                                           const std::vector<std::pair<std::size_t, std::size_t>>& edges);

} // namespace isocone
