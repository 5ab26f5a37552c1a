#pragma once

// Generic train tracks, their weight spaces and symplectic forms, and the dual
// triangulation Δ_τ with one triangle per switch.

#include "isocone/linalg.hpp"
#include "isocone/surface.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace isocone {

struct Switch {
    std::string id;
    std::size_t a = 0, b = 0, c = 0;  // incoming a, b; outgoing c (branch indices)
    bool ccw = true;                  // (a, b, c) is positively oriented; otherwise (b, a, c) is
};

class TrainTrack {
public:
    std::size_t add_branch(const std::string& id);
    void add_switch(const std::string& id, const std::string& a, const std::string& b, const std::string& c,
                    bool ccw);

    // Every branch end attaches to exactly one switch slot.
    void validate() const;

    std::size_t num_branches() const { return branches_.size(); }
    const std::vector<std::string>& branches() const { return branches_; }
    const std::vector<Switch>& switches() const { return switches_; }
    std::size_t branch_index(const std::string& id) const;

private:
    std::vector<std::string> branches_;
    std::map<std::string, std::size_t> index_;
    std::vector<Switch> switches_;
};

bool switch_check(const TrainTrack& t, const RatVec& w);

// Canonical basis of W(τ).
RatMat weight_space_basis(const TrainTrack& t);

Rat thurston_form(const TrainTrack& t, const RatVec& w1, const RatVec& w2);

struct DualComplex {
    SurfaceTriangulation surface;
    std::vector<std::size_t> edge_of_branch;
    std::vector<std::size_t> branch_of_edge;
};

// Triangle per switch with sides in the positive order of its branches;
// the two ends of each branch are glued.
DualComplex dual_complex(const TrainTrack& t);

// As dual_complex, but every complementary region must be a trigon.
DualComplex dual_triangulation(const TrainTrack& t);

// Σ_σ −½ (de∧df + df∧dg + dg∧de) with (e, f, g) the sides of σ in order.
Rat triangle_form_sum(const SurfaceTriangulation& s, const RatVec& u, const RatVec& v);

RatVec embed_weights(const TrainTrack& t, const DualComplex& d, const RatVec& w);

// Per-switch sign: +1 if the branches a, b point into the switch and c out,
// -1 for the reverse. nullopt when no consistent orientation exists.
std::optional<std::vector<int>> track_orientation(const TrainTrack& t);

// Flow across the dual edges carried by the oriented weighted track.
RatVec weight_flow(const TrainTrack& t, const DualComplex& d, const std::vector<int>& orientation,
                   const RatVec& w);

// Intersection number of the cycles carried by w1 and w2.
Rat cycle_pairing(const TrainTrack& t, const RatVec& w1, const RatVec& w2);

} // namespace isocone
