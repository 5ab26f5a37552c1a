#pragma once

// Flat surfaces glued from rational triangles: validation and symbol, exact
// Delaunay flips, heights and the dual train track, period tangents and three
// exact evaluations of the symplectic pairing.

#include "isocone/linalg.hpp"
#include "isocone/surface.hpp"
#include "isocone/track.hpp"

#include <complex>
#include <string>
#include <vector>

namespace isocone {

struct Cx {
    Rat re, im;

    Cx() = default;
    Cx(Rat r, Rat i = 0) : re(std::move(r)), im(std::move(i)) {}

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
    Cx conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }
};

std::string to_string(const Cx& z);  // "re im"

enum class FlatKind { Translation, HalfTranslation };

// Half-edge h is side h % 3 of triangle h / 3, sides counterclockwise as in
// SurfaceTriangulation. vec(h) is the displacement along h in the frame of its
// triangle. A "neg" gluing has vec(g) = -vec(h); a "pos" gluing (half-translation
// only) has vec(g) = vec(h).
class FlatSurface {
public:
    FlatKind kind = FlatKind::Translation;

    std::size_t add_triangle(const std::string& id, const std::array<std::string, 3>& half_edges);
    void set_vector(const std::string& half_edge, const Cx& v);
    void glue(const std::string& h, const std::string& g, bool pos = false);

    std::size_t num_triangles() const { return vec_.size() / 3; }
    std::size_t num_half_edges() const { return vec_.size(); }
    const Cx& vec(std::size_t h) const { return vec_[h]; }
    std::size_t partner(std::size_t h) const { return partner_[h]; }
    bool pos(std::size_t h) const { return pos_[h]; }
    const std::string& triangle_name(std::size_t t) const { return tri_names_[t]; }
    const std::string& half_edge_name(std::size_t h) const { return he_names_[h]; }
    std::size_t half_edge_index(const std::string& name) const;

    // Underlying combinatorial surface; its half-edges and edges use the same indices.
    SurfaceTriangulation combinatorics() const;

    // Replace the diagonal h by the other diagonal of the quadrilateral formed
    // by its two triangles.
    void flip(std::size_t h);

    void scale(const Cx& c);
    void shear(const Rat& s);  // (x, y) -> (x + s y, y)

private:
    std::vector<Cx> vec_;
    std::vector<std::size_t> partner_;
    std::vector<bool> pos_;
    std::vector<std::string> tri_names_, he_names_;
};

struct Symbol {
    std::vector<long> multiplicities;  // weakly decreasing, zeros of the quadratic differential
    int epsilon = 1;
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct FlatInfo {
    Symbol symbol;
    long genus = 0;
    std::vector<long> cone_angles;  // per vertex, in multiples of π
    std::size_t marked_points = 0;
};

FlatInfo validate(const FlatSurface& s);

std::string to_string(const Symbol& s);

Rat total_area(const FlatSurface& s);

// > 0 when the apex of the triangle across h lies strictly inside the
// circumcircle of the triangle of h.
Rat incircle(const FlatSurface& s, std::size_t h);
bool is_delaunay(const FlatSurface& s);

struct DelaunayResult {
    FlatSurface surface;
    std::size_t flips = 0;
    std::size_t cocircular = 0;  // edges left with a zero incircle determinant
};

DelaunayResult delaunay(const FlatSurface& s);

// |Im| of every edge, indexed by edges of combinatorics().
RatVec heights(const FlatSurface& s);

FlatSurface rotate(const FlatSurface& s, const Cx& c);

// First multiplier q + p i, by increasing q then |p|, leaving no horizontal edge.
Cx find_rotation(const FlatSurface& s);

// Switch per triangle with the highest side outgoing; branch e is edge e.
TrainTrack dual_track(const FlatSurface& s);

// Perturbation of the period of each edge, in the frame of edge_rep(e).
struct PeriodTangent {
    std::vector<Cx> delta;
};

// δ of half-edge h in the frame of its own triangle.
Cx tangent_on(const FlatSurface& s, const SurfaceTriangulation& c, const PeriodTangent& t, std::size_t h);

bool is_valid_tangent(const FlatSurface& s, const PeriodTangent& t);

// Real basis of the tangents (the complex tangent space is its complex span).
RatMat tangent_basis(const FlatSurface& s);

PeriodTangent scaling_tangent(const FlatSurface& s);
PeriodTangent times(const Cx& c, const PeriodTangent& t);

// Derivative of heights along t.
RatVec dF(const FlatSurface& s, const PeriodTangent& t);

Rat omega_thurston(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2);
Rat omega_homological(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2);
// Half-translation surfaces: half the pairing of the lifts on the orientation double cover.
Rat omega_homological_cover(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2);
Rat omega_hessian(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2);

// Σ_σ ∫_σ (a₁ā₂ − b₁b̄₂) dA where the tangent acts on σ as z ↦ a z + b z̄,
// by midpoint quadrature over 4^depth subtriangles.
std::complex<double> kahler_pairing_numeric(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2,
                                            int depth);

struct DoubleCover {
    FlatSurface surface;
    std::vector<std::size_t> involution;  // on half-edges
    std::vector<std::size_t> base;        // half-edge of the base surface
    std::vector<int> sheet;               // per half-edge
    bool trivial = false;                 // translation input: two disjoint copies
};

DoubleCover orientation_double_cover(const FlatSurface& s);

PeriodTangent lift_tangent(const DoubleCover& cover, const FlatSurface& base, const PeriodTangent& t);

} // namespace isocone
