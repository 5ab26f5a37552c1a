#pragma once

// Exact linear algebra over Q: reduced echelon forms, kernels, span
// intersections and an incrementally extended affine system.

#include "isocone/ordgroup.hpp"

#include <cstddef>
#include <vector>

namespace isocone {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

Rat dot(const RatVec& a, const RatVec& b);

// Reduces m in place to reduced row echelon form, drops zero rows and returns
// the pivot column of each remaining row.
std::vector<std::size_t> rref(RatMat& m);

std::size_t rank(RatMat m);

// Canonical basis (RREF rows) of {x : a x = 0}, x in Q^ncols.
RatMat kernel(const RatMat& a, std::size_t ncols);

// Canonical basis (RREF rows) of the row span.
RatMat span_basis(RatMat rows);

// Canonical basis of span(rows) intersected with {x : c x = 0}.
RatMat intersect_kernel(const RatMat& rows, const RatMat& c);

// Rows of a linear system A x = b kept in reduced echelon form so equations
// can be added one at a time and inconsistency detected immediately.
class AffineSystem {
public:
    explicit AffineSystem(std::size_t nvars) : n_(nvars) {}

    std::size_t num_vars() const { return n_; }
    std::size_t rank() const { return rows_.size(); }

    // Returns false (and leaves the system unchanged) when the equation
    // contradicts the rows already present.
    bool add(RatVec coeffs, Rat rhs);

    enum class Fit { Inconsistent, Implied, Independent };
    // How the equation relates to the current rows, without adding it.
    Fit fit(RatVec coeffs, Rat rhs) const;

    // The solution with every free variable set to zero.
    RatVec particular_solution() const;

private:
    void reduce(RatVec& coeffs, Rat& rhs) const;

    std::size_t n_;
    RatMat rows_;
    RatVec rhs_;
    std::vector<std::size_t> pivots_;
};

} // namespace isocone
