#include "isocone/linalg.hpp"

#include "isocone/error.hpp"

namespace isocone {

Rat dot(const RatVec& a, const RatVec& b)
{
    if (a.size() != b.size())
        throw DomainError("dimension", "dot of lengths " + std::to_string(a.size()) + " and "
                                           + std::to_string(b.size()));
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    return s;
}

std::vector<std::size_t> rref(RatMat& m)
{
    std::vector<std::size_t> pivots;
    if (m.empty())
        return pivots;
    const std::size_t ncols = m.front().size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
        std::size_t p = r;
        while (p < m.size() && m[p][col] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[r], m[p]);
        const Rat inv = Rat(1) / m[r][col];
        for (std::size_t j = col; j < ncols; ++j)
            m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][col] == 0)
                continue;
            const Rat f = m[i][col];
            for (std::size_t j = col; j < ncols; ++j)
                if (m[r][j] != 0)
                    m[i][j] -= f * m[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    m.resize(r);
    return pivots;
}

std::size_t rank(RatMat m)
{
    return rref(m).size();
}

RatMat kernel(const RatMat& a, std::size_t ncols)
{
    RatMat m = a;
    for (const RatVec& row : m)
        if (row.size() != ncols)
            throw DomainError("dimension", "kernel: ragged matrix");
    std::vector<std::size_t> piv = rref(m);
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t p : piv)
        is_pivot[p] = true;
    RatMat basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        RatVec v(ncols);
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return span_basis(std::move(basis));
}

RatMat span_basis(RatMat rows)
{
    rref(rows);
    return rows;
}

RatMat intersect_kernel(const RatMat& rows, const RatMat& c)
{
    if (rows.empty())
        return {};
    // x = sum_i y_i rows[i]; c x = 0 becomes (c rows^T) y = 0.
    RatMat m(c.size(), RatVec(rows.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            m[i][j] = dot(c[i], rows[j]);
    RatMat ys = kernel(m, rows.size());
    RatMat out;
    const std::size_t n = rows.front().size();
    for (const RatVec& y : ys) {
        RatVec x(n);
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (y[j] != 0)
                for (std::size_t k = 0; k < n; ++k)
                    x[k] += y[j] * rows[j][k];
        out.push_back(std::move(x));
    }
    return span_basis(std::move(out));
}

void AffineSystem::reduce(RatVec& coeffs, Rat& rhs) const
{
    if (coeffs.size() != n_)
        throw DomainError("dimension", "equation has wrong number of coefficients");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::size_t p = pivots_[r];
        if (coeffs[p] == 0)
            continue;
        const Rat f = coeffs[p];
        for (std::size_t j = 0; j < n_; ++j)
            if (rows_[r][j] != 0)
                coeffs[j] -= f * rows_[r][j];
        rhs -= f * rhs_[r];
    }
}

AffineSystem::Fit AffineSystem::fit(RatVec coeffs, Rat rhs) const
{
    reduce(coeffs, rhs);
    for (const Rat& c : coeffs)
        if (c != 0)
            return Fit::Independent;
    return rhs == 0 ? Fit::Implied : Fit::Inconsistent;
}

bool AffineSystem::add(RatVec coeffs, Rat rhs)
{
    reduce(coeffs, rhs);
    std::size_t p = 0;
    while (p < n_ && coeffs[p] == 0)
        ++p;
    if (p == n_)
        return rhs == 0;
    const Rat inv = Rat(1) / coeffs[p];
    for (std::size_t j = p; j < n_; ++j)
        coeffs[j] *= inv;
    rhs *= inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][p] == 0)
            continue;
        const Rat f = rows_[r][p];
        for (std::size_t j = p; j < n_; ++j)
            if (coeffs[j] != 0)
                rows_[r][j] -= f * coeffs[j];
        rhs_[r] -= f * rhs;
    }
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(std::move(rhs));
    pivots_.push_back(p);
    return true;
}

RatVec AffineSystem::particular_solution() const
{
    RatVec x(n_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        x[pivots_[r]] = rhs_[r];
    return x;
}

} // namespace isocone
