#include "isocone/flat.hpp"

#include "isocone/error.hpp"

#include <algorithm>
#include <numeric>

namespace isocone {

namespace {

Cx divide(const Cx& a, const Cx& b)
{
    const Rat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

// Re(conj(a) b)
Rat re_conj_mul(const Cx& a, const Cx& b)
{
    return a.re * b.re + a.im * b.im;
}

// ½ Im(conj(u) v)
Rat signed_area(const Cx& u, const Cx& v)
{
    return (u.re * v.im - u.im * v.re) / 2;
}

// 0 on the upper half plane including the positive real axis, 1 elsewhere.
int half_plane(const Cx& d)
{
    return d.im > 0 || (d.im == 0 && d.re > 0) ? 0 : 1;
}

std::size_t next_he(std::size_t h) { return SurfaceTriangulation::next(h); }
std::size_t prev_he(std::size_t h) { return SurfaceTriangulation::prev(h); }

// vec(h) = edge_factor(h) * vec(edge_rep(edge(h)))
int edge_factor(const FlatSurface& s, const SurfaceTriangulation& c, std::size_t h)
{
    return c.edge_rep(c.edge(h)) == h || s.pos(h) ? 1 : -1;
}

} // namespace

std::string to_string(const Cx& z)
{
    return to_string(z.re) + " " + to_string(z.im);
}

std::size_t FlatSurface::add_triangle(const std::string& id, const std::array<std::string, 3>& half_edges)
{
    for (const auto& n : half_edges)
        for (const auto& existing : he_names_)
            if (existing == n)
                throw DomainError("structure", "half-edge '" + n + "' used twice");
    tri_names_.push_back(id);
    for (const auto& n : half_edges) {
        he_names_.push_back(n);
        vec_.emplace_back();
        partner_.push_back(kNone);
        pos_.push_back(false);
    }
    return tri_names_.size() - 1;
}

std::size_t FlatSurface::half_edge_index(const std::string& name) const
{
    for (std::size_t h = 0; h < he_names_.size(); ++h)
        if (he_names_[h] == name)
            return h;
    throw DomainError("structure", "unknown half-edge '" + name + "'");
}

void FlatSurface::set_vector(const std::string& half_edge, const Cx& v)
{
    vec_[half_edge_index(half_edge)] = v;
}

void FlatSurface::glue(const std::string& a, const std::string& b, bool pos)
{
    const std::size_t h = half_edge_index(a), g = half_edge_index(b);
    if (h == g || partner_[h] != kNone || partner_[g] != kNone)
        throw DomainError("structure", "invalid gluing of '" + a + "' and '" + b + "'");
    partner_[h] = g;
    partner_[g] = h;
    pos_[h] = pos_[g] = pos;
}

SurfaceTriangulation FlatSurface::combinatorics() const
{
    SurfaceTriangulation c;
    for (std::size_t t = 0; t < num_triangles(); ++t)
        c.add_triangle(tri_names_[t], {he_names_[3 * t], he_names_[3 * t + 1], he_names_[3 * t + 2]});
    for (std::size_t h = 0; h < partner_.size(); ++h)
        if (partner_[h] != kNone && h < partner_[h])
            c.glue(h, partner_[h]);
    c.finalize();
    return c;
}

void FlatSurface::flip(std::size_t h)
{
    const std::size_t g = partner_[h];
    if (g == kNone || g / 3 == h / 3)
        throw DomainError("flip", "edge does not separate two distinct triangles");
    const std::size_t A = h / 3, B = g / 3;
    const std::size_t b = next_he(h), c = prev_he(h), g1 = next_he(g), g2 = prev_he(g);
    const Cx r = vec_[h] + vec_[b];
    const Rat s = pos_[h] ? -1 : 1;
    const Cx x = Cx(s) * vec_[g1];
    // New layout: A = (g1, x->r, c), B = (g2, b, r->x), both in the frame of A.
    const std::array<std::size_t, 6> from{g1, h, c, g2, b, g};
    const std::array<std::size_t, 6> to{3 * A, 3 * A + 1, 3 * A + 2, 3 * B, 3 * B + 1, 3 * B + 2};
    std::vector<std::size_t> where(vec_.size());
    std::iota(where.begin(), where.end(), 0);
    for (std::size_t k = 0; k < 6; ++k)
        where[from[k]] = to[k];

    std::vector<Cx> nvec(vec_.size());
    std::vector<std::size_t> npartner(vec_.size());
    std::vector<bool> npos(vec_.size());
    std::vector<std::string> nnames(vec_.size());
    for (std::size_t y = 0; y < vec_.size(); ++y) {
        nvec[where[y]] = vec_[y];
        npartner[where[y]] = partner_[y] == kNone ? kNone : where[partner_[y]];
        npos[where[y]] = pos_[y];
        nnames[where[y]] = he_names_[y];
    }
    if (s < 0)
        for (std::size_t y : {where[g1], where[g2]}) {
            nvec[y] = -nvec[y];
            npos[y] = !npos[y];
            npos[npartner[y]] = !npos[npartner[y]];
        }
    const std::size_t nh = where[h], ng = where[g];
    nvec[nh] = r - x;
    nvec[ng] = x - r;
    npos[nh] = npos[ng] = false;
    if (signed_area(nvec[3 * A], nvec[3 * A + 1]) <= 0 || signed_area(nvec[3 * B], nvec[3 * B + 1]) <= 0)
        throw DomainError("flip", "quadrilateral is not strictly convex");
    vec_ = std::move(nvec);
    partner_ = std::move(npartner);
    pos_ = std::move(npos);
    he_names_ = std::move(nnames);
}

void FlatSurface::scale(const Cx& c)
{
    for (Cx& v : vec_)
        v = c * v;
}

void FlatSurface::shear(const Rat& s)
{
    for (Cx& v : vec_)
        v.re += s * v.im;
}

FlatInfo validate(const FlatSurface& s)
{
    const std::size_t n = s.num_half_edges();
    for (std::size_t h = 0; h < n; ++h)
        if (s.partner(h) == kNone)
            throw DomainError("structure", "half-edge '" + s.half_edge_name(h) + "' is not glued");
    for (std::size_t t = 0; t < s.num_triangles(); ++t) {
        if (!(s.vec(3 * t) + s.vec(3 * t + 1) + s.vec(3 * t + 2)).is_zero())
            throw DomainError("closure", "sides of triangle '" + s.triangle_name(t) + "' do not sum to zero");
        if (signed_area(s.vec(3 * t), s.vec(3 * t + 1)) <= 0)
            throw DomainError("nonpositive-area", "triangle '" + s.triangle_name(t) + "' is not positively oriented");
    }
    for (std::size_t h = 0; h < n; ++h) {
        const std::size_t g = s.partner(h);
        if (s.pos(h) && s.kind == FlatKind::Translation)
            throw DomainError("gluing-sign", "translation surfaces glue with negated vectors only");
        if (s.vec(g) != (s.pos(h) ? s.vec(h) : -s.vec(h)))
            throw DomainError("gluing-sign", "vectors of '" + s.half_edge_name(h) + "' and '" + s.half_edge_name(g)
                                                 + "' do not match their gluing");
    }

    FlatInfo info;
    std::vector<bool> seen(n, false);
    for (std::size_t h0 = 0; h0 < n; ++h0) {
        if (seen[h0])
            continue;
        // Rotate counterclockwise around the tail of h0, tracking the sign
        // that carries each triangle's frame into the frame of h0.
        long changes = 0;
        int sign = 1;
        std::size_t h = h0;
        Cx dir = s.vec(h0);
        do {
            seen[h] = true;
            const std::size_t p = prev_he(h);
            if (s.pos(p))
                sign = -sign;
            h = s.partner(p);
            const Cx nd = sign > 0 ? s.vec(h) : -s.vec(h);
            if (half_plane(nd) != half_plane(dir))
                ++changes;
            dir = nd;
        } while (h != h0);
        if (s.kind == FlatKind::Translation && changes % 2 != 0)
            throw DomainError("cone-angle", "cone angle is not a multiple of 2π");
        info.cone_angles.push_back(changes);
        if (changes == 2)
            ++info.marked_points;
        else
            info.symbol.multiplicities.push_back(changes - 2);
    }
    std::sort(info.symbol.multiplicities.rbegin(), info.symbol.multiplicities.rend());
    info.symbol.epsilon = s.kind == FlatKind::Translation ? 1 : -1;
    const SurfaceTriangulation c = s.combinatorics();
    info.genus = c.genus();
    const long total = std::accumulate(info.symbol.multiplicities.begin(), info.symbol.multiplicities.end(), 0L);
    if (total != 4 * info.genus - 4)
        throw DomainError("cone-angle", "multiplicities do not sum to 4g-4");
    return info;
}

std::string to_string(const Symbol& s)
{
    std::string out = "(";
    for (std::size_t i = 0; i < s.multiplicities.size(); ++i)
        out += (i ? "," : "") + std::to_string(s.multiplicities[i]);
    return out + ")" + (s.epsilon > 0 ? "+" : "-");
}

Rat total_area(const FlatSurface& s)
{
    Rat a = 0;
    for (std::size_t t = 0; t < s.num_triangles(); ++t)
        a += signed_area(s.vec(3 * t), s.vec(3 * t + 1));
    return a;
}

Rat incircle(const FlatSurface& s, std::size_t h)
{
    const std::size_t g = s.partner(h);
    if (g == kNone || g / 3 == h / 3)
        return 0;
    const Cx q = s.vec(h);
    const Cx r = q + s.vec(next_he(h));
    const Cx x = s.pos(h) ? -s.vec(next_he(g)) : s.vec(next_he(g));
    // Rows p - x, q - x, r - x with p at the origin.
    const std::array<Cx, 3> rows{-x, q - x, r - x};
    auto lift = [](const Cx& z) -> Rat { return z.re * z.re + z.im * z.im; };
    const auto& a = rows[0];
    const auto& b = rows[1];
    const auto& c = rows[2];
    return a.re * (b.im * lift(c) - lift(b) * c.im) - a.im * (b.re * lift(c) - lift(b) * c.re)
         + lift(a) * (b.re * c.im - b.im * c.re);
}

bool is_delaunay(const FlatSurface& s)
{
    for (std::size_t h = 0; h < s.num_half_edges(); ++h)
        if (incircle(s, h) > 0)
            return false;
    return true;
}

DelaunayResult delaunay(const FlatSurface& s)
{
    DelaunayResult res{s, 0, 0};
    FlatSurface& f = res.surface;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t h = 0; h < f.num_half_edges(); ++h)
            if (incircle(f, h) > 0) {
                f.flip(h);
                ++res.flips;
                changed = true;
                break;
            }
    }
    for (std::size_t h = 0; h < f.num_half_edges(); ++h)
        if (h < f.partner(h) && f.partner(h) / 3 != h / 3 && incircle(f, h) == 0)
            ++res.cocircular;
    return res;
}

RatVec heights(const FlatSurface& s)
{
    const SurfaceTriangulation c = s.combinatorics();
    RatVec out(c.num_edges());
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        const Rat& im = s.vec(c.edge_rep(e)).im;
        if (im == 0)
            throw DomainError("horizontal-edge", "edge '" + s.half_edge_name(c.edge_rep(e))
                                                     + "' is horizontal; rotate the surface first");
        out[e] = abs(im);
    }
    return out;
}

FlatSurface rotate(const FlatSurface& s, const Cx& c)
{
    if (c.is_zero())
        throw DomainError("degenerate", "rotation by zero");
    FlatSurface r = s;
    r.scale(c);
    return r;
}

Cx find_rotation(const FlatSurface& s)
{
    auto clean = [&](const Cx& c) {
        for (std::size_t h = 0; h < s.num_half_edges(); ++h)
            if ((c * s.vec(h)).im == 0)
                return false;
        return true;
    };
    for (long q = 1;; ++q) {
        std::vector<long> ps;
        if (q == 1)
            ps = {0, 1, -1};
        else
            for (long p = 1; p < q; ++p)
                if (std::gcd(p, q) == 1) {
                    ps.push_back(p);
                    ps.push_back(-p);
                }
        for (long p : ps) {
            const Cx c{Rat(q), Rat(p)};
            if (clean(c))
                return c;
        }
    }
}

TrainTrack dual_track(const FlatSurface& s)
{
    if (!is_delaunay(s))
        throw DomainError("not-delaunay", "the dual track needs a Delaunay triangulation");
    const RatVec h = heights(s);
    const SurfaceTriangulation c = s.combinatorics();
    TrainTrack t;
    for (std::size_t e = 0; e < c.num_edges(); ++e)
        t.add_branch(s.half_edge_name(c.edge_rep(e)));
    for (std::size_t tri = 0; tri < s.num_triangles(); ++tri) {
        std::size_t top = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (h[c.edge(3 * tri + i)] > h[c.edge(3 * tri + top)])
                top = i;
        auto name = [&](std::size_t i) { return t.branches()[c.edge(3 * tri + i % 3)]; };
        t.add_switch(s.triangle_name(tri), name(top + 1), name(top + 2), name(top), true);
    }
    return t;
}

Cx tangent_on(const FlatSurface& s, const SurfaceTriangulation& c, const PeriodTangent& t, std::size_t h)
{
    const Cx& d = t.delta[c.edge(h)];
    return edge_factor(s, c, h) > 0 ? d : -d;
}

bool is_valid_tangent(const FlatSurface& s, const PeriodTangent& t)
{
    const SurfaceTriangulation c = s.combinatorics();
    if (t.delta.size() != c.num_edges())
        return false;
    for (std::size_t tri = 0; tri < s.num_triangles(); ++tri)
        if (!(tangent_on(s, c, t, 3 * tri) + tangent_on(s, c, t, 3 * tri + 1) + tangent_on(s, c, t, 3 * tri + 2))
                 .is_zero())
            return false;
    return true;
}

RatMat tangent_basis(const FlatSurface& s)
{
    const SurfaceTriangulation c = s.combinatorics();
    RatMat rows;
    for (std::size_t tri = 0; tri < s.num_triangles(); ++tri) {
        RatVec r(c.num_edges());
        for (std::size_t i = 0; i < 3; ++i)
            r[c.edge(3 * tri + i)] += edge_factor(s, c, 3 * tri + i);
        rows.push_back(std::move(r));
    }
    return kernel(rows, c.num_edges());
}

PeriodTangent scaling_tangent(const FlatSurface& s)
{
    const SurfaceTriangulation c = s.combinatorics();
    PeriodTangent t;
    for (std::size_t e = 0; e < c.num_edges(); ++e)
        t.delta.push_back(s.vec(c.edge_rep(e)));
    return t;
}

PeriodTangent times(const Cx& c, const PeriodTangent& t)
{
    PeriodTangent out;
    for (const Cx& d : t.delta)
        out.delta.push_back(c * d);
    return out;
}

RatVec dF(const FlatSurface& s, const PeriodTangent& t)
{
    const SurfaceTriangulation c = s.combinatorics();
    if (t.delta.size() != c.num_edges())
        throw DomainError("dimension", "tangent needs one value per edge");
    RatVec out(c.num_edges());
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        const Rat& im = s.vec(c.edge_rep(e)).im;
        if (im == 0)
            throw DomainError("horizontal-edge", "edge '" + s.half_edge_name(c.edge_rep(e)) + "' is horizontal");
        out[e] = im > 0 ? t.delta[e].im : Rat(-t.delta[e].im);
    }
    return out;
}

Rat omega_thurston(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2)
{
    return thurston_form(dual_track(s), dF(s, t1), dF(s, t2));
}

Rat omega_homological(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2)
{
    if (s.kind != FlatKind::Translation)
        throw DomainError("half-translation", "use the orientation double cover");
    const SurfaceTriangulation c = s.combinatorics();
    RatVec f1(c.num_edges()), f2(c.num_edges());
    for (std::size_t e = 0; e < c.num_edges(); ++e) {
        f1[e] = t1.delta[e].im;
        f2[e] = t2.delta[e].im;
    }
    return SurfaceHomology(c).intersect(f1, f2);
}

Rat omega_homological_cover(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2)
{
    if (s.kind == FlatKind::Translation)
        return omega_homological(s, t1, t2);
    const DoubleCover cover = orientation_double_cover(s);
    return omega_homological(cover.surface, lift_tangent(cover, s, t1), lift_tangent(cover, s, t2)) / 2;
}

Rat omega_hessian(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2)
{
    // Imaginary part of the polarization of the area Σ ½ Im(conj(u) v).
    const SurfaceTriangulation c = s.combinatorics();
    Rat sum = 0;
    for (std::size_t t = 0; t < s.num_triangles(); ++t) {
        const Cx u1 = tangent_on(s, c, t1, 3 * t), v1 = tangent_on(s, c, t1, 3 * t + 1);
        const Cx u2 = tangent_on(s, c, t2, 3 * t), v2 = tangent_on(s, c, t2, 3 * t + 1);
        sum += re_conj_mul(u1, v2) - re_conj_mul(v1, u2);
    }
    return sum / 4;
}

std::complex<double> kahler_pairing_numeric(const FlatSurface& s, const PeriodTangent& t1, const PeriodTangent& t2,
                                            int depth)
{
    using C = std::complex<double>;
    const SurfaceTriangulation c = s.combinatorics();
    auto toc = [](const Cx& z) { return C(z.re.get_d(), z.im.get_d()); };
    C total = 0;
    for (std::size_t t = 0; t < s.num_triangles(); ++t) {
        const Cx u = s.vec(3 * t), v = s.vec(3 * t + 1);
        const Cx det = u * v.conj() - u.conj() * v;
        auto coeffs = [&](const PeriodTangent& p) {
            const Cx du = tangent_on(s, c, p, 3 * t), dv = tangent_on(s, c, p, 3 * t + 1);
            return std::pair{divide(du * v.conj() - u.conj() * dv, det), divide(u * dv - v * du, det)};
        };
        const auto [a1, b1] = coeffs(t1);
        const auto [a2, b2] = coeffs(t2);
        const C A1 = toc(a1), B1 = toc(b1), A2 = toc(a2), B2 = toc(b2);
        auto integrand = [&](C) { return A1 * std::conj(A2) - B1 * std::conj(B2); };

        // Midpoint rule on the 4^depth triangles of repeated edge-midpoint subdivision.
        std::vector<std::array<C, 3>> pieces{{C(0), toc(u), toc(u + v)}};
        for (int d = 0; d < depth; ++d) {
            std::vector<std::array<C, 3>> next;
            next.reserve(4 * pieces.size());
            for (const auto& p : pieces) {
                const C m01 = (p[0] + p[1]) / 2.0, m12 = (p[1] + p[2]) / 2.0, m20 = (p[2] + p[0]) / 2.0;
                next.push_back({p[0], m01, m20});
                next.push_back({m01, p[1], m12});
                next.push_back({m20, m12, p[2]});
                next.push_back({m01, m12, m20});
            }
            pieces = std::move(next);
        }
        for (const auto& p : pieces) {
            const C e1 = p[1] - p[0], e2 = p[2] - p[0];
            const double area = 0.5 * (e1.real() * e2.imag() - e1.imag() * e2.real());
            total += integrand((p[0] + p[1] + p[2]) / 3.0) * area;
        }
    }
    return total;
}

DoubleCover orientation_double_cover(const FlatSurface& s)
{
    DoubleCover d;
    const std::size_t F = s.num_triangles(), n = s.num_half_edges();
    d.trivial = s.kind == FlatKind::Translation;
    d.surface.kind = FlatKind::Translation;
    for (int sheet = 0; sheet < 2; ++sheet)
        for (std::size_t t = 0; t < F; ++t) {
            const std::string tag = "#" + std::to_string(sheet);
            d.surface.add_triangle(s.triangle_name(t) + tag, {s.half_edge_name(3 * t) + tag,
                                                              s.half_edge_name(3 * t + 1) + tag,
                                                              s.half_edge_name(3 * t + 2) + tag});
        }
    for (std::size_t x = 0; x < 2 * n; ++x) {
        const std::size_t h = x % n;
        const int sheet = static_cast<int>(x / n);
        d.surface.set_vector(d.surface.half_edge_name(x), sheet ? -s.vec(h) : s.vec(h));
        d.base.push_back(h);
        d.sheet.push_back(sheet);
        d.involution.push_back((x + n) % (2 * n));
    }
    for (std::size_t x = 0; x < 2 * n; ++x) {
        const std::size_t h = x % n, g = s.partner(h);
        const std::size_t sheet = x / n, other = s.pos(h) ? 1 - sheet : sheet;
        const std::size_t y = other * n + g;
        if (x < y)
            d.surface.glue(d.surface.half_edge_name(x), d.surface.half_edge_name(y));
    }
    return d;
}

PeriodTangent lift_tangent(const DoubleCover& cover, const FlatSurface& base, const PeriodTangent& t)
{
    const SurfaceTriangulation bc = base.combinatorics();
    const SurfaceTriangulation cc = cover.surface.combinatorics();
    PeriodTangent out;
    for (std::size_t e = 0; e < cc.num_edges(); ++e) {
        const std::size_t r = cc.edge_rep(e);
        const Cx d = tangent_on(base, bc, t, cover.base[r]);
        out.delta.push_back(cover.sheet[r] ? -d : d);
    }
    return out;
}

} // namespace isocone
