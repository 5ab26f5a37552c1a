#include "isocone/tri3.hpp"

#include "isocone/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace isocone {

namespace {

// Union-find carrying the orientation of each element relative to its root.
struct ParityUnionFind {
    std::vector<std::size_t> parent;
    std::vector<int> parity;

    explicit ParityUnionFind(std::size_t n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }

    std::pair<std::size_t, int> find(std::size_t x)
    {
        int p = 0;
        std::size_t r = x;
        while (parent[r] != r) {
            p ^= parity[r];
            r = parent[r];
        }
        // Path compression with parity bookkeeping.
        int q = p;
        while (parent[x] != x) {
            const std::size_t next = parent[x];
            const int px = parity[x];
            parent[x] = r;
            parity[x] = q;
            q ^= px;
            x = next;
        }
        return {r, p};
    }

    // Returns false if a and b are already joined with the other parity.
    bool unite(std::size_t a, std::size_t b, int rel)
    {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb)
            return (pa ^ pb) == rel;
        parent[ra] = rb;
        parity[ra] = pa ^ pb ^ rel;
        return true;
    }
};

std::array<int, 3> face_vertices(int f)
{
    std::array<int, 3> v{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != f)
            v[k++] = i;
    return v;
}

bool odd_permutation(const std::array<int, 4>& p)
{
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j])
                ++inv;
    return inv % 2 == 1;
}

Rat wedge(const Rat& u1, const Rat& u2, const Rat& v1, const Rat& v2)
{
    return u1 * v2 - u2 * v1;
}

RatMat switch_rows(const TrainTrack& t)
{
    RatMat rows;
    for (const Switch& s : t.switches()) {
        RatVec r(t.num_branches());
        r[s.a] += 1;
        r[s.b] += 1;
        r[s.c] -= 1;
        rows.push_back(std::move(r));
    }
    return rows;
}

ConeComponent component_from_subspace(const Triangulation3& m, const BoundaryTrackData& d, const RatMat& v)
{
    const std::size_t nb = d.track.num_branches();
    RatMat restricted;
    for (const RatVec& row : v) {
        RatVec r(nb);
        for (std::size_t b = 0; b < nb; ++b)
            r[b] = row[m.boundary_edge_class(d.boundary_edge_of_branch[b])];
        restricted.push_back(std::move(r));
    }
    ConeComponent c;
    c.span = intersect_kernel(span_basis(std::move(restricted)), switch_rows(d.track));
    for (std::size_t b = 0; b < nb; ++b)
        for (const RatVec& row : c.span)
            if (row[b] != 0) {
                c.active.push_back(b);
                break;
            }
    return c;
}

} // namespace

std::size_t local_edge(int i, int j)
{
    if (i > j)
        std::swap(i, j);
    for (std::size_t k = 0; k < 6; ++k)
        if (kLocalEdges[k][0] == i && kLocalEdges[k][1] == j)
            return k;
    throw DomainError("structure", "not a tetrahedron edge");
}

std::array<std::array<std::size_t, 2>, 3> opposite_pairs()
{
    return kOppositePairs;
}

Rat tet_form(const std::array<Rat, 6>& u, const std::array<Rat, 6>& v)
{
    std::array<Rat, 3> U, V;
    for (std::size_t p = 0; p < 3; ++p) {
        U[p] = u[kOppositePairs[p][0]] + u[kOppositePairs[p][1]];
        V[p] = v[kOppositePairs[p][0]] + v[kOppositePairs[p][1]];
    }
    Rat s = 0;
    for (std::size_t p = 0; p < 3; ++p)
        s += wedge(U[p], U[(p + 1) % 3], V[p], V[(p + 1) % 3]);
    return -s / 2;
}

Rat tet_boundary_form(const std::array<Rat, 6>& u, const std::array<Rat, 6>& v)
{
    Rat s = 0;
    for (const auto& face : kFaceOrder)
        for (int k = 0; k < 3; ++k) {
            const std::size_t e = local_edge(face[k], face[(k + 1) % 3]);
            const std::size_t f = local_edge(face[(k + 1) % 3], face[(k + 2) % 3]);
            s += wedge(u[e], u[f], v[e], v[f]);
        }
    return -s / 2;
}

std::size_t Triangulation3::add_tet(const std::string& id)
{
    if (index_.count(id))
        throw DomainError("structure", "duplicate tetrahedron '" + id + "'");
    index_[id] = names_.size();
    names_.push_back(id);
    glued_.emplace_back();
    return names_.size() - 1;
}

std::size_t Triangulation3::tet_index(const std::string& id) const
{
    auto it = index_.find(id);
    if (it == index_.end())
        throw DomainError("structure", "unknown tetrahedron '" + id + "'");
    return it->second;
}

void Triangulation3::glue(std::size_t t1, int f1, std::size_t t2, int f2, std::array<int, 3> images)
{
    if (t1 >= num_tets() || t2 >= num_tets() || f1 < 0 || f1 > 3 || f2 < 0 || f2 > 3)
        throw DomainError("structure", "gluing refers to a missing face");
    if (t1 == t2 && f1 == f2)
        throw DomainError("structure", "face glued to itself");
    if (glued_[t1][f1] || glued_[t2][f2])
        throw DomainError("structure", "face glued twice (" + names_[t1] + "." + std::to_string(f1) + ", "
                                           + names_[t2] + "." + std::to_string(f2) + ")");
    std::array<int, 3> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != face_vertices(f2))
        throw DomainError("structure", "gluing permutation does not map onto face " + std::to_string(f2));
    std::array<int, 4> perm{};
    perm[f1] = f2;
    const auto fv = face_vertices(f1);
    for (int i = 0; i < 3; ++i)
        perm[fv[i]] = images[i];
    if (!odd_permutation(perm))
        throw DomainError("orientation", "gluing of " + names_[t1] + "." + std::to_string(f1) + " to " + names_[t2]
                                             + "." + std::to_string(f2) + " preserves orientation");
    glued_[t1][f1] = gluings_.size();
    glued_[t2][f2] = gluings_.size();
    gluings_.push_back({t1, f1, t2, f2, images});
}

void Triangulation3::finalize()
{
    const std::size_t T = num_tets();
    ParityUnionFind edges(6 * T);
    std::vector<std::size_t> vparent(4 * T);
    std::iota(vparent.begin(), vparent.end(), 0);
    std::function<std::size_t(std::size_t)> vfind = [&](std::size_t x) {
        return vparent[x] == x ? x : vparent[x] = vfind(vparent[x]);
    };
    for (const Gluing& g : gluings_) {
        std::array<int, 4> perm{};
        perm[g.f1] = g.f2;
        const auto fv = face_vertices(g.f1);
        for (int i = 0; i < 3; ++i) {
            perm[fv[i]] = g.images[i];
            vparent[vfind(4 * g.t1 + fv[i])] = vfind(4 * g.t2 + g.images[i]);
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const int a = fv[i], b = fv[j];
                const int rel = perm[a] > perm[b] ? 1 : 0;
                if (!edges.unite(6 * g.t1 + local_edge(a, b), 6 * g.t2 + local_edge(perm[a], perm[b]), rel))
                    throw DomainError("orientation", "an edge is identified with itself reversed");
            }
    }

    edge_class_.assign(6 * T, kNone);
    edge_label_.clear();
    std::map<std::size_t, std::size_t> roots;
    for (std::size_t x = 0; x < 6 * T; ++x) {
        auto [r, p] = edges.find(x);
        auto [it, fresh] = roots.emplace(r, edge_label_.size());
        if (fresh)
            edge_label_.push_back(names_[x / 6] + ":" + std::to_string(kLocalEdges[x % 6][0])
                                  + std::to_string(kLocalEdges[x % 6][1]));
        edge_class_[x] = it->second;
    }
    std::set<std::size_t> vroots;
    for (std::size_t x = 0; x < 4 * T; ++x)
        vroots.insert(vfind(x));
    num_vertices_ = vroots.size();

    boundary_ = SurfaceTriangulation();
    boundary_faces_.clear();
    boundary_index_.clear();
    // class -> (boundary half-edge, direction relative to the class)
    std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> sides;
    for (std::size_t t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            if (glued_[t][f])
                continue;
            const std::string id = names_[t] + "." + std::to_string(f);
            const std::size_t tri = boundary_.add_triangle(id, {id + ".0", id + ".1", id + ".2"});
            boundary_index_[id] = tri;
            boundary_faces_.push_back({t, f});
            for (int k = 0; k < 3; ++k) {
                const int a = kFaceOrder[f][k], b = kFaceOrder[f][(k + 1) % 3];
                const std::size_t node = 6 * t + local_edge(a, b);
                const int dir = (a > b ? 1 : 0) ^ edges.find(node).second;
                sides[edge_class_[node]].push_back({3 * tri + k, dir});
            }
        }
    for (const auto& [c, list] : sides) {
        if (list.size() != 2 || list[0].second == list[1].second)
            throw DomainError("structure", "edge " + edge_label_[c] + " lies in " + std::to_string(list.size())
                                               + " boundary faces without opposite orientations");
        boundary_.glue(list[0].first, list[1].first);
    }
    boundary_.finalize();
    boundary_edge_class_.assign(boundary_.num_edges(), kNone);
    for (const auto& [c, list] : sides)
        boundary_edge_class_[boundary_.edge(list[0].first)] = c;
    torus_.assign(boundary_.num_components(), false);
    for (std::size_t comp = 0; comp < boundary_.num_components(); ++comp)
        torus_[comp] = boundary_.component_euler_characteristic(comp) == 0;
}

std::array<std::size_t, 6> Triangulation3::tet_edges(std::size_t t) const
{
    std::array<std::size_t, 6> e{};
    for (std::size_t k = 0; k < 6; ++k)
        e[k] = edge_class_[6 * t + k];
    return e;
}

std::size_t Triangulation3::boundary_triangle(const std::string& id) const
{
    auto it = boundary_index_.find(id);
    if (it == boundary_index_.end())
        throw DomainError("structure", "'" + id + "' is not a boundary face");
    return it->second;
}

bool Triangulation3::boundary_edge_on_torus(std::size_t e) const
{
    return torus_[boundary_.component(SurfaceTriangulation::tri(boundary_.edge_rep(e)))];
}

bool Triangulation3::all_boundary_tori() const
{
    return std::all_of(torus_.begin(), torus_.end(), [](bool b) { return b; });
}

EdgeClassReport validate(const Triangulation3& m)
{
    if (m.boundary().num_triangles() == 0)
        throw DomainError("empty-boundary", "the complex has no boundary faces");
    EdgeClassReport r;
    r.num_edges = m.num_edges();
    r.num_vertices = m.num_vertices();
    r.boundary_components = m.boundary().num_components();
    r.members.assign(m.num_edges(), 0);
    for (std::size_t t = 0; t < m.num_tets(); ++t)
        for (std::size_t c : m.tet_edges(t))
            ++r.members[c];
    for (std::size_t c = 0; c < r.boundary_components; ++c)
        r.torus.push_back(m.is_torus_component(c));
    return r;
}

std::array<Rat, 6> local_weights(const Triangulation3& m, std::size_t t, const RatVec& w)
{
    std::array<Rat, 6> out;
    const auto e = m.tet_edges(t);
    for (std::size_t k = 0; k < 6; ++k)
        out[k] = w[e[k]];
    return out;
}

Rat omega_M(const Triangulation3& m, const RatVec& u, const RatVec& v)
{
    if (u.size() != m.num_edges() || v.size() != m.num_edges())
        throw DomainError("dimension", "weights must have one value per edge class");
    Rat s = 0;
    for (std::size_t t = 0; t < m.num_tets(); ++t)
        s += tet_form(local_weights(m, t, u), local_weights(m, t, v));
    return s;
}

RatVec restrict(const Triangulation3& m, const RatVec& w)
{
    if (w.size() != m.num_edges())
        throw DomainError("dimension", "weights must have one value per edge class");
    RatVec out(m.boundary().num_edges());
    for (std::size_t e = 0; e < out.size(); ++e)
        out[e] = w[m.boundary_edge_class(e)];
    return out;
}

RatVec choice_equation(const Triangulation3& m, std::size_t t, int choice)
{
    if (choice < 1 || choice > 3)
        throw DomainError("dimension", "choice must be 1, 2 or 3");
    RatVec row(m.num_edges());
    const auto e = m.tet_edges(t);
    const auto& p = kOppositePairs[choice - 1];
    const auto& q = kOppositePairs[choice % 3];
    row[e[p[0]]] += 1;
    row[e[p[1]]] += 1;
    row[e[q[0]]] -= 1;
    row[e[q[1]]] -= 1;
    return row;
}

RatMat torus_equations(const Triangulation3& m)
{
    RatMat rows;
    for (std::size_t e = 0; e < m.boundary().num_edges(); ++e)
        if (m.boundary_edge_on_torus(e)) {
            RatVec r(m.num_edges());
            r[m.boundary_edge_class(e)] = 1;
            rows.push_back(std::move(r));
        }
    return rows;
}

RatMat w4_equations(const Triangulation3& m, const ChoiceVector& c)
{
    if (c.size() != m.num_tets())
        throw DomainError("dimension", "choice vector needs one entry per tetrahedron");
    RatMat rows = torus_equations(m);
    for (std::size_t t = 0; t < c.size(); ++t)
        rows.push_back(choice_equation(m, t, c[t]));
    return rows;
}

RatMat w4_subspace(const Triangulation3& m, const ChoiceVector& c)
{
    return kernel(w4_equations(m, c), m.num_edges());
}

bool isotropic(const Triangulation3& m, const RatMat& basis)
{
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (omega_M(m, basis[i], basis[j]) != 0)
                return false;
    return true;
}

bool isotropy_check(const Triangulation3& m, const ChoiceVector& c)
{
    return isotropic(m, w4_subspace(m, c));
}

BoundaryTrackData boundary_train_track(const Triangulation3& m, const BoundaryTrack& bt)
{
    const SurfaceTriangulation& s = m.boundary();
    for (const auto& [id, k] : bt.out) {
        const std::size_t tri = m.boundary_triangle(id);
        if (m.is_torus_component(s.component(tri)))
            throw DomainError("structure", "boundary triangle " + id + " lies on a torus and carries no switch");
        if (k < 0 || k > 2)
            throw DomainError("structure", "outgoing side of " + id + " must be 0, 1 or 2");
    }
    BoundaryTrackData d;
    d.branch_of_boundary_edge.assign(s.num_edges(), std::nullopt);
    for (std::size_t e = 0; e < s.num_edges(); ++e) {
        if (m.boundary_edge_on_torus(e))
            continue;
        d.branch_of_boundary_edge[e] = d.track.add_branch(m.edge_label(m.boundary_edge_class(e)));
        d.boundary_edge_of_branch.push_back(e);
    }
    for (std::size_t tri = 0; tri < s.num_triangles(); ++tri) {
        if (m.is_torus_component(s.component(tri)))
            continue;
        auto it = bt.out.find(s.triangle_name(tri));
        if (it == bt.out.end())
            throw DomainError("structure", "boundary triangle " + s.triangle_name(tri) + " has no switch");
        const int k = it->second;
        auto name = [&](int side) {
            return d.track.branches()[*d.branch_of_boundary_edge[s.edge(3 * tri + (side % 3))]];
        };
        d.track.add_switch(s.triangle_name(tri), name(k + 1), name(k + 2), name(k), true);
    }
    return d;
}

ConeComponent cone_component(const Triangulation3& m, const BoundaryTrackData& d, const ChoiceVector& c)
{
    return component_from_subspace(m, d, w4_subspace(m, c));
}

bool component_isotropic(const BoundaryTrackData& d, const ConeComponent& c)
{
    for (std::size_t i = 0; i < c.span.size(); ++i)
        for (std::size_t j = i + 1; j < c.span.size(); ++j)
            if (thurston_form(d.track, c.span[i], c.span[j]) != 0)
                return false;
    return true;
}

PLCone cone(const Triangulation3& m, const BoundaryTrack& bt, const ConeOptions& opt)
{
    if (m.boundary().num_triangles() == 0 || m.all_boundary_tori())
        throw DomainError("boundary-tori", "the cone needs a boundary component that is not a torus");
    const BoundaryTrackData d = boundary_train_track(m, bt);
    const std::size_t T = m.num_tets();
    PLCone out;
    out.weight_space_dim = weight_space_basis(d.track).size();
    std::set<ConeComponent> comps;
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), 3, T);

    if (!opt.sample) {
        mpz_class covered = 0;
        std::function<void(std::size_t, const RatMat&)> dfs = [&](std::size_t t, const RatMat& v) {
            ConeComponent c = component_from_subspace(m, d, v);
            // Further equalities only shrink the span, so a zero span ends the prefix.
            if (t == T || c.span.empty()) {
                mpz_class leaves;
                mpz_ui_pow_ui(leaves.get_mpz_t(), 3, T - t);
                covered += leaves;
                ++out.choices_examined;
                comps.insert(std::move(c));
                return;
            }
            for (int choice = 1; choice <= 3; ++choice)
                dfs(t + 1, intersect_kernel(v, {choice_equation(m, t, choice)}));
        };
        dfs(0, kernel(torus_equations(m), m.num_edges()));
        out.coverage = Rat(covered, total);
    } else {
        if (*opt.sample == 0)
            throw DomainError("dimension", "sample size must be at least 1");
        std::mt19937_64 rng(opt.seed);
        std::set<ChoiceVector> seen;
        for (std::size_t i = 0; i < *opt.sample; ++i) {
            ChoiceVector c(T);
            for (auto& x : c)
                x = static_cast<int>(rng() % 3) + 1;
            if (!seen.insert(c).second)
                continue;
            comps.insert(cone_component(m, d, c));
            ++out.choices_examined;
        }
        out.coverage = Rat(mpz_class(seen.size()), total);
    }
    out.coverage.canonicalize();
    out.components.assign(comps.begin(), comps.end());
    return out;
}

MemberResult member(const Triangulation3& m, const BoundaryTrack& bt, const RatVec& w)
{
    const SurfaceTriangulation& s = m.boundary();
    if (w.size() != s.num_edges())
        throw DomainError("dimension", "boundary weights need one value per boundary edge");
    const BoundaryTrackData d = boundary_train_track(m, bt);
    MemberResult res;
    for (const Rat& x : w)
        if (x < 0) {
            res.reason = "nonnegative";
            return res;
        }
    RatVec wb(d.track.num_branches());
    for (std::size_t b = 0; b < wb.size(); ++b)
        wb[b] = w[d.boundary_edge_of_branch[b]];
    if (!switch_check(d.track, wb)) {
        res.reason = "switch";
        return res;
    }
    for (std::size_t e = 0; e < s.num_edges(); ++e)
        if (m.boundary_edge_on_torus(e) && w[e] != 0) {
            res.reason = "torus";
            return res;
        }

    // Interior edge classes are the unknowns; boundary classes are fixed.
    const std::size_t E = m.num_edges(), T = m.num_tets();
    std::vector<std::optional<Rat>> fixed(E);
    for (std::size_t e = 0; e < s.num_edges(); ++e)
        fixed[m.boundary_edge_class(e)] = w[e];
    std::vector<std::size_t> unknown(E, kNone);
    std::size_t n = 0;
    for (std::size_t c = 0; c < E; ++c)
        if (!fixed[c])
            unknown[c] = n++;
    std::vector<std::array<std::pair<RatVec, Rat>, 3>> eqs(T);
    for (std::size_t t = 0; t < T; ++t)
        for (int choice = 1; choice <= 3; ++choice) {
            const RatVec row = choice_equation(m, t, choice);
            RatVec coeffs(n);
            Rat rhs = 0;
            for (std::size_t c = 0; c < E; ++c) {
                if (row[c] == 0)
                    continue;
                if (fixed[c])
                    rhs -= row[c] * *fixed[c];
                else
                    coeffs[unknown[c]] = row[c];
            }
            eqs[t][choice - 1] = {std::move(coeffs), std::move(rhs)};
        }

    // Depth-first search with propagation: tetrahedra whose equality is
    // already implied are settled for free, those with one consistent choice
    // are forced, and branching happens on the most constrained one.
    ChoiceVector choice(T, 0);
    std::function<bool(AffineSystem)> solve = [&](AffineSystem sys) -> bool {
        ++res.nodes;
        std::vector<std::size_t> assigned;
        auto undo = [&] {
            for (std::size_t t : assigned)
                choice[t] = 0;
        };
        for (;;) {
            bool progress = false;
            std::size_t best = kNone;
            std::vector<int> best_opts;
            for (std::size_t t = 0; t < T; ++t) {
                if (choice[t])
                    continue;
                std::vector<int> opts;
                int implied = 0;
                for (int c = 1; c <= 3 && !implied; ++c) {
                    const auto f = sys.fit(eqs[t][c - 1].first, eqs[t][c - 1].second);
                    if (f == AffineSystem::Fit::Implied)
                        implied = c;
                    else if (f == AffineSystem::Fit::Independent)
                        opts.push_back(c);
                }
                if (implied) {
                    choice[t] = implied;
                    assigned.push_back(t);
                    progress = true;
                } else if (opts.empty()) {
                    undo();
                    return false;
                } else if (opts.size() == 1) {
                    sys.add(eqs[t][opts[0] - 1].first, eqs[t][opts[0] - 1].second);
                    choice[t] = opts[0];
                    assigned.push_back(t);
                    progress = true;
                } else if (best == kNone || opts.size() < best_opts.size()) {
                    best = t;
                    best_opts = opts;
                }
            }
            if (progress)
                continue;
            if (best == kNone) {
                RatVec x = sys.particular_solution();
                res.witness.assign(E, 0);
                for (std::size_t c = 0; c < E; ++c)
                    res.witness[c] = fixed[c] ? *fixed[c] : x[unknown[c]];
                return true;
            }
            for (int c : best_opts) {
                AffineSystem next = sys;
                next.add(eqs[best][c - 1].first, eqs[best][c - 1].second);
                choice[best] = c;
                if (solve(std::move(next)))
                    return true;
            }
            choice[best] = 0;
            undo();
            return false;
        }
    };
    if (solve(AffineSystem(n))) {
        res.member = true;
        res.choices = choice;
    } else {
        res.reason = "infeasible";
    }
    return res;
}

ProductTriangulation product_triangulation(const SurfaceTriangulation& s)
{
    if (!s.closed())
        throw DomainError("structure", "product needs a closed surface");
    const std::size_t F = s.num_triangles(), E = s.num_edges();

    // Orient every edge so that no triangle is oriented cyclically.
    std::vector<int> dir(E, 0);
    std::vector<std::vector<std::size_t>> tris_of_edge(E);
    for (std::size_t h = 0; h < 3 * F; ++h)
        tris_of_edge[s.edge(h)].push_back(SurfaceTriangulation::tri(h));
    auto side = [&](std::size_t h) { return dir[s.edge(h)] * s.edge_sign(h); };  // +1: corner i -> i+1
    auto acyclic = [&](std::size_t t) {
        const int a = side(3 * t), b = side(3 * t + 1), c = side(3 * t + 2);
        return a == 0 || b == 0 || c == 0 || !(a == b && b == c);
    };
    std::function<bool(std::size_t)> orient = [&](std::size_t e) {
        if (e == E)
            return true;
        for (int d : {1, -1}) {
            dir[e] = d;
            bool ok = true;
            for (std::size_t t : tris_of_edge[e])
                ok = ok && acyclic(t);
            if (ok && orient(e + 1))
                return true;
        }
        dir[e] = 0;
        return false;
    };
    if (!orient(0))
        throw DomainError("structure", "no edge orientation without cyclic triangles");

    // A prism vertex is corner * 2 + level. Corners sit at (0,0), (1,0), (0,1).
    using Label = int;
    auto coords = [](Label l) {
        const int c = l / 2;
        return std::array<int, 3>{c == 1 ? 1 : 0, c == 2 ? 1 : 0, l % 2};
    };
    auto det = [&](const std::array<Label, 4>& v) {
        std::array<std::array<int, 3>, 3> r{};
        const auto o = coords(v[0]);
        for (int i = 0; i < 3; ++i) {
            const auto p = coords(v[i + 1]);
            for (int k = 0; k < 3; ++k)
                r[i][k] = p[k] - o[k];
        }
        return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
             + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
    };

    ProductTriangulation out;
    Triangulation3& m = out.manifold;
    std::vector<std::array<std::array<Label, 4>, 3>> prism(F);
    for (std::size_t t = 0; t < F; ++t) {
        std::array<int, 3> wins{};
        for (int i = 0; i < 3; ++i)
            ++wins[side(3 * t + i) > 0 ? i : (i + 1) % 3];
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return wins[a] > wins[b]; });
        const int p = order[0], q = order[1], r = order[2];
        prism[t] = {{{2 * p, 2 * q, 2 * r, 2 * r + 1},
                     {2 * p, 2 * q, 2 * q + 1, 2 * r + 1},
                     {2 * p, 2 * p + 1, 2 * q + 1, 2 * r + 1}}};
        for (std::size_t k = 0; k < 3; ++k) {
            if (det(prism[t][k]) < 0)
                std::swap(prism[t][k][0], prism[t][k][1]);
            m.add_tet(s.triangle_name(t) + "_" + std::to_string(k + 1));
        }
    }

    auto local_of = [&](std::size_t t, std::size_t k, Label l) {
        for (int i = 0; i < 4; ++i)
            if (prism[t][k][i] == l)
                return i;
        return -1;
    };
    auto face_labels = [&](std::size_t t, std::size_t k, int f) {
        std::array<Label, 3> ls{};
        int j = 0;
        for (int i = 0; i < 4; ++i)
            if (i != f)
                ls[j++] = prism[t][k][i];
        return ls;
    };
    // Glue face f of tet (t, k) to tet (t2, k2) with labels mapped by map.
    auto glue_faces = [&](std::size_t t, std::size_t k, int f, std::size_t t2, std::size_t k2,
                          const std::function<Label(Label)>& map) {
        std::array<int, 3> images{};
        std::set<int> target;
        const auto ls = face_labels(t, k, f);
        for (int i = 0; i < 3; ++i) {
            images[i] = local_of(t2, k2, map(ls[i]));
            target.insert(images[i]);
        }
        int f2 = 0;
        while (target.count(f2))
            ++f2;
        m.glue(3 * t + k, f, 3 * t2 + k2, f2, images);
    };
    auto find_face = [&](std::size_t t, const std::set<Label>& want, std::size_t& k, int& f) {
        for (k = 0; k < 3; ++k)
            for (f = 0; f < 4; ++f) {
                const auto ls = face_labels(t, k, f);
                if (std::set<Label>(ls.begin(), ls.end()) == want)
                    return true;
            }
        return false;
    };

    // T1, T2 share one face, as do T2, T3.
    const std::function<Label(Label)> same = [](Label l) { return l; };
    for (std::size_t t = 0; t < F; ++t)
        for (std::size_t k = 0; k + 1 < 3; ++k)
            for (int f = 0; f < 4; ++f) {
                const auto ls = face_labels(t, k, f);
                const std::set<Label> want(ls.begin(), ls.end());
                for (int g = 0; g < 4; ++g) {
                    const auto other = face_labels(t, k + 1, g);
                    if (std::set<Label>(other.begin(), other.end()) == want)
                        glue_faces(t, k, f, t, k + 1, same);
                }
            }

    for (std::size_t h = 0; h < 3 * F; ++h) {
        const std::size_t g = s.partner(h);
        if (g < h)
            continue;
        const std::size_t t = SurfaceTriangulation::tri(h), t2 = SurfaceTriangulation::tri(g);
        const int i = static_cast<int>(SurfaceTriangulation::slot(h)), j = static_cast<int>(SurfaceTriangulation::slot(g));
        const std::function<Label(Label)> map = [&](Label l) {
            const int c = l / 2 == i ? (j + 1) % 3 : j;
            return 2 * c + l % 2;
        };
        const int c0 = i, c1 = (i + 1) % 3;
        for (std::size_t k = 0; k < 3; ++k)
            for (int f = 0; f < 4; ++f) {
                const auto ls = face_labels(t, k, f);
                if (std::all_of(ls.begin(), ls.end(), [&](Label l) { return l / 2 == c0 || l / 2 == c1; })) {
                    std::set<Label> want;
                    for (Label l : ls)
                        want.insert(map(l));
                    std::size_t k2 = 0;
                    int f2 = 0;
                    if (!find_face(t2, want, k2, f2))
                        throw DomainError("structure", "prism walls do not match");
                    glue_faces(t, k, f, t2, k2, map);
                }
            }
    }
    m.finalize();

    const SurfaceTriangulation& b = m.boundary();
    out.top_half_edge.assign(3 * F, kNone);
    out.bottom_half_edge.assign(3 * F, kNone);
    out.top_triangle.assign(F, kNone);
    out.bottom_triangle.assign(F, kNone);
    for (std::size_t tri = 0; tri < b.num_triangles(); ++tri) {
        const auto [tet, f] = m.boundary_face(tri);
        const std::size_t t = tet / 3, k = tet % 3;
        const int level = prism[t][k][kFaceOrder[f][0]] % 2;
        (level ? out.top_triangle : out.bottom_triangle)[t] = tri;
        for (int side = 0; side < 3; ++side) {
            const int ca = prism[t][k][kFaceOrder[f][side]] / 2;
            const int cb = prism[t][k][kFaceOrder[f][(side + 1) % 3]] / 2;
            const std::size_t h = cb == (ca + 1) % 3 ? 3 * t + ca : 3 * t + cb;
            (level ? out.top_half_edge : out.bottom_half_edge)[h] = 3 * tri + side;
        }
    }
    return out;
}

BoundaryTrack product_boundary_track(const ProductTriangulation& p, const std::vector<int>& out_slot)
{
    const SurfaceTriangulation& b = p.manifold.boundary();
    BoundaryTrack bt;
    for (std::size_t t = 0; t < out_slot.size(); ++t) {
        const std::size_t h = 3 * t + static_cast<std::size_t>(out_slot[t]);
        bt.out[b.triangle_name(p.top_triangle[t])] = static_cast<int>(SurfaceTriangulation::slot(p.top_half_edge[h]));
        bt.out[b.triangle_name(p.bottom_triangle[t])] =
            static_cast<int>(SurfaceTriangulation::slot(p.bottom_half_edge[h]));
    }
    return bt;
}

} // namespace isocone
