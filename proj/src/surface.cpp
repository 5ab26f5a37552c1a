#include "isocone/surface.hpp"

#include "isocone/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace isocone {

namespace {

struct UnionFind {
    std::vector<std::size_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (p[x] != x)
            x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

} // namespace

SurfaceTriangulation::SurfaceTriangulation(std::size_t num_triangles)
    : partner_(3 * num_triangles, kNone)
{
    for (std::size_t t = 0; t < num_triangles; ++t) {
        tri_names_.push_back(std::to_string(t));
        for (int i = 0; i < 3; ++i) {
            he_names_.push_back(std::to_string(t) + "." + std::to_string(i));
            he_index_[he_names_.back()] = 3 * t + i;
        }
    }
}

std::size_t SurfaceTriangulation::add_triangle(const std::string& id, const std::array<std::string, 3>& half_edges)
{
    const std::size_t t = num_triangles();
    for (const auto& name : half_edges) {
        if (he_index_.count(name))
            throw DomainError("structure", "half-edge '" + name + "' used twice");
        he_index_[name] = he_names_.size();
        he_names_.push_back(name);
        partner_.push_back(kNone);
    }
    tri_names_.push_back(id);
    return t;
}

void SurfaceTriangulation::glue(std::size_t h, std::size_t g)
{
    if (h >= partner_.size() || g >= partner_.size())
        throw DomainError("structure", "gluing refers to a missing half-edge");
    if (h == g)
        throw DomainError("structure", "half-edge '" + he_names_[h] + "' glued to itself");
    if (partner_[h] != kNone || partner_[g] != kNone)
        throw DomainError("structure", "half-edge glued twice ('" + he_names_[h] + "', '" + he_names_[g] + "')");
    partner_[h] = g;
    partner_[g] = h;
}

void SurfaceTriangulation::glue(const std::string& h, const std::string& g)
{
    glue(half_edge_index(h), half_edge_index(g));
}

std::size_t SurfaceTriangulation::half_edge_index(const std::string& name) const
{
    auto it = he_index_.find(name);
    if (it == he_index_.end())
        throw DomainError("structure", "unknown half-edge '" + name + "'");
    return it->second;
}

void SurfaceTriangulation::finalize()
{
    const std::size_t n = partner_.size();
    edge_of_.assign(n, kNone);
    edge_rep_.clear();
    for (std::size_t h = 0; h < n; ++h) {
        if (edge_of_[h] != kNone)
            continue;
        edge_of_[h] = edge_rep_.size();
        if (partner_[h] != kNone)
            edge_of_[partner_[h]] = edge_rep_.size();
        edge_rep_.push_back(h);
    }

    // Index the tail point of each half-edge by the half-edge itself.
    UnionFind uf(n);
    for (std::size_t h = 0; h < n; ++h) {
        const std::size_t g = partner_[h];
        if (g == kNone || g < h)
            continue;
        uf.unite(h, next(g));
        uf.unite(next(h), g);
    }
    tail_.assign(n, kNone);
    std::map<std::size_t, std::size_t> label;
    for (std::size_t h = 0; h < n; ++h) {
        auto [it, fresh] = label.emplace(uf.find(h), label.size());
        tail_[h] = it->second;
    }
    num_vertices_ = label.size();

    UnionFind comp(num_triangles());
    for (std::size_t h = 0; h < n; ++h)
        if (partner_[h] != kNone)
            comp.unite(tri(h), tri(partner_[h]));
    component_.assign(num_triangles(), kNone);
    std::map<std::size_t, std::size_t> clabel;
    for (std::size_t t = 0; t < num_triangles(); ++t) {
        auto [it, fresh] = clabel.emplace(comp.find(t), clabel.size());
        component_[t] = it->second;
    }
    num_components_ = clabel.size();
}

bool SurfaceTriangulation::closed() const
{
    return std::none_of(partner_.begin(), partner_.end(), [](std::size_t p) { return p == kNone; });
}

long SurfaceTriangulation::euler_characteristic() const
{
    return static_cast<long>(num_vertices_) - static_cast<long>(num_edges())
         + static_cast<long>(num_triangles());
}

long SurfaceTriangulation::component_euler_characteristic(std::size_t c) const
{
    std::vector<bool> vseen(num_vertices_, false), eseen(num_edges(), false);
    long chi = 0;
    for (std::size_t h = 0; h < partner_.size(); ++h) {
        if (component_[tri(h)] != c)
            continue;
        if (slot(h) == 0)
            ++chi;
        if (!vseen[tail_[h]]) {
            vseen[tail_[h]] = true;
            ++chi;
        }
        if (!eseen[edge_of_[h]]) {
            eseen[edge_of_[h]] = true;
            --chi;
        }
    }
    return chi;
}

long SurfaceTriangulation::genus() const
{
    if (!closed() || num_components_ != 1)
        throw DomainError("structure", "genus needs a closed connected surface");
    return (2 - euler_characteristic()) / 2;
}

SurfaceTriangulation SurfaceTriangulation::reversed() const
{
    auto flip = [](std::size_t h) { return h - h % 3 + (2 - h % 3); };
    SurfaceTriangulation r;
    for (std::size_t t = 0; t < num_triangles(); ++t)
        r.add_triangle(tri_names_[t], {he_names_[3 * t + 2], he_names_[3 * t + 1], he_names_[3 * t]});
    for (std::size_t h = 0; h < partner_.size(); ++h)
        if (partner_[h] != kNone && h < partner_[h])
            r.glue(flip(h), flip(partner_[h]));
    r.finalize();
    return r;
}

SurfaceHomology::SurfaceHomology(const SurfaceTriangulation& s) : s_(&s)
{
    if (!s.closed() || s.num_components() != 1)
        throw DomainError("structure", "homology basis needs a closed connected surface");
    const std::size_t V = s.num_vertices(), E = s.num_edges(), F = s.num_triangles();

    // Spanning tree of the 1-skeleton.
    std::vector<std::vector<std::size_t>> vadj(V);
    for (std::size_t e = 0; e < E; ++e) {
        const std::size_t r = s.edge_rep(e);
        if (s.tail(r) != s.head(r)) {
            vadj[s.tail(r)].push_back(e);
            vadj[s.head(r)].push_back(e);
        }
    }
    std::vector<bool> in_tree(E, false), vseen(V, false);
    std::vector<std::size_t> up_he(V, kNone), vparent(V, kNone), vdepth(V, 0);
    std::deque<std::size_t> q{0};
    vseen[0] = true;
    while (!q.empty()) {
        const std::size_t a = q.front();
        q.pop_front();
        for (std::size_t e : vadj[a]) {
            const std::size_t r = s.edge_rep(e);
            const std::size_t b = s.tail(r) == a ? s.head(r) : s.tail(r);
            if (vseen[b])
                continue;
            vseen[b] = true;
            in_tree[e] = true;
            vparent[b] = a;
            vdepth[b] = vdepth[a] + 1;
            up_he[b] = s.tail(r) == b ? r : s.partner(r);
            q.push_back(b);
        }
    }

    // Spanning tree of the dual graph avoiding the primal tree.
    std::vector<std::vector<std::size_t>> tadj(F);
    for (std::size_t e = 0; e < E; ++e) {
        const std::size_t r = s.edge_rep(e);
        const std::size_t a = s.tri(r), b = s.tri(s.partner(r));
        if (!in_tree[e] && a != b) {
            tadj[a].push_back(e);
            tadj[b].push_back(e);
        }
    }
    std::vector<bool> in_cotree(E, false), tseen(F, false);
    std::vector<std::size_t> up_cross(F, kNone), tparent(F, kNone), tdepth(F, 0);
    q = {0};
    tseen[0] = true;
    while (!q.empty()) {
        const std::size_t a = q.front();
        q.pop_front();
        for (std::size_t e : tadj[a]) {
            const std::size_t r = s.edge_rep(e);
            const std::size_t b = s.tri(r) == a ? s.tri(s.partner(r)) : s.tri(r);
            if (tseen[b])
                continue;
            tseen[b] = true;
            in_cotree[e] = true;
            tparent[b] = a;
            tdepth[b] = tdepth[a] + 1;
            up_cross[b] = s.tri(r) == b ? r : s.partner(r);
            q.push_back(b);
        }
    }

    for (std::size_t e = 0; e < E; ++e) {
        if (in_tree[e] || in_cotree[e])
            continue;
        const std::size_t r = s.edge_rep(e);
        cotree_edges_.push_back(e);

        // Edge r from u to v, then back from v to u through the tree.
        std::vector<std::size_t> cyc{r}, down;
        std::size_t v = s.head(r), u = s.tail(r);
        while (v != u) {
            if (vdepth[v] >= vdepth[u]) {
                cyc.push_back(up_he[v]);
                v = vparent[v];
            } else {
                down.push_back(s.partner(up_he[u]));
                u = vparent[u];
            }
        }
        cyc.insert(cyc.end(), down.rbegin(), down.rend());
        primal_.push_back(std::move(cyc));

        // Cross r from A into B, then back from B to A through the cotree.
        std::vector<std::size_t> walk{r}, tail_part;
        std::size_t b = s.tri(s.partner(r)), a = s.tri(r);
        while (b != a) {
            if (tdepth[b] >= tdepth[a]) {
                walk.push_back(up_cross[b]);
                b = tparent[b];
            } else {
                tail_part.push_back(s.partner(up_cross[a]));
                a = tparent[a];
            }
        }
        walk.insert(walk.end(), tail_part.rbegin(), tail_part.rend());
        dual_walk_.push_back(std::move(walk));
    }

    const std::size_t L = cotree_edges_.size();
    if (static_cast<long>(L) != 2 - s.euler_characteristic())
        throw DomainError("structure", "tree/cotree decomposition has the wrong rank");

    for (std::size_t l = 0; l < L; ++l) {
        RatVec f(E);
        for (std::size_t x : dual_walk_[l])
            f[s.edge(x)] += s.edge_sign(x);
        primal_dual_sign_.push_back(pair_with_primal(f, l));
        if (abs(primal_dual_sign_.back()) != 1)
            throw DomainError("structure", "basis cycles are not dual");
    }

    // Intersections of the dual cycles: push cycle l off to its left and count
    // chord crossings inside each triangle both cycles pass through. Points on
    // the boundary of a triangle are numbered 4*slot + {1,2,3}, counterclockwise.
    auto visits = [&](std::size_t l) {
        const auto& w = dual_walk_[l];
        std::map<std::size_t, std::pair<std::size_t, std::size_t>> out;  // triangle -> (entry slot, exit slot)
        for (std::size_t i = 0; i < w.size(); ++i) {
            const std::size_t entry = s.partner(w[(i + w.size() - 1) % w.size()]);
            out[s.tri(w[i])] = {s.slot(entry), s.slot(w[i])};
        }
        return out;
    };
    std::vector<std::map<std::size_t, std::pair<std::size_t, std::size_t>>> vis;
    for (std::size_t l = 0; l < L; ++l)
        vis.push_back(visits(l));
    auto in_arc = [](int a, int b, int x) { return x != a && (x - a + 12) % 12 < (b - a + 12) % 12; };
    dual_.assign(L, RatVec(L));
    for (std::size_t l = 0; l < L; ++l)
        for (std::size_t m = 0; m < L; ++m) {
            if (l == m)
                continue;
            int total = 0;
            for (const auto& [t, pq] : vis[l]) {
                auto it = vis[m].find(t);
                if (it == vis[m].end())
                    continue;
                const int p1 = 4 * static_cast<int>(pq.first) + 1, p2 = 4 * static_cast<int>(pq.second) + 3;
                const int q1 = 4 * static_cast<int>(it->second.first) + 2;
                const int q2 = 4 * static_cast<int>(it->second.second) + 2;
                const bool a1 = in_arc(p1, p2, q1), a2 = in_arc(p1, p2, q2);
                if (a1 != a2)
                    total += a1 ? 1 : -1;
            }
            dual_[l][m] = total;
        }
}

bool SurfaceHomology::is_cycle(const RatVec& flow) const
{
    if (flow.size() != s_->num_edges())
        return false;
    for (std::size_t t = 0; t < s_->num_triangles(); ++t) {
        Rat out = 0;
        for (std::size_t i = 0; i < 3; ++i)
            out += s_->edge_sign(3 * t + i) * flow[s_->edge(3 * t + i)];
        if (out != 0)
            return false;
    }
    return true;
}

Rat SurfaceHomology::pair_with_primal(const RatVec& flow, std::size_t l) const
{
    Rat a = 0;
    for (std::size_t h : primal_[l])
        a += s_->edge_sign(h) * flow[s_->edge(h)];
    return a;
}

Rat SurfaceHomology::intersect(const RatVec& flow1, const RatVec& flow2) const
{
    if (!is_cycle(flow1) || !is_cycle(flow2))
        throw DomainError("invalid-weight", "flow is not a cycle");
    const std::size_t L = rank();
    RatVec y1(L), y2(L);
    for (std::size_t l = 0; l < L; ++l) {
        y1[l] = pair_with_primal(flow1, l) / primal_dual_sign_[l];
        y2[l] = pair_with_primal(flow2, l) / primal_dual_sign_[l];
    }
    Rat total = 0;
    for (std::size_t l = 0; l < L; ++l)
        for (std::size_t m = 0; m < L; ++m)
            if (dual_[l][m] != 0)
                total += y1[l] * y2[m] * dual_[l][m];
    return total;
}

} // namespace isocone
