#include "isocone/lamtree.hpp"

#include "isocone/error.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace isocone {

void MetricTree::add_vertex(const std::string& id)
{
    if (index_.count(id))
        throw DomainError("tree", "duplicate vertex '" + id + "'");
    index_[id] = names_.size();
    names_.push_back(id);
    adj_.emplace_back();
}

void MetricTree::add_edge(const std::string& id, const std::string& u, const std::string& v, LexVec length)
{
    if (edge_index_.count(id))
        throw DomainError("tree", "duplicate edge '" + id + "'");
    const std::size_t a = vertex_index(u), b = vertex_index(v);
    if (length.sign() <= 0)
        throw DomainError("tree", "edge '" + id + "' has nonpositive length " + to_string(length));
    if (!edges_.empty() && edges_.front().length.rank() != length.rank())
        throw DomainError("dimension", "edge '" + id + "' has rank " + std::to_string(length.rank()));
    edge_index_[id] = edges_.size();
    adj_[a].push_back({b, edges_.size()});
    adj_[b].push_back({a, edges_.size()});
    edges_.push_back({id, a, b, std::move(length)});
}

void MetricTree::set_end(const std::string& anchor)
{
    anchor_ = vertex_index(anchor);
}

std::size_t MetricTree::vertex_index(const std::string& id) const
{
    auto it = index_.find(id);
    if (it == index_.end())
        throw DomainError("domain", "unknown vertex '" + id + "'");
    return it->second;
}

std::size_t MetricTree::edge_index(const std::string& id) const
{
    auto it = edge_index_.find(id);
    if (it == edge_index_.end())
        throw DomainError("domain", "unknown edge '" + id + "'");
    return it->second;
}

std::size_t MetricTree::rank() const
{
    return edges_.empty() ? 1 : edges_.front().length.rank();
}

void MetricTree::validate() const
{
    if (names_.empty())
        throw DomainError("tree", "no vertices");
    if (edges_.size() + 1 != names_.size())
        throw DomainError("tree", "a tree on " + std::to_string(names_.size()) + " vertices needs "
                                      + std::to_string(names_.size() - 1) + " edges");
    std::vector<bool> seen(names_.size(), false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        std::size_t a = q.front();
        q.pop_front();
        for (auto [b, e] : adj_[a])
            if (!seen[b]) {
                seen[b] = true;
                ++count;
                q.push_back(b);
            }
    }
    if (count != names_.size())
        throw DomainError("tree", "edge graph is not connected");
}

std::vector<std::size_t> MetricTree::path(std::size_t a, std::size_t b) const
{
    std::vector<std::size_t> parent_edge(names_.size(), SIZE_MAX), parent(names_.size(), SIZE_MAX);
    std::vector<bool> seen(names_.size(), false);
    std::deque<std::size_t> q{a};
    seen[a] = true;
    while (!q.empty() && !seen[b]) {
        std::size_t x = q.front();
        q.pop_front();
        for (auto [y, e] : adj_[x])
            if (!seen[y]) {
                seen[y] = true;
                parent[y] = x;
                parent_edge[y] = e;
                q.push_back(y);
            }
    }
    if (!seen[b])
        throw DomainError("tree", "vertices are not connected");
    std::vector<std::size_t> out;
    for (std::size_t x = b; x != a; x = parent[x])
        out.push_back(parent_edge[x]);
    std::reverse(out.begin(), out.end());
    return out;
}

LexVec MetricTree::vertex_distance(std::size_t a, std::size_t b) const
{
    LexVec d(rank());
    for (std::size_t e : path(a, b))
        d += edges_[e].length;
    return d;
}

std::vector<std::vector<LexVec>> MetricTree::distance_matrix() const
{
    const std::size_t n = names_.size();
    std::vector<std::vector<LexVec>> d(n, std::vector<LexVec>(n, LexVec(rank())));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> q{s};
        seen[s] = true;
        while (!q.empty()) {
            std::size_t x = q.front();
            q.pop_front();
            for (auto [y, e] : adj_[x])
                if (!seen[y]) {
                    seen[y] = true;
                    d[s][y] = d[s][x] + edges_[e].length;
                    q.push_back(y);
                }
        }
    }
    return d;
}

namespace {

const LexVec& lex_min(const LexVec& a, const LexVec& b)
{
    return b < a ? b : a;
}

void check_point(const MetricTree& t, const TreePoint& x)
{
    switch (x.kind) {
    case TreePoint::Kind::Vertex:
        t.vertex_index(x.id);
        return;
    case TreePoint::Kind::Edge: {
        const auto& e = t.edges()[t.edge_index(x.id)];
        if (x.offset.rank() != t.rank())
            throw DomainError("dimension", "offset rank differs from tree rank");
        if (x.offset.sign() < 0 || e.length < x.offset)
            throw DomainError("domain", "offset " + to_string(x.offset) + " outside edge '" + x.id + "'");
        return;
    }
    case TreePoint::Kind::Ray:
        if (!t.end_anchor())
            throw DomainError("domain", "ray point on a tree without an end");
        if (x.offset.rank() != t.rank())
            throw DomainError("dimension", "excess rank differs from tree rank");
        if (x.offset.sign() < 0)
            throw DomainError("domain", "negative ray excess");
        return;
    }
}

LexVec to_vertex(const MetricTree& t, const TreePoint& x, std::size_t w)
{
    switch (x.kind) {
    case TreePoint::Kind::Vertex:
        return t.vertex_distance(t.vertex_index(x.id), w);
    case TreePoint::Kind::Edge: {
        const auto& e = t.edges()[t.edge_index(x.id)];
        return lex_min(x.offset + t.vertex_distance(e.u, w),
                       (e.length - x.offset) + t.vertex_distance(e.v, w));
    }
    case TreePoint::Kind::Ray:
        return x.offset + t.vertex_distance(*t.end_anchor(), w);
    }
    return {};
}

} // namespace

LexVec distance(const MetricTree& t, const TreePoint& x, const TreePoint& y)
{
    check_point(t, x);
    check_point(t, y);
    using K = TreePoint::Kind;
    if (x.kind == K::Ray && y.kind == K::Ray)
        return abs(x.offset - y.offset);
    if (x.kind == K::Ray)
        return x.offset + to_vertex(t, y, *t.end_anchor());
    if (y.kind == K::Ray)
        return y.offset + to_vertex(t, x, *t.end_anchor());
    if (y.kind == K::Vertex)
        return to_vertex(t, x, t.vertex_index(y.id));
    if (x.kind == K::Vertex)
        return to_vertex(t, y, t.vertex_index(x.id));
    if (x.id == y.id)
        return abs(x.offset - y.offset);
    const auto& e = t.edges()[t.edge_index(y.id)];
    return lex_min(y.offset + to_vertex(t, x, e.u), (e.length - y.offset) + to_vertex(t, x, e.v));
}

bool four_point_check(const DistanceMatrix& d)
{
    if (d.size() != 4)
        throw DomainError("dimension", "four_point_check needs a 4x4 matrix");
    std::array<LexVec, 3> s{d[0][1] + d[2][3], d[0][2] + d[1][3], d[0][3] + d[1][2]};
    std::sort(s.begin(), s.end());
    return s[1] == s[2];
}

bool is_zero_hyperbolic(const DistanceMatrix& d)
{
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i].size() != n)
            throw DomainError("dimension", "distance matrix is not square");
        if (!d[i][i].is_zero())
            throw DomainError("not-a-metric", "nonzero diagonal entry");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] != d[j][i] || d[i][j].sign() < 0)
                throw DomainError("not-a-metric", "asymmetric or negative entry");
            for (std::size_t k = 0; k < n; ++k)
                if (d[i][j] + d[j][k] < d[i][k])
                    throw DomainError("not-a-metric", "triangle inequality fails at ("
                                                          + std::to_string(i) + "," + std::to_string(j)
                                                          + "," + std::to_string(k) + ")");
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t e = c + 1; e < n; ++e) {
                    const std::size_t id[4] = {a, b, c, e};
                    DistanceMatrix q(4, std::vector<LexVec>(4));
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            q[i][j] = d[id[i]][id[j]];
                    if (!four_point_check(q))
                        return false;
                }
    return true;
}

LexVec min_displacement(const MetricTree& t, const std::map<std::string, std::string>& g)
{
    const std::size_t n = t.num_vertices();
    std::vector<std::size_t> img(n, SIZE_MAX);
    std::vector<bool> hit(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        auto it = g.find(t.vertex_ids()[v]);
        if (it == g.end())
            throw DomainError("not-an-isometry", "map undefined at '" + t.vertex_ids()[v] + "'");
        img[v] = t.vertex_index(it->second);
        if (hit[img[v]])
            throw DomainError("not-an-isometry", "map is not injective");
        hit[img[v]] = true;
    }
    auto edge_between = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
        for (std::size_t e = 0; e < t.edges().size(); ++e) {
            const auto& ed = t.edges()[e];
            if ((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))
                return e;
        }
        return std::nullopt;
    };
    std::optional<LexVec> best;
    auto consider = [&](LexVec d) {
        if (!best || d < *best)
            best = std::move(d);
    };
    for (std::size_t v = 0; v < n; ++v)
        consider(t.vertex_distance(v, img[v]));
    for (const auto& ed : t.edges()) {
        auto e2 = edge_between(img[ed.u], img[ed.v]);
        if (!e2 || t.edges()[*e2].length != ed.length)
            throw DomainError("not-an-isometry", "edge '" + ed.id + "' is not mapped to an edge of equal length");
        LexVec half = ed.length * Rat(1, 2);
        consider(distance(t, TreePoint::on_edge(ed.id, half), TreePoint::on_edge(t.edges()[*e2].id, half)));
    }
    return *best;
}

MetricTree base_change(const MetricTree& t, const RatMat& m)
{
    MetricTree out;
    for (const auto& id : t.vertex_ids())
        out.add_vertex(id);
    for (const auto& ed : t.edges()) {
        LexVec img(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i].size() != ed.length.rank())
                throw DomainError("dimension", "base change matrix has wrong width");
            img[i] = dot(m[i], ed.length.coords());
        }
        if (img.sign() <= 0)
            throw DomainError("order-violation", "length of '" + ed.id + "' maps to " + to_string(img));
        out.add_edge(ed.id, t.vertex_ids()[ed.u], t.vertex_ids()[ed.v], std::move(img));
    }
    if (t.end_anchor())
        out.set_end(t.vertex_ids()[*t.end_anchor()]);
    return out;
}

MetricTree subtree_at(const MetricTree& t, const std::string& x, std::size_t k)
{
    if (k < 1 || k > t.rank())
        throw DomainError("dimension", "convex subgroup index " + std::to_string(k) + " outside 1.."
                                           + std::to_string(t.rank()));
    const std::size_t xi = t.vertex_index(x);
    std::vector<bool> keep(t.num_vertices(), false);
    MetricTree out;
    for (std::size_t v = 0; v < t.num_vertices(); ++v) {
        LexVec d = t.vertex_distance(xi, v);
        bool in = true;
        for (std::size_t i = 0; i + 1 < k; ++i)
            in = in && d[i] == 0;
        if (in) {
            keep[v] = true;
            out.add_vertex(t.vertex_ids()[v]);
        }
    }
    for (const auto& ed : t.edges()) {
        if (!keep[ed.u] || !keep[ed.v])
            continue;
        std::vector<Rat> tail(ed.length.coords().begin() + static_cast<std::ptrdiff_t>(k - 1),
                              ed.length.coords().end());
        out.add_edge(ed.id, t.vertex_ids()[ed.u], t.vertex_ids()[ed.v], LexVec(std::move(tail)));
    }
    if (t.end_anchor() && keep[*t.end_anchor()])
        out.set_end(t.vertex_ids()[*t.end_anchor()]);
    return out;
}

namespace {

void require_rank_one_end(const MetricTree& t)
{
    if (t.rank() != 1)
        throw DomainError("unsupported-rank", "Busemann functions need a rank-1 tree");
    if (!t.end_anchor())
        throw DomainError("domain", "tree has no end");
}

} // namespace

Rat busemann(const MetricTree& t, const TreePoint& x)
{
    require_rank_one_end(t);
    if (x.kind == TreePoint::Kind::Ray) {
        check_point(t, x);
        return -x.offset[0];
    }
    return distance(t, x, TreePoint::vertex(t.vertex_ids()[*t.end_anchor()]))[0];
}

TreePoint push(const MetricTree& t, const TreePoint& x, const Rat& s)
{
    require_rank_one_end(t);
    check_point(t, x);
    if (s < 0)
        throw DomainError("domain", "push distance must be nonnegative");
    if (x.kind == TreePoint::Kind::Ray)
        return TreePoint::on_ray(LexVec{x.offset[0] + s});
    const std::size_t anchor = *t.end_anchor();
    const Rat d = distance(t, x, TreePoint::vertex(t.vertex_ids()[anchor]))[0];
    if (s > d)
        return TreePoint::on_ray(LexVec{s - d});

    Rat left = s;
    std::size_t at;
    if (x.kind == TreePoint::Kind::Edge) {
        const auto& e = t.edges()[t.edge_index(x.id)];
        const Rat o = x.offset[0], len = e.length[0];
        const bool via_u = o + t.vertex_distance(e.u, anchor)[0] == d;
        const Rat seg = via_u ? o : len - o;
        if (left < seg) {
            const Rat off = via_u ? Rat(o - left) : Rat(o + left);
            return off == 0 ? TreePoint::vertex(t.vertex_ids()[e.u])
                 : off == len ? TreePoint::vertex(t.vertex_ids()[e.v])
                              : TreePoint::on_edge(e.id, LexVec{off});
        }
        left -= seg;
        at = via_u ? e.u : e.v;
    } else {
        at = t.vertex_index(x.id);
    }
    for (std::size_t ei : t.path(at, anchor)) {
        if (left == 0)
            break;
        const auto& e = t.edges()[ei];
        const Rat len = e.length[0];
        if (left < len)
            return TreePoint::on_edge(e.id, LexVec{e.u == at ? left : len - left});
        left -= len;
        at = e.u == at ? e.v : e.u;
    }
    return TreePoint::vertex(t.vertex_ids()[at]);
}

std::vector<LexVec> weight_from_vertex_map(const MetricTree& t,
                                           const std::vector<std::size_t>& domain,
                                           const std::map<std::size_t, std::string>& f,
                                           const std::vector<std::pair<std::size_t, std::size_t>>& edges)
{
    auto image = [&](std::size_t v) {
        auto it = f.find(v);
        if (it == f.end())
            throw DomainError("domain", "vertex " + std::to_string(v) + " is not mapped");
        return t.vertex_index(it->second);
    };
    for (std::size_t v : domain)
        image(v);
    std::vector<LexVec> w;
    w.reserve(edges.size());
    for (auto [u, v] : edges)
        w.push_back(t.vertex_distance(image(u), image(v)));
    return w;
}

} // namespace isocone
