#include "isocone/track.hpp"

#include "isocone/error.hpp"

#include <array>
#include <deque>

namespace isocone {

namespace {

struct BranchEnd {
    std::size_t sw;
    bool outgoing;  // attached at the c slot
};

std::vector<std::vector<BranchEnd>> branch_ends(const TrainTrack& t)
{
    std::vector<std::vector<BranchEnd>> ends(t.num_branches());
    for (std::size_t v = 0; v < t.switches().size(); ++v) {
        const Switch& s = t.switches()[v];
        ends[s.a].push_back({v, false});
        ends[s.b].push_back({v, false});
        ends[s.c].push_back({v, true});
    }
    return ends;
}

void require_weight(const TrainTrack& t, const RatVec& w)
{
    if (w.size() != t.num_branches())
        throw DomainError("missing-value", "expected " + std::to_string(t.num_branches()) + " branch weights, got "
                                               + std::to_string(w.size()));
}

} // namespace

std::size_t TrainTrack::add_branch(const std::string& id)
{
    if (index_.count(id))
        throw DomainError("structure", "duplicate branch '" + id + "'");
    index_[id] = branches_.size();
    branches_.push_back(id);
    return branches_.size() - 1;
}

void TrainTrack::add_switch(const std::string& id, const std::string& a, const std::string& b,
                            const std::string& c, bool ccw)
{
    for (const Switch& s : switches_)
        if (s.id == id)
            throw DomainError("structure", "duplicate switch '" + id + "'");
    switches_.push_back({id, branch_index(a), branch_index(b), branch_index(c), ccw});
}

std::size_t TrainTrack::branch_index(const std::string& id) const
{
    auto it = index_.find(id);
    if (it == index_.end())
        throw DomainError("structure", "unknown branch '" + id + "'");
    return it->second;
}

void TrainTrack::validate() const
{
    const auto ends = branch_ends(*this);
    for (std::size_t e = 0; e < ends.size(); ++e)
        if (ends[e].size() != 2)
            throw DomainError("structure", "branch '" + branches_[e] + "' has " + std::to_string(ends[e].size())
                                               + " ends at switches, expected 2");
}

bool switch_check(const TrainTrack& t, const RatVec& w)
{
    require_weight(t, w);
    for (const Switch& s : t.switches())
        if (w[s.a] + w[s.b] != w[s.c])
            return false;
    return true;
}

RatMat weight_space_basis(const TrainTrack& t)
{
    RatMat rel;
    for (const Switch& s : t.switches()) {
        RatVec r(t.num_branches());
        r[s.a] += 1;
        r[s.b] += 1;
        r[s.c] -= 1;
        rel.push_back(std::move(r));
    }
    return kernel(rel, t.num_branches());
}

Rat thurston_form(const TrainTrack& t, const RatVec& w1, const RatVec& w2)
{
    if (!switch_check(t, w1) || !switch_check(t, w2))
        throw DomainError("invalid-weight", "weights violate a switch relation");
    Rat sum = 0;
    for (const Switch& s : t.switches()) {
        const std::size_t a = s.ccw ? s.a : s.b, b = s.ccw ? s.b : s.a;
        sum += w1[a] * w2[b] - w1[b] * w2[a];
    }
    return sum / 2;
}

DualComplex dual_complex(const TrainTrack& t)
{
    t.validate();
    DualComplex d;
    std::vector<std::vector<std::size_t>> occ(t.num_branches());
    for (const Switch& s : t.switches()) {
        const std::array<std::size_t, 3> order =
            s.ccw ? std::array<std::size_t, 3>{s.a, s.b, s.c} : std::array<std::size_t, 3>{s.b, s.a, s.c};
        const std::size_t tri = d.surface.add_triangle(s.id, {s.id + ".0", s.id + ".1", s.id + ".2"});
        for (std::size_t k = 0; k < 3; ++k)
            occ[order[k]].push_back(3 * tri + k);
    }
    for (const auto& o : occ)
        d.surface.glue(o[0], o[1]);
    d.surface.finalize();
    d.edge_of_branch.resize(t.num_branches());
    d.branch_of_edge.resize(d.surface.num_edges());
    for (std::size_t e = 0; e < occ.size(); ++e) {
        d.edge_of_branch[e] = d.surface.edge(occ[e][0]);
        d.branch_of_edge[d.edge_of_branch[e]] = e;
    }
    return d;
}

DualComplex dual_triangulation(const TrainTrack& t)
{
    DualComplex d = dual_complex(t);
    // The cusp of each switch sits at the corner between its two incoming
    // sides, which is the tail of slot 1.
    std::vector<std::size_t> cusps(d.surface.num_vertices(), 0);
    for (std::size_t tri = 0; tri < d.surface.num_triangles(); ++tri)
        ++cusps[d.surface.tail(3 * tri + 1)];
    for (std::size_t v = 0; v < cusps.size(); ++v)
        if (cusps[v] != 3)
            throw DomainError("not-maximal", "a complementary region has " + std::to_string(cusps[v])
                                                 + " cusps instead of 3");
    return d;
}

Rat triangle_form_sum(const SurfaceTriangulation& s, const RatVec& u, const RatVec& v)
{
    if (u.size() != s.num_edges() || v.size() != s.num_edges())
        throw DomainError("dimension", "triangle weights must have one value per edge");
    Rat sum = 0;
    for (std::size_t t = 0; t < s.num_triangles(); ++t)
        for (std::size_t i = 0; i < 3; ++i) {
            const std::size_t e = s.edge(3 * t + i), f = s.edge(3 * t + (i + 1) % 3);
            sum += u[e] * v[f] - u[f] * v[e];
        }
    return -sum / 2;
}

RatVec embed_weights(const TrainTrack& t, const DualComplex& d, const RatVec& w)
{
    if (!switch_check(t, w))
        throw DomainError("invalid-weight", "weights violate a switch relation");
    RatVec out(d.surface.num_edges());
    for (std::size_t e = 0; e < w.size(); ++e)
        out[d.edge_of_branch[e]] = w[e];
    return out;
}

std::optional<std::vector<int>> track_orientation(const TrainTrack& t)
{
    // flip[v] = 1 when switch v is reversed. A branch leaves one of its
    // switches and enters the other, so flip[v1] ^ flip[v2] = out1 ^ out2 ^ 1.
    const auto ends = branch_ends(t);
    const std::size_t n = t.switches().size();
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
    for (const auto& e : ends) {
        if (e.size() != 2)
            throw DomainError("structure", "branch without two ends");
        const int parity = static_cast<int>(e[0].outgoing) ^ static_cast<int>(e[1].outgoing) ^ 1;
        adj[e[0].sw].push_back({e[1].sw, parity});
        adj[e[1].sw].push_back({e[0].sw, parity});
    }
    std::vector<int> flip(n, -1);
    for (std::size_t root = 0; root < n; ++root) {
        if (flip[root] >= 0)
            continue;
        flip[root] = 0;
        std::deque<std::size_t> q{root};
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop_front();
            for (auto [u, p] : adj[v]) {
                if (flip[u] < 0) {
                    flip[u] = flip[v] ^ p;
                    q.push_back(u);
                } else if (flip[u] != (flip[v] ^ p)) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<int> sign(n);
    for (std::size_t v = 0; v < n; ++v)
        sign[v] = flip[v] ? -1 : 1;
    return sign;
}

RatVec weight_flow(const TrainTrack& t, const DualComplex& d, const std::vector<int>& orientation, const RatVec& w)
{
    require_weight(t, w);
    RatVec flow(d.surface.num_edges());
    for (std::size_t e = 0; e < d.surface.num_edges(); ++e) {
        const std::size_t rep = d.surface.edge_rep(e);
        const bool outgoing = SurfaceTriangulation::slot(rep) == 2;
        const bool exits = outgoing != (orientation[SurfaceTriangulation::tri(rep)] < 0);
        flow[e] = exits ? w[d.branch_of_edge[e]] : -w[d.branch_of_edge[e]];
    }
    return flow;
}

Rat cycle_pairing(const TrainTrack& t, const RatVec& w1, const RatVec& w2)
{
    if (!switch_check(t, w1) || !switch_check(t, w2))
        throw DomainError("invalid-weight", "weights violate a switch relation");
    const auto orient = track_orientation(t);
    if (!orient)
        throw DomainError("not-orientable", "track admits no consistent orientation");
    const DualComplex d = dual_complex(t);
    const SurfaceHomology h(d.surface);
    return h.intersect(weight_flow(t, d, *orient, w1), weight_flow(t, d, *orient, w2));
}

} // namespace isocone
