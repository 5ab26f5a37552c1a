#pragma once

// Random inputs and brute-force oracles shared by the unit and acceptance tests.

#include "isocone/fixtures.hpp"

#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace isocone {
// Readable values in test failure messages.
inline void PrintTo(const LexVec& v, std::ostream* os) { *os << to_string(v); }
} // namespace isocone

namespace testsupport {

using namespace isocone;

inline Rat small_rat(std::mt19937_64& rng, long lo, long hi, long max_den = 1)
{
    Rat q(lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)),
          1 + static_cast<long>(rng() % static_cast<unsigned long>(max_den)));
    q.canonicalize();
    return q;
}

inline LexVec positive_lexvec(std::mt19937_64& rng, std::size_t rank)
{
    LexVec v(rank);
    do {
        for (std::size_t i = 0; i < rank; ++i)
            v[i] = small_rat(rng, -3, 3, 2);
    } while (v.sign() <= 0);
    return v;
}

// Vertex i > 0 hangs off a uniformly chosen earlier vertex.
inline MetricTree random_tree(std::mt19937_64& rng, std::size_t n, std::size_t rank, bool with_end = false)
{
    MetricTree t;
    for (std::size_t i = 0; i < n; ++i)
        t.add_vertex("v" + std::to_string(i));
    for (std::size_t i = 1; i < n; ++i)
        t.add_edge("e" + std::to_string(i), "v" + std::to_string(rng() % i), "v" + std::to_string(i),
                   positive_lexvec(rng, rank));
    if (with_end)
        t.set_end("v" + std::to_string(rng() % n));
    return t;
}

// All-pairs vertex distances by depth-first accumulation over the edge list.
inline std::vector<std::vector<LexVec>> oracle_distances(const MetricTree& t)
{
    const std::size_t n = t.num_vertices();
    const std::size_t r = t.edges().empty() ? 1 : t.edges()[0].length.rank();
    std::vector<std::vector<std::pair<std::size_t, LexVec>>> adj(n);
    for (const auto& e : t.edges()) {
        adj[e.u].push_back({e.v, e.length});
        adj[e.v].push_back({e.u, e.length});
    }
    std::vector<std::vector<LexVec>> d(n, std::vector<LexVec>(n, LexVec(r)));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (const auto& [y, len] : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    d[s][y] = d[s][x] + len;
                    stack.push_back(y);
                }
        }
    }
    return d;
}

// Sum of closed train paths: a path entering a switch on an incoming branch
// leaves on the outgoing one, and entering on the outgoing branch it leaves on
// either incoming one. The result lies in MF(τ) by construction.
inline RatVec random_carried_weight(const TrainTrack& t, std::mt19937_64& rng, int cycles)
{
    RatVec w(t.num_branches(), 0);
    std::vector<std::vector<std::pair<std::size_t, int>>> ends(t.num_branches());
    const auto& sw = t.switches();
    for (std::size_t s = 0; s < sw.size(); ++s) {
        ends[sw[s].a].push_back({s, 0});
        ends[sw[s].b].push_back({s, 1});
        ends[sw[s].c].push_back({s, 2});
    }
    auto branch_at = [&](std::size_t s, int slot) { return slot == 0 ? sw[s].a : slot == 1 ? sw[s].b : sw[s].c; };
    for (int k = 0; k < cycles; ++k) {
        std::map<std::pair<std::size_t, int>, std::size_t> seen;
        std::vector<std::size_t> path;
        std::size_t s = rng() % sw.size();
        int slot = 2;
        while (true) {
            const auto key = std::make_pair(s, slot);
            if (auto it = seen.find(key); it != seen.end()) {
                for (std::size_t i = it->second; i < path.size(); ++i)
                    w[path[i]] += 1;
                break;
            }
            seen[key] = path.size();
            const std::size_t b = branch_at(s, slot);
            path.push_back(b);
            auto other = ends[b][0];
            if (other.first == s && other.second == slot)
                other = ends[b][1];
            s = other.first;
            slot = other.second == 2 ? static_cast<int>(rng() % 2) : 2;
        }
    }
    return w;
}

// Boundary weights on both copies of the product fixture, equal to w on each.
inline RatVec diagonal_weights(const ProductFixture& f, const RatVec& w)
{
    const DualComplex dc = dual_triangulation(f.track);
    const SurfaceTriangulation& b = f.product.manifold.boundary();
    RatVec out(b.num_edges(), 0);
    for (std::size_t br = 0; br < f.track.num_branches(); ++br) {
        const std::size_t h = dc.surface.edge_rep(dc.edge_of_branch[br]);
        out[b.edge(f.product.top_half_edge[h])] = w[br];
        out[b.edge(f.product.bottom_half_edge[h])] = w[br];
    }
    return out;
}

// Random Gaussian-integer combination of a real tangent basis.
inline PeriodTangent random_tangent(const RatMat& basis, std::size_t num_edges, std::mt19937_64& rng)
{
    PeriodTangent t{std::vector<Cx>(num_edges)};
    for (const RatVec& row : basis) {
        const Cx c(small_rat(rng, -3, 3), small_rat(rng, -3, 3));
        for (std::size_t e = 0; e < num_edges; ++e)
            t.delta[e] = t.delta[e] + c * Cx(row[e]);
    }
    return t;
}

// A ball built by stacking tetrahedra onto random boundary faces; vertex labels
// 0..n+2. The new tetrahedron over a face with boundary order (p, q, r) is
// (p, q, r, v), which induces the opposite order on the shared face.
inline std::vector<std::array<int, 4>> random_stacked_ball(std::mt19937_64& rng, std::size_t num_tets)
{
    std::vector<std::array<int, 4>> tets{{0, 1, 2, 3}};
    std::vector<std::array<int, 3>> faces;
    auto push_faces = [&](const std::array<int, 4>& t) {
        for (int f = 0; f < 4; ++f) {
            std::array<int, 3> o{};
            for (int k = 0; k < 3; ++k)
                o[k] = t[kFaceOrder[f][k]];
            faces.push_back(o);
        }
    };
    push_faces(tets[0]);
    for (int v = 4; tets.size() < num_tets; ++v) {
        const std::size_t i = rng() % faces.size();
        const auto f = faces[i];
        faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(i));
        const std::array<int, 4> t{f[0], f[1], f[2], v};
        tets.push_back(t);
        for (int g = 0; g < 3; ++g) {
            std::array<int, 3> o{};
            for (int k = 0; k < 3; ++k)
                o[k] = t[kFaceOrder[g][k]];
            faces.push_back(o);
        }
    }
    return tets;
}

// Endpoint labels of each edge class of a complex built by from_labels.
inline std::vector<std::pair<std::size_t, std::size_t>> edge_endpoints(const Triangulation3& m,
                                                                       const std::vector<std::array<int, 4>>& tets)
{
    std::vector<std::pair<std::size_t, std::size_t>> out(m.num_edges());
    for (std::size_t t = 0; t < tets.size(); ++t)
        for (std::size_t l = 0; l < 6; ++l)
            out[m.edge_class(t, l)] = {static_cast<std::size_t>(tets[t][kLocalEdges[l][0]]),
                                       static_cast<std::size_t>(tets[t][kLocalEdges[l][1]])};
    return out;
}

inline RatVec random_vec(std::mt19937_64& rng, std::size_t n, long lo = -5, long hi = 5)
{
    RatVec v(n);
    for (auto& x : v)
        x = small_rat(rng, lo, hi);
    return v;
}

} // namespace testsupport
