#pragma once

#include <algorithm>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>

#include "imkit/multigraph.hpp"

namespace imkit {

/// Witness that a pattern graph H maps into a host graph G: an injective
/// vertex map plus one path in G per edge of H. Which disjointness the paths
/// satisfy depends on the relation being witnessed; see the validators.
struct ImmersionModel {
    std::map<VertexId, VertexId> vertex_map;  // pattern vertex -> host vertex
    std::map<EdgeId, Path> edge_paths;        // pattern edge -> host path
};

namespace detail {

inline bool model_shape_ok(const MultiGraph& g, const MultiGraph& h, const ImmersionModel& m) {
    if (static_cast<int>(m.vertex_map.size()) != h.num_vertices()) return false;
    std::set<VertexId> targets;
    for (const auto& [hv, gv] : m.vertex_map) {
        if (!h.has_vertex(hv) || !g.has_vertex(gv)) return false;
        if (!targets.insert(gv).second) return false;
    }
    if (static_cast<int>(m.edge_paths.size()) != h.num_edges()) return false;
    for (const auto& [he, p] : m.edge_paths) {
        if (!h.has_edge(he)) return false;
        if (p.length() < 1 || !is_valid_path(g, p)) return false;
        auto [hu, hv] = h.endpoints(he);
        VertexId a = m.vertex_map.at(hu), b = m.vertex_map.at(hv);
        bool fwd = p.front() == a && p.back() == b;
        bool rev = p.front() == b && p.back() == a;
        if (!fwd && !rev) return false;
    }
    return true;
}

inline bool paths_edge_disjoint(const ImmersionModel& m) {
    std::set<EdgeId> used;
    for (const auto& [he, p] : m.edge_paths)
        for (EdgeId e : p.edges)
            if (!used.insert(e).second) return false;
    return true;
}

}  // namespace detail

/// Weak immersion: distinct branch vertices joined by pairwise edge-disjoint
/// paths. Strong additionally forbids any path from passing through the image
/// of a branch vertex.
inline bool is_valid_immersion(const MultiGraph& g, const MultiGraph& h, const ImmersionModel& m,
                               bool strong = false) {
    if (!detail::model_shape_ok(g, h, m) || !detail::paths_edge_disjoint(m)) return false;
    if (strong) {
        std::set<VertexId> image;
        for (const auto& [hv, gv] : m.vertex_map) image.insert(gv);
        for (const auto& [he, p] : m.edge_paths)
            for (int i = 1; i < p.length(); ++i)
                if (image.count(p.vertices[i])) return false;
    }
    return true;
}

/// Topological minor: branch vertices joined by paths that are internally
/// disjoint from each other and from every branch image.
inline bool is_valid_topological_minor(const MultiGraph& g, const MultiGraph& h,
                                       const ImmersionModel& m) {
    if (!detail::model_shape_ok(g, h, m) || !detail::paths_edge_disjoint(m)) return false;
    std::set<VertexId> image;
    for (const auto& [hv, gv] : m.vertex_map) image.insert(gv);
    std::set<VertexId> interior_seen;
    for (const auto& [he, p] : m.edge_paths) {
        for (int i = 1; i < p.length(); ++i) {
            VertexId w = p.vertices[i];
            if (image.count(w)) return false;
            if (!interior_seen.insert(w).second) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Pattern search
// ---------------------------------------------------------------------------

namespace detail {

enum class RouteMode { edge_disjoint, strong_edge_disjoint, internally_vertex_disjoint };

// Routes one host path per pattern edge under the disjointness rules of
// `mode`. Greedy shortest-path rounds come first; the exact backtracking
// enumeration settles the answer when greed fails. The exact tier prunes on
// a running lower bound: the residual shortest-path distances of unrouted
// demands must fit in the remaining edge (and interior-vertex) budget.
struct Router {
    const MultiGraph& g;
    RouteMode mode;
    std::set<VertexId> image;
    std::vector<EdgeId> demand_ids;
    std::vector<std::pair<VertexId, VertexId>> demand_ends;

    std::set<EdgeId> used_edges;
    std::set<VertexId> used_interior;
    std::map<EdgeId, Path> routed;

    Router(const MultiGraph& host, RouteMode md, const std::set<VertexId>& img) : g(host), mode(md), image(img) {}

    bool through_allowed(VertexId w) const {
        switch (mode) {
            case RouteMode::edge_disjoint: return true;
            case RouteMode::strong_edge_disjoint: return !image.count(w);
            case RouteMode::internally_vertex_disjoint: return !image.count(w) && !used_interior.count(w);
        }
        return false;
    }

    void reset() {
        used_edges.clear();
        used_interior.clear();
        routed.clear();
    }

    void commit(size_t i, const Path& p) {
        for (EdgeId e : p.edges) used_edges.insert(e);
        if (mode == RouteMode::internally_vertex_disjoint)
            for (int k = 1; k < p.length(); ++k) used_interior.insert(p.vertices[k]);
        routed[demand_ids[i]] = p;
    }

    void uncommit(size_t i, const Path& p) {
        for (EdgeId e : p.edges) used_edges.erase(e);
        if (mode == RouteMode::internally_vertex_disjoint)
            for (int k = 1; k < p.length(); ++k) used_interior.erase(p.vertices[k]);
        routed.erase(demand_ids[i]);
    }

    // Shortest-path distance honoring the bans, or -1 when unreachable.
    int bfs_dist(VertexId s, VertexId t) const {
        std::map<VertexId, int> dist{{s, 0}};
        std::queue<VertexId> q;
        q.push(s);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            if (v == t) return dist[v];
            if (v != s && !through_allowed(v)) continue;
            for (EdgeId e : g.incident_edges(v)) {
                if (used_edges.count(e)) continue;
                VertexId w = g.other_end(e, v);
                if (!dist.count(w)) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
            }
        }
        return -1;
    }

    std::optional<Path> bfs_path(VertexId s, VertexId t, std::mt19937* rng) {
        std::map<VertexId, std::pair<VertexId, EdgeId>> par;
        std::map<VertexId, int> dist{{s, 0}};
        std::queue<VertexId> q;
        q.push(s);
        bool found = false;
        while (!q.empty() && !found) {
            VertexId v = q.front();
            q.pop();
            if (v != s && !through_allowed(v)) continue;
            std::vector<EdgeId> inc = g.incident_edges(v);
            if (rng) std::shuffle(inc.begin(), inc.end(), *rng);
            for (EdgeId e : inc) {
                if (used_edges.count(e)) continue;
                VertexId w = g.other_end(e, v);
                if (dist.count(w)) continue;
                dist[w] = dist[v] + 1;
                par[w] = {v, e};
                if (w == t) {
                    found = true;
                    break;
                }
                q.push(w);
            }
        }
        if (!found && !dist.count(t)) return std::nullopt;
        std::vector<VertexId> rv{t};
        std::vector<EdgeId> re;
        for (VertexId a = t; a != s; a = par[a].first) {
            re.push_back(par[a].second);
            rv.push_back(par[a].first);
        }
        std::reverse(rv.begin(), rv.end());
        std::reverse(re.begin(), re.end());
        return Path{rv, re};
    }

    bool greedy(unsigned seed, int attempts) {
        for (int a = 0; a < attempts; ++a) {
            std::mt19937 rng(seed ^ (0x9e3779b9u * static_cast<unsigned>(a + 1)));
            std::vector<size_t> order(demand_ids.size());
            for (size_t i = 0; i < order.size(); ++i) order[i] = i;
            if (a > 0) std::shuffle(order.begin(), order.end(), rng);
            reset();
            bool ok = true;
            for (size_t i : order) {
                auto p = bfs_path(demand_ends[i].first, demand_ends[i].second, a > 0 ? &rng : nullptr);
                if (!p) {
                    ok = false;
                    break;
                }
                commit(i, *p);
            }
            if (ok) return true;
        }
        reset();
        return false;
    }

    // Lower-bound feasibility of everything still unrouted, and the length
    // cap for demand i (its own distance plus whatever slack the budget has).
    bool budget_ok(size_t from, int& cap_first) {
        long long edge_budget = g.num_edges() - static_cast<long long>(used_edges.size());
        long long need = 0, need_interior = 0;
        int d_first = 0;
        for (size_t j = from; j < demand_ids.size(); ++j) {
            int d = bfs_dist(demand_ends[j].first, demand_ends[j].second);
            if (d < 0) return false;
            if (j == from) d_first = d;
            need += d;
            need_interior += d - 1;
        }
        if (need > edge_budget) return false;
        if (mode == RouteMode::internally_vertex_disjoint) {
            long long avail = g.num_vertices() - static_cast<long long>(image.size()) -
                              static_cast<long long>(used_interior.size());
            if (need_interior > avail) return false;
        }
        cap_first = d_first + static_cast<int>(edge_budget - need);
        return true;
    }

    bool exact(size_t i) {
        if (i == demand_ids.size()) return true;
        int cap = 0;
        if (!budget_ok(i, cap)) return false;
        auto [s, t] = demand_ends[i];
        Path cur;
        cur.vertices = {s};
        std::set<VertexId> onpath{s};
        return extend(i, s, t, cap, cur, onpath);
    }

    bool extend(size_t i, VertexId at, VertexId t, int cap, Path& cur, std::set<VertexId>& onpath) {
        int len = static_cast<int>(cur.edges.size());
        for (EdgeId e : g.incident_edges(at)) {
            if (used_edges.count(e)) continue;
            VertexId w = g.other_end(e, at);
            if (onpath.count(w)) continue;
            if (w == t) {
                if (len + 1 > cap) continue;
                cur.vertices.push_back(w);
                cur.edges.push_back(e);
                Path done = cur;
                commit(i, done);
                if (exact(i + 1)) return true;
                uncommit(i, done);
                cur.vertices.pop_back();
                cur.edges.pop_back();
            } else if (len + 2 <= cap && through_allowed(w)) {
                cur.vertices.push_back(w);
                cur.edges.push_back(e);
                onpath.insert(w);
                if (extend(i, w, t, cap, cur, onpath)) return true;
                onpath.erase(w);
                cur.vertices.pop_back();
                cur.edges.pop_back();
            }
        }
        return false;
    }
};

/// Every color-respecting isomorphism a -> b. Exponential in the worst case;
/// meant for small pattern graphs.
inline std::vector<std::map<VertexId, VertexId>> all_isomorphisms(const MultiGraph& a, const MultiGraph& b) {
    std::vector<std::map<VertexId, VertexId>> out;
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return out;
    std::map<VertexId, int> ca, cb;
    if (!refine_colors(a, b, ca, cb)) return out;
    std::vector<VertexId> av = a.vertices();
    std::map<VertexId, VertexId> cur;
    std::set<VertexId> used;
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == av.size()) {
            out.push_back(cur);
            return;
        }
        VertexId x = av[i];
        for (VertexId y : b.vertices()) {
            if (used.count(y) || cb.at(y) != ca.at(x)) continue;
            bool ok = true;
            for (const auto& [xx, yy] : cur)
                if (a.multiplicity(x, xx) != b.multiplicity(y, yy)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur[x] = y;
            used.insert(y);
            self(self, i + 1);
            cur.erase(x);
            used.erase(y);
        }
    };
    rec(rec, 0);
    return out;
}

// Finds a model of h in g under the given routing mode. Candidate vertex maps
// are enumerated with degree pruning and deduplicated up to automorphisms of
// h (routing feasibility is invariant under precomposition with one).
inline std::optional<ImmersionModel> find_model(const MultiGraph& g, const MultiGraph& h,
                                                RouteMode mode, unsigned seed) {
    if (h.num_vertices() > g.num_vertices() || h.num_edges() > g.num_edges()) return std::nullopt;
    std::vector<VertexId> hv = h.vertices();
    if (hv.empty()) return ImmersionModel{};
    {
        std::vector<int> hd, gd;
        for (VertexId v : hv) hd.push_back(h.degree(v));
        for (VertexId v : g.vertices()) gd.push_back(g.degree(v));
        std::sort(hd.rbegin(), hd.rend());
        std::sort(gd.rbegin(), gd.rend());
        for (size_t i = 0; i < hd.size(); ++i)
            if (hd[i] > gd[i]) return std::nullopt;
    }

    std::vector<std::map<VertexId, VertexId>> auts;
    if (h.num_vertices() <= 12) auts = all_isomorphisms(h, h);

    std::vector<VertexId> gv = g.vertices();
    std::map<VertexId, VertexId> phi;
    std::set<VertexId> taken;

    auto canonical_orbit_rep = [&](const std::map<VertexId, VertexId>& m) {
        if (auts.size() <= 1) return true;
        std::vector<VertexId> mine;
        for (VertexId x : hv) mine.push_back(m.at(x));
        for (const auto& alpha : auts) {
            std::vector<VertexId> other;
            for (VertexId x : hv) other.push_back(m.at(alpha.at(x)));
            if (other < mine) return false;
        }
        return true;
    };

    auto try_map = [&](const std::map<VertexId, VertexId>& m) -> std::optional<ImmersionModel> {
        std::set<VertexId> image;
        for (const auto& [x, y] : m) image.insert(y);
        Router r(g, mode, image);
        for (const auto& [eid, rec] : h.edges()) {
            r.demand_ids.push_back(eid);
            r.demand_ends.push_back({m.at(rec.u), m.at(rec.v)});
        }
        if (!r.greedy(seed, 8)) {
            r.reset();
            if (!r.exact(0)) return std::nullopt;
        }
        ImmersionModel model;
        model.vertex_map = m;
        model.edge_paths = r.routed;
        return model;
    };

    std::optional<ImmersionModel> found;
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == hv.size()) {
            if (!canonical_orbit_rep(phi)) return false;
            found = try_map(phi);
            return found.has_value();
        }
        VertexId x = hv[i];
        for (VertexId y : gv) {
            if (taken.count(y) || g.degree(y) < h.degree(x)) continue;
            phi[x] = y;
            taken.insert(y);
            if (self(self, i + 1)) return true;
            taken.erase(y);
            phi.erase(x);
        }
        return false;
    };
    rec(rec, 0);
    return found;
}

}  // namespace detail

/// Weak immersion of h in g: a model whose paths are pairwise edge-disjoint.
inline std::optional<ImmersionModel> contains_immersion(const MultiGraph& g, const MultiGraph& h,
                                                        unsigned seed = 0) {
    return detail::find_model(g, h, detail::RouteMode::edge_disjoint, seed);
}

/// Strong immersion: as above, and no path passes through a branch image.
inline std::optional<ImmersionModel> contains_strong_immersion(const MultiGraph& g, const MultiGraph& h,
                                                               unsigned seed = 0) {
    return detail::find_model(g, h, detail::RouteMode::strong_edge_disjoint, seed);
}

/// Topological minor: a model whose paths are internally vertex-disjoint.
inline std::optional<ImmersionModel> contains_topological_minor(const MultiGraph& g, const MultiGraph& h,
                                                                unsigned seed = 0) {
    return detail::find_model(g, h, detail::RouteMode::internally_vertex_disjoint, seed);
}

// ---------------------------------------------------------------------------
// Minors
// ---------------------------------------------------------------------------

struct MinorModel {
    std::map<VertexId, std::set<VertexId>> branch_sets;  // pattern vertex -> host vertices
    std::map<EdgeId, EdgeId> edge_map;                   // pattern edge -> host edge
};

inline bool is_valid_minor(const MultiGraph& g, const MultiGraph& h, const MinorModel& m) {
    if (static_cast<int>(m.branch_sets.size()) != h.num_vertices()) return false;
    std::set<VertexId> all_used;
    for (const auto& [hv, set] : m.branch_sets) {
        if (!h.has_vertex(hv) || set.empty()) return false;
        for (VertexId v : set) {
            if (!g.has_vertex(v)) return false;
            if (!all_used.insert(v).second) return false;
        }
        // connectivity of the induced branch set
        std::set<VertexId> seen{*set.begin()};
        std::queue<VertexId> q;
        q.push(*set.begin());
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (EdgeId e : g.incident_edges(v)) {
                VertexId w = g.other_end(e, v);
                if (set.count(w) && seen.insert(w).second) q.push(w);
            }
        }
        if (seen.size() != set.size()) return false;
    }
    if (static_cast<int>(m.edge_map.size()) != h.num_edges()) return false;
    std::set<EdgeId> used_edges;
    for (const auto& [he, ge] : m.edge_map) {
        if (!h.has_edge(he) || !g.has_edge(ge)) return false;
        if (!used_edges.insert(ge).second) return false;
        auto [hu, hv] = h.endpoints(he);
        auto [gu, gv] = g.endpoints(ge);
        const auto& su = m.branch_sets.at(hu);
        const auto& sv = m.branch_sets.at(hv);
        bool fwd = su.count(gu) && sv.count(gv);
        bool rev = su.count(gv) && sv.count(gu);
        if (!fwd && !rev) return false;
    }
    return true;
}

/// Minor containment by branch-set assignment over connected vertex subsets.
/// Host graphs are limited to 16 vertices (bitmask enumeration) unless the
/// guard is overridden; 20 is a hard ceiling.
inline std::optional<MinorModel> contains_minor(const MultiGraph& g, const MultiGraph& h,
                                                bool override_guard = false) {
    int n = g.num_vertices();
    if (n > 16 && !override_guard)
        throw capacity_error("minor search enumerates vertex subsets; refusing more than 16 host vertices");
    if (n > 20) throw capacity_error("minor search cannot handle more than 20 host vertices");
    if (h.num_vertices() > n || h.num_edges() > g.num_edges()) return std::nullopt;
    std::vector<VertexId> hv = h.vertices();
    if (hv.empty()) return MinorModel{};

    std::vector<VertexId> gv = g.vertices();
    std::map<VertexId, int> gidx;
    for (int i = 0; i < n; ++i) gidx[gv[i]] = i;
    std::vector<uint32_t> adj(n, 0);
    for (const auto& [e, rec] : g.edges()) {
        adj[gidx[rec.u]] |= 1u << gidx[rec.v];
        adj[gidx[rec.v]] |= 1u << gidx[rec.u];
    }
    auto neighborhood = [&](uint32_t mask) {
        uint32_t nb = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) nb |= adj[i];
        return nb;
    };
    std::vector<uint32_t> connected_masks;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        uint32_t start = mask & (~mask + 1);
        uint32_t seen = start, frontier = start;
        while (frontier) {
            uint32_t next = 0;
            for (int i = 0; i < n; ++i)
                if (frontier & (1u << i)) next |= adj[i] & mask;
            frontier = next & ~seen;
            seen |= next;
        }
        if (seen == mask) connected_masks.push_back(mask);
    }
    // small branch sets first, then numeric; keeps early hits cheap
    std::sort(connected_masks.begin(), connected_masks.end(), [](uint32_t a, uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    // pattern vertices in descending degree order so tight constraints land early
    std::sort(hv.begin(), hv.end(), [&](VertexId a, VertexId b) {
        return std::make_pair(-h.degree(a), a) < std::make_pair(-h.degree(b), b);
    });
    std::vector<uint32_t> chosen(hv.size(), 0);

    auto edges_between = [&](uint32_t ma, uint32_t mb) {
        int c = 0;
        for (const auto& [e, rec] : g.edges()) {
            uint32_t bu = 1u << gidx[rec.u], bv = 1u << gidx[rec.v];
            if (((bu & ma) && (bv & mb)) || ((bu & mb) && (bv & ma))) ++c;
        }
        return c;
    };

    auto build = [&]() {
        MinorModel m;
        for (size_t i = 0; i < hv.size(); ++i) {
            std::set<VertexId> set;
            for (int b = 0; b < n; ++b)
                if (chosen[i] & (1u << b)) set.insert(gv[b]);
            m.branch_sets[hv[i]] = set;
        }
        // Each host edge joins exactly one pair of branch sets, so pattern
        // edges of one pair can take the host edges of that pair in id order.
        std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> host_pool;
        std::map<VertexId, VertexId> owner;
        for (const auto& [x, set] : m.branch_sets)
            for (VertexId v : set) owner[v] = x;
        for (const auto& [e, rec] : g.edges()) {
            auto iu = owner.find(rec.u), iv = owner.find(rec.v);
            if (iu == owner.end() || iv == owner.end() || iu->second == iv->second) continue;
            VertexId a = std::min(iu->second, iv->second), b = std::max(iu->second, iv->second);
            host_pool[{a, b}].push_back(e);
        }
        for (const auto& [he, rec] : h.edges()) {
            VertexId a = std::min(rec.u, rec.v), b = std::max(rec.u, rec.v);
            auto& pool = host_pool[{a, b}];
            m.edge_map[he] = pool.front();
            pool.erase(pool.begin());
        }
        return m;
    };

    auto rec = [&](auto&& self, size_t i, uint32_t used) -> bool {
        if (i == hv.size()) return true;
        int free = n - __builtin_popcount(used);
        if (free < static_cast<int>(hv.size() - i)) return false;
        for (uint32_t mask : connected_masks) {
            if (mask & used) continue;
            uint32_t nb = neighborhood(mask);
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) {
                int need = h.multiplicity(hv[i], hv[j]);
                if (need == 0) continue;
                if (!(nb & chosen[j])) ok = false;
                else if (need > 1 && edges_between(mask, chosen[j]) < need) ok = false;
            }
            if (!ok) continue;
            chosen[i] = mask;
            if (self(self, i + 1, used | mask)) return true;
        }
        return false;
    };
    if (!rec(rec, 0, 0)) return std::nullopt;
    return build();
}

// ---------------------------------------------------------------------------
// Reference oracle
// ---------------------------------------------------------------------------

/// Decides weak immersion from first principles: breadth-first closure of the
/// host under single edge deletions and lifts, succeeding when any reachable
/// graph contains the pattern as a subgraph. Exponential; guarded to 12 host
/// edges unless overridden. States are deduplicated by canonical key with
/// isolated vertices split off (they never affect the subgraph test's edges
/// but do count toward its vertex demand).
inline bool oracle_immersion_by_lifts(const MultiGraph& g, const MultiGraph& h,
                                      bool override_guard = false) {
    if (g.num_edges() > 12 && !override_guard)
        throw capacity_error("lift closure oracle refuses more than 12 edges; override to force");
    auto state_key = [](const MultiGraph& x) {
        MultiGraph y = x;
        int isolated = 0;
        for (VertexId v : x.vertices())
            if (x.degree(v) == 0) {
                y.remove_vertex(v);
                ++isolated;
            }
        return canonical_key(y) + "#" + std::to_string(isolated);
    };
    std::deque<MultiGraph> queue{g};
    std::set<std::string> seen{state_key(g)};
    while (!queue.empty()) {
        MultiGraph cur = queue.front();
        queue.pop_front();
        if (contains_subgraph(cur, h)) return true;
        for (EdgeId e : cur.edge_ids()) {
            MultiGraph next = cur;
            next.remove_edge(e);
            if (seen.insert(state_key(next)).second) queue.push_back(next);
        }
        for (VertexId v : cur.vertices()) {
            std::vector<EdgeId> inc = cur.incident_edges(v);
            for (size_t i = 0; i < inc.size(); ++i)
                for (size_t j = i + 1; j < inc.size(); ++j) {
                    if (cur.other_end(inc[i], v) == cur.other_end(inc[j], v)) continue;
                    MultiGraph next = lift(cur, inc[i], inc[j]);
                    if (seen.insert(state_key(next)).second) queue.push_back(next);
                }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Kuratowski immersions
// ---------------------------------------------------------------------------

struct ImmersionFreeReport {
    bool free = true;
    std::string pattern;   // "K5" or "K3,3" when a witness exists
    ImmersionModel model;  // the witness
};

/// Searches for a weak immersion of K5 and then of K3,3.
inline ImmersionFreeReport is_kuratowski_immersion_free(const MultiGraph& g, unsigned seed = 0) {
    ImmersionFreeReport report;
    if (auto m = contains_immersion(g, complete_graph(5), seed)) {
        report.free = false;
        report.pattern = "K5";
        report.model = *m;
        return report;
    }
    if (auto m = contains_immersion(g, complete_bipartite(3, 3), seed)) {
        report.free = false;
        report.pattern = "K3,3";
        report.model = *m;
        return report;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Witness text format
// ---------------------------------------------------------------------------
//
//   immersion-kit-witness v1
//   kind immersion | strong-immersion | topological-minor
//   vertex <pattern_v> -> <host_v>
//   path <pattern_e>: <host edge ids in order from the image of the lower
//                      pattern endpoint>
//
// Minor witnesses use "kind minor" with "branch <pattern_v>: <host vs>" and
// "edge <pattern_e> -> <host_e>" lines instead.

inline void write_immersion_witness(std::ostream& out, const MultiGraph& h, const std::string& kind,
                                    const ImmersionModel& m) {
    out << "immersion-kit-witness v1\n";
    out << "kind " << kind << "\n";
    for (const auto& [hv, gv] : m.vertex_map) out << "vertex " << hv << " -> " << gv << "\n";
    for (const auto& [he, p] : m.edge_paths) {
        Path path = p;
        VertexId start = m.vertex_map.at(h.endpoints(he).first);
        if (path.front() != start) path = path.reversed();
        out << "path " << he << ":";
        for (EdgeId e : path.edges) out << " " << e;
        out << "\n";
    }
}

inline std::string write_immersion_witness(const MultiGraph& h, const std::string& kind,
                                           const ImmersionModel& m) {
    std::ostringstream out;
    write_immersion_witness(out, h, kind, m);
    return out.str();
}

struct ParsedWitness {
    std::string kind;
    ImmersionModel model;
};

inline ParsedWitness read_immersion_witness(std::istream& in, const MultiGraph& g, const MultiGraph& h) {
    ParsedWitness w;
    std::string line;
    int line_no = 0;
    bool header = false;
    std::map<EdgeId, std::vector<EdgeId>> raw_paths;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        std::string word;
        ss >> word;
        if (!header) {
            if (word != "immersion-kit-witness") throw parse_error(line_no, "expected witness header");
            std::string version;
            ss >> version;
            if (version != "v1") throw parse_error(line_no, "unsupported witness version");
            header = true;
        } else if (word == "kind") {
            if (!(ss >> w.kind)) throw parse_error(line_no, "missing kind");
        } else if (word == "vertex") {
            VertexId a, b;
            std::string arrow;
            if (!(ss >> a >> arrow >> b) || arrow != "->") throw parse_error(line_no, "malformed vertex line");
            w.model.vertex_map[a] = b;
        } else if (word == "path") {
            std::string id_token;
            if (!(ss >> id_token) || id_token.empty() || id_token.back() != ':')
                throw parse_error(line_no, "malformed path line");
            EdgeId he;
            try {
                he = std::stoi(id_token.substr(0, id_token.size() - 1));
            } catch (...) {
                throw parse_error(line_no, "malformed path edge id");
            }
            std::vector<EdgeId> ids;
            EdgeId e;
            while (ss >> e) ids.push_back(e);
            raw_paths[he] = ids;
        } else {
            throw parse_error(line_no, "unrecognized witness line");
        }
    }
    if (!header) throw parse_error(1, "empty witness");
    for (const auto& [he, ids] : raw_paths) {
        if (!h.has_edge(he)) throw parse_error(0, "witness path for unknown pattern edge");
        VertexId hu = h.endpoints(he).first;
        auto it = w.model.vertex_map.find(hu);
        if (it == w.model.vertex_map.end()) throw parse_error(0, "witness path without mapped endpoint");
        w.model.edge_paths[he] = path_from_edges(g, it->second, ids);
    }
    return w;
}

inline ParsedWitness read_immersion_witness(const std::string& text, const MultiGraph& g,
                                            const MultiGraph& h) {
    std::istringstream in(text);
    return read_immersion_witness(in, g, h);
}

inline void write_minor_witness(std::ostream& out, const MinorModel& m) {
    out << "immersion-kit-witness v1\n";
    out << "kind minor\n";
    for (const auto& [hv, set] : m.branch_sets) {
        out << "branch " << hv << ":";
        for (VertexId v : set) out << " " << v;
        out << "\n";
    }
    for (const auto& [he, ge] : m.edge_map) out << "edge " << he << " -> " << ge << "\n";
}

inline MinorModel read_minor_witness(std::istream& in) {
    MinorModel m;
    std::string line;
    int line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        std::string word;
        ss >> word;
        if (!header) {
            if (word != "immersion-kit-witness") throw parse_error(line_no, "expected witness header");
            header = true;
        } else if (word == "kind") {
            std::string kind;
            ss >> kind;
            if (kind != "minor") throw parse_error(line_no, "expected kind minor");
        } else if (word == "branch") {
            std::string id_token;
            if (!(ss >> id_token) || id_token.empty() || id_token.back() != ':')
                throw parse_error(line_no, "malformed branch line");
            VertexId hv;
            try {
                hv = std::stoi(id_token.substr(0, id_token.size() - 1));
            } catch (...) {
                throw parse_error(line_no, "malformed branch vertex id");
            }
            VertexId v;
            while (ss >> v) m.branch_sets[hv].insert(v);
        } else if (word == "edge") {
            EdgeId a, b;
            std::string arrow;
            if (!(ss >> a >> arrow >> b) || arrow != "->") throw parse_error(line_no, "malformed edge line");
            m.edge_map[a] = b;
        } else {
            throw parse_error(line_no, "unrecognized witness line");
        }
    }
    if (!header) throw parse_error(1, "empty witness");
    return m;
}

inline std::string write_minor_witness(const MinorModel& m) {
    std::ostringstream out;
    write_minor_witness(out, m);
    return out.str();
}

inline MinorModel read_minor_witness(const std::string& text) {
    std::istringstream in(text);
    return read_minor_witness(in);
}

}  // namespace imkit
