#pragma once

#include <optional>
#include <queue>

#include "imkit/multigraph.hpp"

namespace imkit {

// ---------------------------------------------------------------------------
// Components
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::vector<VertexId>> component_vertex_sets(const MultiGraph& g) {
    std::set<VertexId> unseen;
    for (VertexId v : g.vertices()) unseen.insert(v);
    std::vector<std::vector<VertexId>> out;
    while (!unseen.empty()) {
        VertexId root = *unseen.begin();
        std::vector<VertexId> comp;
        std::queue<VertexId> q;
        q.push(root);
        unseen.erase(root);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            comp.push_back(v);
            for (EdgeId e : g.incident_edges(v)) {
                VertexId w = g.other_end(e, v);
                if (unseen.erase(w)) q.push(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline MultiGraph induced_subgraph(const MultiGraph& g, const std::vector<VertexId>& verts) {
    MultiGraph out;
    std::set<VertexId> keep(verts.begin(), verts.end());
    for (VertexId v : verts) out.add_vertex_id(v);
    for (const auto& [e, rec] : g.edges())
        if (keep.count(rec.u) && keep.count(rec.v)) out.add_edge_id(e, rec.u, rec.v);
    out.reserve_ids(g.next_vertex_id(), g.next_edge_id());
    return out;
}

}  // namespace detail

/// Connected components as full graph values with the original ids, ordered
/// by smallest contained vertex id.
inline std::vector<MultiGraph> components(const MultiGraph& g) {
    std::vector<MultiGraph> out;
    for (const auto& comp : detail::component_vertex_sets(g)) out.push_back(detail::induced_subgraph(g, comp));
    return out;
}

inline bool is_connected(const MultiGraph& g) {
    return detail::component_vertex_sets(g).size() == 1;
}

// ---------------------------------------------------------------------------
// Unit-capacity flow
// ---------------------------------------------------------------------------

namespace detail {

// Flow over the undirected graph with one unit of capacity per edge in either
// direction (net), plus a unit arc from each target to an implicit super
// sink. Augmentation is BFS over residual arcs in sorted edge-id order, so
// the whole computation is deterministic.
struct UnitFlow {
    const MultiGraph* g;
    VertexId source;
    std::map<EdgeId, int> flow;       // net flow, signed relative to (u -> v), u < v
    std::map<VertexId, int> sink_use; // used sink arcs (targets only)
    std::set<VertexId> sinks;

    UnitFlow(const MultiGraph& graph, VertexId s, const std::vector<VertexId>& targets) : g(&graph), source(s) {
        for (VertexId t : targets) {
            sinks.insert(t);
            sink_use[t] = 0;
        }
    }

    int residual(EdgeId e, VertexId from) const {
        auto [u, v] = g->endpoints(e);
        int f = flow.count(e) ? flow.at(e) : 0;
        return (from == u) ? 1 - f : 1 + f;
    }

    void push(EdgeId e, VertexId from) {
        auto [u, v] = g->endpoints(e);
        flow[e] += (from == u) ? 1 : -1;
    }

    // One augmenting path source -> super sink; true when found.
    bool augment() {
        std::map<VertexId, std::pair<VertexId, EdgeId>> parent;
        std::queue<VertexId> q;
        q.push(source);
        parent[source] = {source, -1};
        VertexId reached = -1;
        while (!q.empty() && reached < 0) {
            VertexId v = q.front();
            q.pop();
            for (EdgeId e : g->incident_edges(v)) {
                VertexId w = g->other_end(e, v);
                if (parent.count(w) || residual(e, v) <= 0) continue;
                parent[w] = {v, e};
                if (sinks.count(w) && sink_use.at(w) == 0) {
                    reached = w;
                    break;
                }
                q.push(w);
            }
        }
        if (reached < 0) return false;
        sink_use[reached] = 1;
        VertexId at = reached;
        while (at != source) {
            auto [prev, e] = parent.at(at);
            push(e, prev);
            at = prev;
        }
        return true;
    }

    int run(int cap) {
        int value = 0;
        while (value < cap && augment()) ++value;
        return value;
    }

    // Vertices residual-reachable from the source; defines the canonical
    // minimum cut after a maximum flow.
    std::set<VertexId> reachable() const {
        std::set<VertexId> seen{source};
        std::queue<VertexId> q;
        q.push(source);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (EdgeId e : g->incident_edges(v)) {
                VertexId w = g->other_end(e, v);
                if (!seen.count(w) && residual(e, v) > 0) {
                    seen.insert(w);
                    q.push(w);
                }
            }
        }
        return seen;
    }

    // Extracts one source -> target path per unit of flow, consuming it. A
    // walk follows flow-carrying arcs and ends at the first target whose sink
    // arc is still unserved (conservation guarantees it never stalls
    // elsewhere). Revisits are shortcut away, which is exactly cycle
    // cancellation, so the returned paths are vertex-simple and pairwise
    // edge-disjoint. Order is arbitrary; callers match paths by endpoint.
    std::vector<Path> extract_paths() {
        std::vector<Path> out;
        std::map<VertexId, int> pending = sink_use;
        int remaining = 0;
        for (const auto& [t, used] : pending) remaining += used;
        while (remaining > 0) {
            std::vector<VertexId> walk{source};
            std::vector<EdgeId> walk_edges;
            VertexId at = source;
            while (true) {
                if (at != source) {
                    auto p = pending.find(at);
                    if (p != pending.end() && p->second == 1) {
                        p->second = 0;
                        --remaining;
                        break;
                    }
                }
                EdgeId step = -1;
                for (EdgeId e : g->incident_edges(at)) {
                    auto [u, v] = g->endpoints(e);
                    int f = flow.count(e) ? flow.at(e) : 0;
                    if ((at == u && f > 0) || (at == v && f < 0)) {
                        step = e;
                        break;
                    }
                }
                if (step < 0) throw graph_error("internal: flow decomposition ran dry");
                push(step, g->other_end(step, at));  // cancel one unit
                at = g->other_end(step, at);
                auto seen = std::find(walk.begin(), walk.end(), at);
                if (seen != walk.end()) {
                    size_t keep = seen - walk.begin();
                    walk.resize(keep + 1);
                    walk_edges.resize(keep);
                } else {
                    walk.push_back(at);
                    walk_edges.push_back(step);
                }
            }
            Path p;
            p.vertices = walk;
            p.edges = walk_edges;
            out.push_back(std::move(p));
        }
        return out;
    }
};

}  // namespace detail

/// Minimum edge cut separating s and t: its size and the edge set, derived
/// from the residual-reachable side after a maximum flow (deterministic).
inline std::pair<int, std::vector<EdgeId>> min_edge_cut_between(const MultiGraph& g, VertexId s, VertexId t) {
    if (!g.has_vertex(s) || !g.has_vertex(t)) throw graph_error("min_edge_cut_between: unknown vertex");
    if (s == t) throw graph_error("min_edge_cut_between: s and t must differ");
    detail::UnitFlow net(g, s, {t});
    int flow_value = 0;
    while (true) {
        net.sink_use[t] = 0;  // the sink arc caps at one unit; re-arm it per round
        if (!net.augment()) break;
        ++flow_value;
    }
    if (flow_value == 0) {
        // A size-0 answer would be mistakable for a real cut, so refuse.
        throw graph_error("min_edge_cut_between: s and t lie in different components");
    }
    auto side = net.reachable();
    std::vector<EdgeId> cut;
    for (const auto& [e, rec] : g.edges())
        if (side.count(rec.u) != side.count(rec.v)) cut.push_back(e);
    if (static_cast<int>(cut.size()) != flow_value) throw graph_error("internal: min cut does not match flow value");
    return {flow_value, cut};
}

// ---------------------------------------------------------------------------
// Internal cuts and splits
// ---------------------------------------------------------------------------

/// A minimal edge cut of a connected graph, together with the vertex sets of
/// the two sides it leaves behind. side_a holds the smaller leading vertex.
struct EdgeCut {
    std::vector<EdgeId> edges;
    std::vector<VertexId> side_a, side_b;
    bool minimal = false;
    bool internal = false;
};

namespace detail {

// Tests whether removing `cut` from connected g yields exactly two
// components with every cut edge crossing between them. Returns the sides.
inline std::optional<std::pair<std::vector<VertexId>, std::vector<VertexId>>> cut_sides(
    const MultiGraph& g, const std::vector<EdgeId>& cut) {
    std::set<EdgeId> removed(cut.begin(), cut.end());
    std::set<VertexId> unseen;
    for (VertexId v : g.vertices()) unseen.insert(v);
    std::vector<std::vector<VertexId>> comps;
    while (!unseen.empty()) {
        VertexId root = *unseen.begin();
        std::vector<VertexId> comp;
        std::queue<VertexId> q;
        q.push(root);
        unseen.erase(root);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            comp.push_back(v);
            for (EdgeId e : g.incident_edges(v)) {
                if (removed.count(e)) continue;
                VertexId w = g.other_end(e, v);
                if (unseen.erase(w)) q.push(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
        if (comps.size() > 2) return std::nullopt;
    }
    if (comps.size() != 2) return std::nullopt;
    std::set<VertexId> first(comps[0].begin(), comps[0].end());
    for (EdgeId e : cut) {
        auto [u, v] = g.endpoints(e);
        if (first.count(u) == first.count(v)) return std::nullopt;  // a non-crossing edge: not minimal
    }
    return std::make_pair(comps[0], comps[1]);
}

}  // namespace detail

/// Recomputes the side and flag data of a cut against g from scratch.
/// Throws when the edge set is not a minimal cut of connected g.
inline EdgeCut validate_cut(const MultiGraph& g, const std::vector<EdgeId>& edges) {
    if (!is_connected(g)) throw graph_error("validate_cut: graph must be connected");
    if (edges.empty()) throw graph_error("validate_cut: empty edge set");
    for (EdgeId e : edges)
        if (!g.has_edge(e)) throw graph_error("validate_cut: unknown edge " + std::to_string(e));
    std::set<EdgeId> dedup(edges.begin(), edges.end());
    if (dedup.size() != edges.size()) throw graph_error("validate_cut: repeated edge id");
    std::vector<EdgeId> sorted(dedup.begin(), dedup.end());
    auto sides = detail::cut_sides(g, sorted);
    if (!sides) throw graph_error("validate_cut: edge set is not a minimal cut");
    EdgeCut cut;
    cut.edges = sorted;
    cut.side_a = sides->first;
    cut.side_b = sides->second;
    if (cut.side_b.front() < cut.side_a.front()) std::swap(cut.side_a, cut.side_b);
    cut.minimal = true;
    cut.internal = cut.side_a.size() >= 2 && cut.side_b.size() >= 2;
    return cut;
}

/// Smallest internal cut with at most max_size edges (max_size in [1, 3]),
/// or nothing. Ties go to the lexicographically least sorted edge-id set;
/// enumeration is by ascending cardinality, then lexicographic, so the first
/// hit is the answer. Bounded subset enumeration: exhaustive and fast at the
/// scales the decomposer feeds in.
inline std::optional<EdgeCut> find_internal_cut(const MultiGraph& g, int max_size) {
    if (max_size < 1 || max_size > 3) throw graph_error("find_internal_cut: max_size must be in [1, 3]");
    if (!is_connected(g)) throw graph_error("find_internal_cut: graph must be connected");
    if (g.num_vertices() < 4) return std::nullopt;  // two sides of two vertices each, minimum
    std::vector<EdgeId> ids = g.edge_ids();
    int m = static_cast<int>(ids.size());
    auto check = [&](std::vector<EdgeId> subset) -> std::optional<EdgeCut> {
        auto sides = detail::cut_sides(g, subset);
        if (!sides || sides->first.size() < 2 || sides->second.size() < 2) return std::nullopt;
        EdgeCut cut;
        cut.edges = std::move(subset);
        cut.side_a = sides->first;
        cut.side_b = sides->second;
        if (cut.side_b.front() < cut.side_a.front()) std::swap(cut.side_a, cut.side_b);
        cut.minimal = cut.internal = true;
        return cut;
    };
    for (int i = 0; i < m; ++i) {
        if (auto cut = check({ids[i]})) return cut;
    }
    if (max_size >= 2) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (auto cut = check({ids[i], ids[j]})) return cut;
    }
    if (max_size >= 3) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int k = j + 1; k < m; ++k)
                    if (auto cut = check({ids[i], ids[j], ids[k]})) return cut;
    }
    return std::nullopt;
}

/// Everything needed to undo one split. Stubs keep the ids of the cut edges
/// they descend from, in both pieces, so the pairing is stored explicitly but
/// is the identity on ids by construction.
struct SplitRecord {
    EdgeCut cut;
    VertexId new_vertex_a = -1;  // stands in for side_b inside component_a
    VertexId new_vertex_b = -1;  // stands in for side_a inside component_b
    std::vector<std::pair<EdgeId, EdgeId>> pairing;
    MultiGraph component_a, component_b;
};

/// Splits connected g along a minimal internal cut. Each piece keeps its
/// side's vertices and edges under the original ids; the opposite side is
/// contracted to one fresh vertex carrying the cut-edge stubs.
inline SplitRecord split(const MultiGraph& g, const EdgeCut& cut) {
    EdgeCut checked = validate_cut(g, cut.edges);
    if (!checked.internal) throw graph_error("split: cut is not internal (a side has fewer than 2 vertices)");
    SplitRecord rec;
    rec.cut = checked;
    rec.new_vertex_a = g.next_vertex_id();
    rec.new_vertex_b = rec.new_vertex_a + 1;
    std::set<VertexId> in_a(checked.side_a.begin(), checked.side_a.end());
    auto build_piece = [&](const std::vector<VertexId>& side, VertexId fresh, bool side_is_a) {
        MultiGraph piece;
        for (VertexId v : side) piece.add_vertex_id(v);
        piece.add_vertex_id(fresh);
        std::set<VertexId> here(side.begin(), side.end());
        for (const auto& [e, erec] : g.edges())
            if (here.count(erec.u) && here.count(erec.v)) piece.add_edge_id(e, erec.u, erec.v);
        for (EdgeId f : checked.edges) {
            auto [u, v] = g.endpoints(f);
            bool u_in_a = in_a.count(u) > 0;
            piece.add_edge_id(f, (u_in_a == side_is_a) ? u : v, fresh);
        }
        piece.reserve_ids(rec.new_vertex_b + 1, g.next_edge_id());
        return piece;
    };
    rec.component_a = build_piece(checked.side_a, rec.new_vertex_a, true);
    rec.component_b = build_piece(checked.side_b, rec.new_vertex_b, false);
    for (EdgeId f : checked.edges) rec.pairing.push_back({f, f});
    return rec;
}

/// k-edge-sum at (g1, v1) and (g2, v2) under the stub pairing: disjoint
/// union, lift each pair, drop the merged vertex. Surviving id collisions in
/// g2 are relabeled on entry; a lifted edge inherits the id of its g1-side
/// stub, which is what makes split followed by edge_sum an exact inverse.
inline MultiGraph edge_sum(const MultiGraph& g1, VertexId v1, const MultiGraph& g2_in, VertexId v2,
                           const std::vector<std::pair<EdgeId, EdgeId>>& pairing) {
    if (!g1.has_vertex(v1)) throw graph_error("edge_sum: v1 not in g1");
    if (!g2_in.has_vertex(v2)) throw graph_error("edge_sum: v2 not in g2");
    std::vector<EdgeId> stubs1 = g1.incident_edges(v1);
    std::vector<EdgeId> stubs2 = g2_in.incident_edges(v2);
    if (stubs1.size() != stubs2.size() || stubs1.empty())
        throw graph_error("edge_sum: v1 and v2 must have equal positive degree");
    if (pairing.size() != stubs1.size()) throw graph_error("edge_sum: pairing size does not match degree");
    {
        std::set<EdgeId> a, b;
        for (auto [x, y] : pairing) {
            if (std::find(stubs1.begin(), stubs1.end(), x) == stubs1.end())
                throw graph_error("edge_sum: pairing names a non-stub edge of g1");
            if (std::find(stubs2.begin(), stubs2.end(), y) == stubs2.end())
                throw graph_error("edge_sum: pairing names a non-stub edge of g2");
            if (!a.insert(x).second || !b.insert(y).second) throw graph_error("edge_sum: pairing is not a bijection");
        }
    }

    // Relabel-on-entry: only surviving ids matter. All of g1's ids survive
    // (stub ids come back as lifted edges), so g2's other vertices and its
    // non-stub edges must dodge them.
    MultiGraph g2 = g2_in;
    std::map<VertexId, VertexId> vmap;
    {
        VertexId fresh_v = std::max(g1.next_vertex_id(), g2.next_vertex_id());
        EdgeId fresh_e = std::max(g1.next_edge_id(), g2.next_edge_id());
        std::set<EdgeId> stub_set(stubs2.begin(), stubs2.end());
        bool clash = false;
        for (VertexId v : g2.vertices())
            if (g1.has_vertex(v)) clash = true;
        for (EdgeId e : g2.edge_ids())
            if (!stub_set.count(e) && g1.has_edge(e)) clash = true;
        if (clash) {
            MultiGraph relabeled;
            for (VertexId v : g2.vertices()) {
                VertexId nv = g1.has_vertex(v) ? fresh_v++ : v;
                vmap[v] = nv;
                relabeled.add_vertex_id(nv);
            }
            for (const auto& [e, erec] : g2.edges()) {
                EdgeId ne = (!stub_set.count(e) && g1.has_edge(e)) ? fresh_e++ : e;
                if (ne != e) {
                    // keep the pairing valid: only non-stubs are renamed
                    relabeled.add_edge_id(ne, vmap[erec.u], vmap[erec.v]);
                } else {
                    relabeled.add_edge_id(e, vmap[erec.u], vmap[erec.v]);
                }
            }
            relabeled.reserve_ids(fresh_v, fresh_e);
            g2 = std::move(relabeled);
            v2 = vmap.at(v2);
        }
    }

    MultiGraph out = g1;
    std::map<EdgeId, VertexId> far1;  // stub -> endpoint opposite v1
    for (EdgeId e : stubs1) far1[e] = g1.other_end(e, v1);
    out.remove_vertex(v1);
    for (VertexId v : g2.vertices())
        if (v != v2) out.add_vertex_id(v);
    std::set<EdgeId> stub_set2(stubs2.begin(), stubs2.end());
    for (const auto& [e, erec] : g2.edges())
        if (!stub_set2.count(e)) out.add_edge_id(e, erec.u, erec.v);
    for (auto [a, b] : pairing) {
        VertexId y = far1.at(a);
        VertexId z = g2.other_end(b, v2);
        out.add_edge_id(a, y, z);
    }
    out.reserve_ids(std::max(g1.next_vertex_id(), g2.next_vertex_id()),
                    std::max(g1.next_edge_id(), g2.next_edge_id()));
    return out;
}

// ---------------------------------------------------------------------------
// Menger-style fans
// ---------------------------------------------------------------------------

/// Maximum number of pairwise edge-disjoint paths from v that end at
/// pairwise distinct members of targets (each target absorbs one path).
inline int max_fan_flow(const MultiGraph& g, VertexId v, const std::vector<VertexId>& targets) {
    detail::UnitFlow net(g, v, targets);
    return net.run(static_cast<int>(targets.size()));
}

/// A family of pairwise edge-disjoint vertex-simple paths, the j-th running
/// from v to targets[j], or nothing when no such family exists. Preconditions
/// (distinct known targets, v not among them, deg(v) >= |targets|) throw.
inline std::optional<std::vector<Path>> menger_fan(const MultiGraph& g, VertexId v,
                                                   const std::vector<VertexId>& targets) {
    if (!g.has_vertex(v)) throw graph_error("menger_fan: unknown vertex " + std::to_string(v));
    if (targets.empty()) throw graph_error("menger_fan: no targets");
    std::set<VertexId> dedup;
    for (VertexId t : targets) {
        if (!g.has_vertex(t)) throw graph_error("menger_fan: unknown target " + std::to_string(t));
        if (t == v) throw graph_error("menger_fan: v may not be a target");
        if (!dedup.insert(t).second) throw graph_error("menger_fan: targets must be distinct");
    }
    int r = static_cast<int>(targets.size());
    if (g.degree(v) < r) throw graph_error("menger_fan: deg(v) < number of targets");
    detail::UnitFlow net(g, v, targets);
    if (net.run(r) < r) return std::nullopt;
    std::vector<Path> raw = net.extract_paths();
    std::vector<Path> ordered(targets.size());
    for (auto& p : raw) {
        auto slot = std::find(targets.begin(), targets.end(), p.back());
        ordered[slot - targets.begin()] = std::move(p);
    }
    for (const Path& p : ordered)
        if (!is_valid_path(g, p)) throw graph_error("internal: menger_fan produced an invalid path");
    return ordered;
}

}  // namespace imkit
