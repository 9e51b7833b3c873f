#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace imkit {

using VertexId = int;
using EdgeId = int;

class graph_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an input exceeds a size guard. Callers that know what they are
// doing can pass override_guard = true to the guarded functions instead.
class capacity_error : public graph_error {
public:
    using graph_error::graph_error;
};

class parse_error : public graph_error {
public:
    parse_error(int line, const std::string& what)
        : graph_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct EdgeRecord {
    VertexId u, v;  // normalized so that u < v
    bool operator==(const EdgeRecord&) const = default;
};

struct ProvenanceNote {
    enum class Kind { contracted, lifted, subdivided };
    Kind kind;
    VertexId vertex = -1;
    EdgeId edge = -1;
};

/// Loopless undirected multigraph with stable integer ids.
///
/// Values are cheap to copy at the scales this library targets, and every
/// editing operation below returns a new value instead of mutating in place.
/// Fresh ids come from per-value monotone counters, so ids created in a copy
/// never collide with ids already present in that copy.
class MultiGraph {
public:
    MultiGraph() = default;

    static MultiGraph with_vertices(int n) {
        MultiGraph g;
        for (int i = 0; i < n; ++i) g.add_vertex();
        return g;
    }

    VertexId add_vertex() {
        VertexId v = next_vertex_++;
        adjacency_.emplace(v, std::vector<EdgeId>{});
        return v;
    }

    void add_vertex_id(VertexId v) {
        if (adjacency_.count(v)) throw graph_error("add_vertex_id: vertex " + std::to_string(v) + " already present");
        adjacency_.emplace(v, std::vector<EdgeId>{});
        next_vertex_ = std::max(next_vertex_, v + 1);
    }

    EdgeId add_edge(VertexId u, VertexId v) {
        EdgeId e = next_edge_;
        add_edge_id(e, u, v);
        return e;
    }

    void add_edge_id(EdgeId e, VertexId u, VertexId v) {
        if (u == v) throw graph_error("add_edge: loops are forbidden");
        require_vertex(u, "add_edge");
        require_vertex(v, "add_edge");
        if (edges_.count(e)) throw graph_error("add_edge_id: edge " + std::to_string(e) + " already present");
        edges_.emplace(e, EdgeRecord{std::min(u, v), std::max(u, v)});
        insert_sorted(adjacency_[u], e);
        insert_sorted(adjacency_[v], e);
        next_edge_ = std::max(next_edge_, e + 1);
    }

    void remove_edge(EdgeId e) {
        auto it = edges_.find(e);
        if (it == edges_.end()) throw graph_error("remove_edge: unknown edge " + std::to_string(e));
        erase_value(adjacency_[it->second.u], e);
        erase_value(adjacency_[it->second.v], e);
        edges_.erase(it);
    }

    void remove_vertex(VertexId v) {
        require_vertex(v, "remove_vertex");
        std::vector<EdgeId> incident = adjacency_[v];
        for (EdgeId e : incident) remove_edge(e);
        adjacency_.erase(v);
    }

    bool has_vertex(VertexId v) const { return adjacency_.count(v) != 0; }
    bool has_edge(EdgeId e) const { return edges_.count(e) != 0; }

    std::pair<VertexId, VertexId> endpoints(EdgeId e) const {
        auto it = edges_.find(e);
        if (it == edges_.end()) throw graph_error("endpoints: unknown edge " + std::to_string(e));
        return {it->second.u, it->second.v};
    }

    VertexId other_end(EdgeId e, VertexId v) const {
        auto [a, b] = endpoints(e);
        if (v == a) return b;
        if (v == b) return a;
        throw graph_error("other_end: vertex " + std::to_string(v) + " is not an endpoint of edge " + std::to_string(e));
    }

    const std::vector<EdgeId>& incident_edges(VertexId v) const {
        auto it = adjacency_.find(v);
        if (it == adjacency_.end()) throw graph_error("incident_edges: unknown vertex " + std::to_string(v));
        return it->second;
    }

    int degree(VertexId v) const { return static_cast<int>(incident_edges(v).size()); }

    std::vector<VertexId> neighbors(VertexId v) const {
        std::set<VertexId> out;
        for (EdgeId e : incident_edges(v)) out.insert(other_end(e, v));
        return {out.begin(), out.end()};
    }

    int multiplicity(VertexId u, VertexId v) const {
        if (!has_vertex(u) || !has_vertex(v) || u == v) return 0;
        int count = 0;
        for (EdgeId e : incident_edges(u))
            if (other_end(e, u) == v) ++count;
        return count;
    }

    std::vector<VertexId> vertices() const {
        std::vector<VertexId> out;
        out.reserve(adjacency_.size());
        for (const auto& [v, _] : adjacency_) out.push_back(v);
        return out;
    }

    std::vector<EdgeId> edge_ids() const {
        std::vector<EdgeId> out;
        out.reserve(edges_.size());
        for (const auto& [e, _] : edges_) out.push_back(e);
        return out;
    }

    const std::map<EdgeId, EdgeRecord>& edges() const { return edges_; }

    int num_vertices() const { return static_cast<int>(adjacency_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    int max_degree() const {
        int d = 0;
        for (const auto& [v, inc] : adjacency_) d = std::max(d, static_cast<int>(inc.size()));
        return d;
    }

    bool is_subcubic() const { return max_degree() <= 3; }

    bool is_simple() const {
        std::set<std::pair<VertexId, VertexId>> seen;
        for (const auto& [e, rec] : edges_)
            if (!seen.insert({rec.u, rec.v}).second) return false;
        return true;
    }

    VertexId next_vertex_id() const { return next_vertex_; }
    EdgeId next_edge_id() const { return next_edge_; }

    // Bumps the id counters; used by the split machinery to pre-allocate
    // deterministic fresh ids across both pieces.
    void reserve_ids(VertexId v, EdgeId e) {
        next_vertex_ = std::max(next_vertex_, v);
        next_edge_ = std::max(next_edge_, e);
    }

    const std::vector<ProvenanceNote>& provenance() const { return provenance_; }
    void note(ProvenanceNote n) { provenance_.push_back(n); }

    // Structural equality: same vertex set and the same edge-id -> endpoints
    // map. Counters and provenance notes are deliberately ignored.
    friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
        if (a.adjacency_.size() != b.adjacency_.size()) return false;
        for (const auto& [v, _] : a.adjacency_)
            if (!b.has_vertex(v)) return false;
        return a.edges_ == b.edges_;
    }

private:
    void require_vertex(VertexId v, const char* op) const {
        if (!has_vertex(v)) throw graph_error(std::string(op) + ": unknown vertex " + std::to_string(v));
    }

    static void insert_sorted(std::vector<EdgeId>& vec, EdgeId e) {
        vec.insert(std::lower_bound(vec.begin(), vec.end(), e), e);
    }

    static void erase_value(std::vector<EdgeId>& vec, EdgeId e) {
        vec.erase(std::remove(vec.begin(), vec.end(), e), vec.end());
    }

    std::map<VertexId, std::vector<EdgeId>> adjacency_;
    std::map<EdgeId, EdgeRecord> edges_;
    VertexId next_vertex_ = 0;
    EdgeId next_edge_ = 0;
    std::vector<ProvenanceNote> provenance_;
};

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// Alternating vertex/edge sequence. vertices.size() == edges.size() + 1,
/// except that a single-vertex path has one vertex and no edges.
struct Path {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;

    VertexId front() const { return vertices.front(); }
    VertexId back() const { return vertices.back(); }
    int length() const { return static_cast<int>(edges.size()); }

    bool contains_vertex(VertexId v) const {
        return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
    }

    int position_of(VertexId v) const {
        auto it = std::find(vertices.begin(), vertices.end(), v);
        if (it == vertices.end()) throw graph_error("position_of: vertex " + std::to_string(v) + " not on path");
        return static_cast<int>(it - vertices.begin());
    }

    /// Forward slice from vertex a to vertex b; a must not occur after b.
    Path slice(VertexId a, VertexId b) const {
        int i = position_of(a), j = position_of(b);
        if (i > j) throw graph_error("slice: endpoints out of order along the path");
        Path out;
        out.vertices.assign(vertices.begin() + i, vertices.begin() + j + 1);
        out.edges.assign(edges.begin() + i, edges.begin() + j);
        return out;
    }

    Path reversed() const {
        Path out = *this;
        std::reverse(out.vertices.begin(), out.vertices.end());
        std::reverse(out.edges.begin(), out.edges.end());
        return out;
    }

    friend Path concat(const Path& p, const Path& q) {
        if (p.vertices.empty()) return q;
        if (q.vertices.empty()) return p;
        if (p.back() != q.front()) throw graph_error("concat: paths do not meet");
        Path out = p;
        out.vertices.insert(out.vertices.end(), q.vertices.begin() + 1, q.vertices.end());
        out.edges.insert(out.edges.end(), q.edges.begin(), q.edges.end());
        return out;
    }

    bool operator==(const Path&) const = default;
};

inline Path path_from_edges(const MultiGraph& g, VertexId start, const std::vector<EdgeId>& edges) {
    Path p;
    p.vertices.push_back(start);
    VertexId at = start;
    for (EdgeId e : edges) {
        at = g.other_end(e, at);  // throws if e is not incident to the walk front
        p.vertices.push_back(at);
        p.edges.push_back(e);
    }
    return p;
}

/// Checks alternation against g, edge distinctness, and (unless
/// allow_repeated_vertices) vertex distinctness. The repeated-vertex form is
/// the trail variant.
inline bool is_valid_path(const MultiGraph& g, const Path& p, bool allow_repeated_vertices = false) {
    if (p.vertices.empty()) return false;
    if (p.vertices.size() != p.edges.size() + 1) return false;
    for (VertexId v : p.vertices)
        if (!g.has_vertex(v)) return false;
    std::set<EdgeId> seen_edges;
    for (size_t i = 0; i < p.edges.size(); ++i) {
        EdgeId e = p.edges[i];
        if (!g.has_edge(e)) return false;
        auto [a, b] = g.endpoints(e);
        VertexId x = p.vertices[i], y = p.vertices[i + 1];
        if (!((a == x && b == y) || (a == y && b == x))) return false;
        if (!seen_edges.insert(e).second) return false;
    }
    if (!allow_repeated_vertices) {
        std::set<VertexId> seen(p.vertices.begin(), p.vertices.end());
        if (seen.size() != p.vertices.size()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Editing operations
// ---------------------------------------------------------------------------

/// Removes the given vertices (with their incident edges) and edges.
/// Unknown ids are an error; an id may not appear in both lists implicitly
/// (a listed edge already removed by a listed vertex is fine).
inline MultiGraph erase(const MultiGraph& g, const std::vector<VertexId>& vertex_ids,
                        const std::vector<EdgeId>& edge_ids) {
    MultiGraph out = g;
    for (VertexId v : vertex_ids) {
        if (!out.has_vertex(v)) throw graph_error("erase: unknown vertex " + std::to_string(v));
        out.remove_vertex(v);
    }
    for (EdgeId e : edge_ids) {
        if (out.has_edge(e)) {
            out.remove_edge(e);
        } else if (!g.has_edge(e)) {
            throw graph_error("erase: unknown edge " + std::to_string(e));
        }
        // else: already gone with a deleted vertex, which is fine
    }
    return out;
}

/// Contracts edge e: both endpoints are replaced by one fresh vertex, every
/// parallel copy of e disappears (loops are not kept), and all other incident
/// edges keep their ids but get re-pointed at the fresh vertex.
inline MultiGraph contract(const MultiGraph& g, EdgeId e) {
    auto [x, y] = g.endpoints(e);
    MultiGraph out = g;
    VertexId merged = out.add_vertex();
    std::vector<std::pair<EdgeId, VertexId>> moved;
    for (EdgeId f : out.incident_edges(x)) {
        VertexId w = out.other_end(f, x);
        if (w != y) moved.push_back({f, w});
    }
    for (EdgeId f : out.incident_edges(y)) {
        VertexId w = out.other_end(f, y);
        if (w != x) moved.push_back({f, w});
    }
    out.remove_vertex(x);
    out.remove_vertex(y);
    for (auto [f, w] : moved) out.add_edge_id(f, merged, w);
    out.note({ProvenanceNote::Kind::contracted, merged, e});
    return out;
}

/// Replaces every edge {x, y} by a fresh degree-2 vertex w and fresh edges
/// {x, w}, {w, y}. The result is simple even when the input is not.
inline MultiGraph subdivide_all(const MultiGraph& g) {
    MultiGraph out = g;
    for (EdgeId e : g.edge_ids()) {
        auto [x, y] = out.endpoints(e);
        out.remove_edge(e);
        VertexId w = out.add_vertex();
        out.add_edge(x, w);
        out.add_edge(w, y);
        out.note({ProvenanceNote::Kind::subdivided, w, e});
    }
    return out;
}

/// Lifts the pair (e1, e2), which must share exactly one endpoint x:
/// both edges are removed and a fresh edge joins their other endpoints.
/// Parallel edges share two endpoints, so lifting them would create a loop
/// and is rejected.
inline MultiGraph lift(const MultiGraph& g, EdgeId e1, EdgeId e2) {
    if (e1 == e2) throw graph_error("lift: the two edges must be distinct");
    auto [a, b] = g.endpoints(e1);
    auto [c, d] = g.endpoints(e2);
    std::vector<VertexId> shared;
    for (VertexId v : {a, b})
        if (v == c || v == d) shared.push_back(v);
    if (shared.size() != 1)
        throw graph_error(shared.empty() ? "lift: edges share no endpoint"
                                         : "lift: edges are parallel, lifting would create a loop");
    VertexId x = shared[0];
    VertexId y = (a == x) ? b : a;
    VertexId z = (c == x) ? d : c;
    MultiGraph out = g;
    out.remove_edge(e1);
    out.remove_edge(e2);
    EdgeId fresh = out.add_edge(y, z);
    out.note({ProvenanceNote::Kind::lifted, x, fresh});
    return out;
}

// ---------------------------------------------------------------------------
// Isomorphism and canonical forms
// ---------------------------------------------------------------------------

namespace detail {

// Joint color refinement: refines vertex colors of both graphs in lockstep so
// color ids are comparable across them. New color ids are ranks in signature
// order, which makes them isomorphism-invariant (canonical_key depends on
// that). Returns false early when the color histograms diverge.
inline bool refine_colors(const MultiGraph& a, const MultiGraph& b,
                          std::map<VertexId, int>& ca, std::map<VertexId, int>& cb) {
    for (VertexId v : a.vertices()) ca[v] = a.degree(v);
    for (VertexId v : b.vertices()) cb[v] = b.degree(v);
    for (int round = 0; round < a.num_vertices() + 1; ++round) {
        using Sig = std::pair<int, std::vector<int>>;
        auto signature = [&](const MultiGraph& g, const std::map<VertexId, int>& col, VertexId v) {
            std::vector<int> nbr;
            for (EdgeId e : g.incident_edges(v)) nbr.push_back(col.at(g.other_end(e, v)));
            std::sort(nbr.begin(), nbr.end());
            return Sig{col.at(v), nbr};
        };
        std::map<Sig, int> dict;
        std::map<VertexId, Sig> sa, sb;
        for (VertexId v : a.vertices()) {
            sa[v] = signature(a, ca, v);
            dict[sa[v]] = 0;
        }
        for (VertexId v : b.vertices()) sb[v] = signature(b, cb, v);
        int rank = 0;
        for (auto& [sig, id] : dict) id = rank++;
        std::map<VertexId, int> na, nb;
        for (auto& [v, sig] : sa) na[v] = dict.at(sig);
        for (auto& [v, sig] : sb) {
            auto it = dict.find(sig);
            if (it == dict.end()) return false;
            nb[v] = it->second;
        }
        std::map<int, int> ha, hb;
        for (auto& [v, c] : na) ha[c]++;
        for (auto& [v, c] : nb) hb[c]++;
        if (ha != hb) return false;
        bool stable = (na == ca && nb == cb);
        ca = std::move(na);
        cb = std::move(nb);
        if (stable) break;
    }
    return true;
}

inline bool iso_extend(const MultiGraph& a, const MultiGraph& b, const std::vector<VertexId>& order,
                       size_t idx, std::map<VertexId, VertexId>& fwd, std::set<VertexId>& used,
                       const std::map<VertexId, int>& ca, const std::map<VertexId, int>& cb) {
    if (idx == order.size()) return true;
    VertexId v = order[idx];
    for (VertexId w : b.vertices()) {
        if (used.count(w) || cb.at(w) != ca.at(v)) continue;
        bool ok = true;
        for (const auto& [pv, pw] : fwd) {
            if (a.multiplicity(v, pv) != b.multiplicity(w, pw)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        fwd[v] = w;
        used.insert(w);
        if (iso_extend(a, b, order, idx + 1, fwd, used, ca, cb)) return true;
        fwd.erase(v);
        used.erase(w);
    }
    return false;
}

}  // namespace detail

/// Multiplicity-preserving isomorphism test. Degree-refined backtracking;
/// guarded at 12 vertices since the search is exponential in the worst case.
inline bool is_isomorphic(const MultiGraph& a, const MultiGraph& b, bool override_guard = false) {
    if (!override_guard && (a.num_vertices() > 12 || b.num_vertices() > 12))
        throw capacity_error("is_isomorphic: more than 12 vertices (pass override_guard to force)");
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
    std::map<VertexId, int> ca, cb;
    if (!detail::refine_colors(a, b, ca, cb)) return false;
    // Most-constrained-first: rare colors early.
    std::map<int, int> class_size;
    for (auto& [v, c] : ca) class_size[c]++;
    std::vector<VertexId> order = a.vertices();
    std::sort(order.begin(), order.end(), [&](VertexId x, VertexId y) {
        auto kx = std::make_tuple(class_size[ca[x]], ca[x], x);
        auto ky = std::make_tuple(class_size[ca[y]], ca[y], y);
        return kx < ky;
    });
    std::map<VertexId, VertexId> fwd;
    std::set<VertexId> used;
    return detail::iso_extend(a, b, order, 0, fwd, used, ca, cb);
}

/// True when h occurs in g as a subgraph: an injective vertex map under which
/// every multiplicity of h is available in g. Small inputs only.
inline bool contains_subgraph(const MultiGraph& g, const MultiGraph& h) {
    if (h.num_vertices() > g.num_vertices() || h.num_edges() > g.num_edges()) return false;
    std::vector<VertexId> order = h.vertices();
    std::sort(order.begin(), order.end(),
              [&](VertexId x, VertexId y) { return std::make_pair(-h.degree(x), x) < std::make_pair(-h.degree(y), y); });
    std::map<VertexId, VertexId> fwd;
    std::set<VertexId> used;
    auto extend = [&](auto&& self, size_t idx) -> bool {
        if (idx == order.size()) return true;
        VertexId v = order[idx];
        for (VertexId w : g.vertices()) {
            if (used.count(w) || g.degree(w) < h.degree(v)) continue;
            bool ok = true;
            for (const auto& [pv, pw] : fwd) {
                if (g.multiplicity(w, pw) < h.multiplicity(v, pv)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            fwd[v] = w;
            used.insert(w);
            if (self(self, idx + 1)) return true;
            fwd.erase(v);
            used.erase(w);
        }
        return false;
    };
    return extend(extend, 0);
}

namespace detail {

struct CanonState {
    const MultiGraph* g;
    std::vector<VertexId> verts;
    std::vector<int> best;  // row-encoded multiplicities of the best ordering
    std::vector<VertexId> best_order;
    bool have_best = false;
};

// Individualization with branch-and-bound on the row encoding: ordering
// position k contributes the multiplicities towards positions 0..k-1.
// `tight` records that the encoding so far equals the prefix of best; only
// then may a larger segment prune the branch.
inline void canon_search(CanonState& st, std::vector<VertexId>& order, std::vector<int>& rows,
                         std::set<VertexId>& used, std::map<VertexId, int>& colors, bool tight) {
    size_t k = order.size();
    if (k == st.verts.size()) {
        if (!st.have_best || rows < st.best) {
            st.best = rows;
            st.best_order = order;
            st.have_best = true;
        }
        return;
    }
    // Candidates: all unused vertices of the minimal color among unused.
    int min_color = -1;
    for (VertexId v : st.verts) {
        if (used.count(v)) continue;
        if (min_color < 0 || colors[v] < min_color) min_color = colors[v];
    }
    for (VertexId v : st.verts) {
        if (used.count(v) || colors[v] != min_color) continue;
        size_t base = rows.size();
        for (size_t i = 0; i < k; ++i) rows.push_back(st.g->multiplicity(v, order[i]));
        bool prune = false;
        bool next_tight = true;
        if (st.have_best && tight) {
            for (size_t i = base; i < rows.size() && i < st.best.size(); ++i) {
                if (rows[i] < st.best[i]) {
                    next_tight = false;
                    break;
                }
                if (rows[i] > st.best[i]) {
                    prune = true;
                    break;
                }
            }
        } else if (st.have_best) {
            next_tight = false;
        }
        if (!prune) {
            order.push_back(v);
            used.insert(v);
            canon_search(st, order, rows, used, colors, next_tight);
            used.erase(v);
            order.pop_back();
        }
        rows.resize(base);
    }
}

}  // namespace detail

/// A canonical string key: equal exactly for isomorphic multigraphs. Used to
/// memoize closures and deduplicate enumeration output.
inline std::string canonical_key(const MultiGraph& g) {
    std::map<VertexId, int> ca, cb;
    detail::refine_colors(g, g, ca, cb);
    detail::CanonState st{&g, g.vertices(), {}, {}, false};
    std::vector<VertexId> order;
    std::vector<int> rows;
    std::set<VertexId> used;
    detail::canon_search(st, order, rows, used, ca, true);
    std::string key = "n" + std::to_string(g.num_vertices()) + ":";
    for (size_t i = 0; i < st.best.size(); ++i) {
        if (i) key += ",";
        key += std::to_string(st.best[i]);
    }
    return key;
}

/// The canonically relabeled copy: vertices renamed 0..n-1 along the order
/// behind canonical_key, edges re-inserted row by row. Isomorphic multigraphs
/// have equal canonical forms.
inline MultiGraph canonical_form(const MultiGraph& g) {
    std::map<VertexId, int> ca, cb;
    detail::refine_colors(g, g, ca, cb);
    detail::CanonState st{&g, g.vertices(), {}, {}, false};
    std::vector<VertexId> order;
    std::vector<int> rows;
    std::set<VertexId> used;
    detail::canon_search(st, order, rows, used, ca, true);
    int n = g.num_vertices();
    MultiGraph out = MultiGraph::with_vertices(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            for (int c = 0; c < g.multiplicity(st.best_order[i], st.best_order[j]); ++c) out.add_edge(i, j);
    return out;
}

// ---------------------------------------------------------------------------
// Stock graphs
// ---------------------------------------------------------------------------

inline MultiGraph complete_graph(int n) {
    MultiGraph g = MultiGraph::with_vertices(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline MultiGraph complete_bipartite(int r, int s) {
    MultiGraph g = MultiGraph::with_vertices(r + s);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j) g.add_edge(i, r + j);
    return g;
}

inline MultiGraph cycle_graph(int n) {
    if (n < 3) throw graph_error("cycle_graph: need at least 3 vertices");
    MultiGraph g = MultiGraph::with_vertices(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline MultiGraph path_graph(int n) {
    MultiGraph g = MultiGraph::with_vertices(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline MultiGraph petersen_graph() {
    MultiGraph g = MultiGraph::with_vertices(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(i, i + 5);                // spokes
        g.add_edge(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return g;
}

/// Disjoint union; b's ids are shifted past a's counters.
inline MultiGraph disjoint_union(const MultiGraph& a, const MultiGraph& b) {
    MultiGraph out = a;
    VertexId voff = a.next_vertex_id();
    EdgeId eoff = a.next_edge_id();
    for (VertexId v : b.vertices()) out.add_vertex_id(voff + v);
    for (const auto& [e, rec] : b.edges()) out.add_edge_id(eoff + e, voff + rec.u, voff + rec.v);
    return out;
}

}  // namespace imkit
