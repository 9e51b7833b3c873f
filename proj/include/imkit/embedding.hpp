#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>

#include "imkit/connectivity.hpp"
#include "imkit/multigraph.hpp"

namespace imkit {

/// Combinatorial embedding: the cyclic order of incident edges around each
/// vertex. Faces are recovered by tracing, so equality of sphere embeddings
/// is checked through Euler's formula rather than stored.
struct RotationSystem {
    std::map<VertexId, std::vector<EdgeId>> order;
};

/// Every vertex present, and every edge listed exactly once at each endpoint.
inline bool is_valid_rotation(const MultiGraph& g, const RotationSystem& rs) {
    if (static_cast<int>(rs.order.size()) != g.num_vertices()) return false;
    for (const auto& [v, cyc] : rs.order) {
        if (!g.has_vertex(v)) return false;
        std::vector<EdgeId> sorted_cyc = cyc;
        std::sort(sorted_cyc.begin(), sorted_cyc.end());
        if (sorted_cyc != g.incident_edges(v)) return false;
    }
    return true;
}

/// Number of faces traced from the rotation system. The convention: the
/// successor of half-edge (v -> w along e) is (w -> ? along e'), where e' is
/// the cyclic successor of e in the rotation at w.
inline int face_count(const MultiGraph& g, const RotationSystem& rs) {
    if (!is_valid_rotation(g, rs)) throw graph_error("face_count: rotation system does not match the graph");
    if (g.num_edges() == 0) return g.num_vertices() >= 1 ? 1 : 0;
    std::map<VertexId, std::map<EdgeId, EdgeId>> succ;
    for (const auto& [v, cyc] : rs.order)
        for (size_t i = 0; i < cyc.size(); ++i) succ[v][cyc[i]] = cyc[(i + 1) % cyc.size()];
    std::set<std::pair<VertexId, EdgeId>> seen;  // half-edge keyed by tail vertex
    int faces = 0;
    for (const auto& [e, rec] : g.edges()) {
        for (VertexId tail : {rec.u, rec.v}) {
            if (seen.count({tail, e})) continue;
            ++faces;
            VertexId at = tail;
            EdgeId cur = e;
            while (seen.insert({at, cur}).second) {
                VertexId head = g.other_end(cur, at);
                cur = succ.at(head).at(cur);
                at = head;
            }
        }
    }
    return faces;
}

/// V - E + F == 2, valid for any embedding of a connected graph in the sphere.
inline bool euler_check(const MultiGraph& g, const RotationSystem& rs) {
    if (!is_connected(g)) throw graph_error("euler_check: graph must be connected");
    return g.num_vertices() - g.num_edges() + face_count(g, rs) == 2;
}

// ---------------------------------------------------------------------------
// Planarity by face insertion
// ---------------------------------------------------------------------------

namespace detail {

// One face of the partial embedding, stored as a directed cyclic list:
// entry i is (vertex x_i, edge from x_i to x_{i+1}). While the embedded part
// stays biconnected, every face is a simple cycle.
using FaceRing = std::vector<std::pair<VertexId, EdgeId>>;

struct Fragment {
    std::vector<VertexId> attachments;  // sorted H-vertices
    // alpha path between two attachments, internal vertices outside H
    Path alpha;
};

// Deterministic cycle: DFS from the least vertex, least edge first.
inline Path find_cycle(const MultiGraph& g, const std::set<EdgeId>& allowed) {
    std::map<VertexId, std::pair<VertexId, EdgeId>> parent;
    std::set<VertexId> visited;
    for (VertexId root : g.vertices()) {
        if (visited.count(root)) continue;
        std::vector<VertexId> stack{root};
        parent[root] = {root, -1};
        visited.insert(root);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId e : g.incident_edges(v)) {
                if (!allowed.count(e) || e == parent[v].second) continue;
                VertexId w = g.other_end(e, v);
                if (!visited.count(w)) {
                    visited.insert(w);
                    parent[w] = {v, e};
                    stack.push_back(w);
                } else {
                    // Back edge: walk both endpoints to their meeting point.
                    std::vector<VertexId> chain_v;
                    for (VertexId a = v; ; a = parent[a].first) {
                        chain_v.push_back(a);
                        if (parent[a].second < 0) break;
                    }
                    std::vector<VertexId> chain_w;
                    VertexId meet = -1;
                    for (VertexId a = w; ; a = parent[a].first) {
                        chain_w.push_back(a);
                        if (std::find(chain_v.begin(), chain_v.end(), a) != chain_v.end()) {
                            meet = a;
                            break;
                        }
                        if (parent[a].second < 0) break;
                    }
                    if (meet < 0) continue;  // crossed into a different DFS tree part
                    // Ring from meet down to v, across e to w, and back up:
                    // vertices[i] and edges[i] line up cyclically.
                    Path cycle;
                    for (VertexId a = v; a != meet; a = parent[a].first) {
                        cycle.vertices.push_back(a);
                        cycle.edges.push_back(parent[a].second);
                    }
                    cycle.vertices.push_back(meet);
                    std::reverse(cycle.vertices.begin(), cycle.vertices.end());
                    std::reverse(cycle.edges.begin(), cycle.edges.end());
                    cycle.edges.push_back(e);
                    for (VertexId a = w; a != meet; a = parent[a].first) {
                        cycle.vertices.push_back(a);
                        cycle.edges.push_back(parent[a].second);
                    }
                    return cycle;
                }
            }
        }
    }
    throw graph_error("internal: no cycle in a block with 2 or more edges");
}

// Demoucron-style planar embedding of one biconnected block (edge set
// `block` inside g, simple by construction). On success fills `succ` with
// the corner successor map the block induces; returns false when the block
// is not planar.
inline bool embed_block(const MultiGraph& g, const std::vector<EdgeId>& block,
                        std::map<VertexId, std::map<EdgeId, EdgeId>>& succ) {
    std::set<EdgeId> block_set(block.begin(), block.end());
    std::set<VertexId> block_verts;
    for (EdgeId e : block) {
        auto [u, v] = g.endpoints(e);
        block_verts.insert(u);
        block_verts.insert(v);
    }
    long long bv = static_cast<long long>(block_verts.size());
    if (bv >= 3 && static_cast<long long>(block.size()) > 3 * bv - 6) return false;

    Path cycle = find_cycle(g, block_set);
    std::set<VertexId> hv(cycle.vertices.begin(), cycle.vertices.end());
    std::set<EdgeId> he(cycle.edges.begin(), cycle.edges.end());
    std::vector<FaceRing> faces;
    {
        FaceRing f1, f2;
        size_t k = cycle.edges.size();
        for (size_t i = 0; i < k; ++i) f1.push_back({cycle.vertices[i], cycle.edges[i]});
        for (size_t i = k; i-- > 0;) f2.push_back({cycle.vertices[(i + 1) % k], cycle.edges[i]});
        faces.push_back(f1);
        faces.push_back(f2);
    }

    while (he.size() < block_set.size()) {
        // Collect fragments: single chords first, then bridges through the
        // not-yet-embedded vertices.
        std::vector<Fragment> fragments;
        for (EdgeId e : block) {
            if (he.count(e)) continue;
            auto [u, v] = g.endpoints(e);
            if (hv.count(u) && hv.count(v)) {
                Fragment fr;
                fr.attachments = {std::min(u, v), std::max(u, v)};
                fr.alpha.vertices = {u, v};
                fr.alpha.edges = {e};
                fragments.push_back(std::move(fr));
            }
        }
        std::set<VertexId> outside;
        for (VertexId v : block_verts)
            if (!hv.count(v)) outside.insert(v);
        while (!outside.empty()) {
            VertexId root = *outside.begin();
            outside.erase(root);
            std::set<VertexId> comp_set{root};
            std::queue<VertexId> q;
            q.push(root);
            std::set<VertexId> attach;
            while (!q.empty()) {
                VertexId v = q.front();
                q.pop();
                for (EdgeId e : g.incident_edges(v)) {
                    if (!block_set.count(e)) continue;
                    VertexId w = g.other_end(e, v);
                    if (hv.count(w)) {
                        attach.insert(w);
                    } else if (outside.erase(w)) {
                        comp_set.insert(w);
                        q.push(w);
                    }
                }
            }
            Fragment fr;
            fr.attachments.assign(attach.begin(), attach.end());
            if (fr.attachments.size() < 2) throw graph_error("internal: fragment with fewer than 2 attachments");
            // Alpha path: BFS from the least attachment through the component
            // to any other attachment.
            VertexId start = fr.attachments.front();
            std::map<VertexId, std::pair<VertexId, EdgeId>> par;
            std::queue<VertexId> bq;
            par[start] = {start, -1};
            bq.push(start);
            VertexId goal = -1;
            while (!bq.empty() && goal < 0) {
                VertexId v = bq.front();
                bq.pop();
                bool v_is_start = (v == start);
                for (EdgeId e : g.incident_edges(v)) {
                    if (!block_set.count(e)) continue;
                    VertexId w = g.other_end(e, v);
                    if (par.count(w)) continue;
                    if (comp_set.count(w)) {
                        par[w] = {v, e};
                        bq.push(w);
                    } else if (!v_is_start && hv.count(w) && w != start) {
                        par[w] = {v, e};
                        goal = w;
                        break;
                    }
                }
            }
            if (goal < 0) throw graph_error("internal: fragment alpha path not found");
            std::vector<VertexId> rv;
            std::vector<EdgeId> re;
            for (VertexId a = goal; a != start; a = par[a].first) {
                rv.push_back(a);
                re.push_back(par[a].second);
            }
            rv.push_back(start);
            std::reverse(rv.begin(), rv.end());
            std::reverse(re.begin(), re.end());
            fr.alpha.vertices = rv;
            fr.alpha.edges = re;
            fragments.push_back(std::move(fr));
        }

        // Admissible faces per fragment.
        auto face_has_all = [&](const FaceRing& f, const std::vector<VertexId>& need) {
            std::set<VertexId> on;
            for (auto& [v, e] : f) on.insert(v);
            for (VertexId v : need)
                if (!on.count(v)) return false;
            return true;
        };
        int chosen_fragment = -1, chosen_face = -1;
        for (size_t fi = 0; fi < fragments.size(); ++fi) {
            int count = 0, first = -1;
            for (size_t f = 0; f < faces.size(); ++f) {
                if (face_has_all(faces[f], fragments[fi].attachments)) {
                    ++count;
                    if (first < 0) first = static_cast<int>(f);
                }
            }
            if (count == 0) return false;  // this fragment has nowhere to go
            if (count == 1) {
                chosen_fragment = static_cast<int>(fi);
                chosen_face = first;
                break;
            }
            if (chosen_fragment < 0) {
                chosen_fragment = static_cast<int>(fi);
                chosen_face = first;
            }
        }

        // Split the face along the alpha path.
        const Path& p = fragments[chosen_fragment].alpha;
        FaceRing face = faces[chosen_face];
        faces.erase(faces.begin() + chosen_face);
        int iu = -1, iw = -1;
        for (size_t i = 0; i < face.size(); ++i) {
            if (face[i].first == p.front()) iu = static_cast<int>(i);
            if (face[i].first == p.back()) iw = static_cast<int>(i);
        }
        if (iu < 0 || iw < 0) throw graph_error("internal: alpha endpoints missing from chosen face");
        int n = static_cast<int>(face.size());
        FaceRing f1, f2;
        for (int i = iu; i != iw; i = (i + 1) % n) f1.push_back(face[i]);
        for (int r = p.length(); r >= 1; --r) f1.push_back({p.vertices[r], p.edges[r - 1]});
        for (int i = iw; i != iu; i = (i + 1) % n) f2.push_back(face[i]);
        for (int r = 0; r < p.length(); ++r) f2.push_back({p.vertices[r], p.edges[r]});
        faces.push_back(std::move(f1));
        faces.push_back(std::move(f2));
        for (VertexId v : p.vertices) hv.insert(v);
        for (EdgeId e : p.edges) he.insert(e);
    }

    // Corners -> successor map. Each directed half-edge lies on exactly one
    // face, so this never overwrites.
    for (const FaceRing& f : faces) {
        int n = static_cast<int>(f.size());
        for (int i = 0; i < n; ++i) {
            auto [xi, ei] = f[i];
            auto [xj, ej] = f[(i + 1) % n];
            succ[xj][ei] = ej;
        }
    }
    return true;
}

// Representative (least-id) edge per endpoint pair, plus the parallel copies.
inline std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> parallel_classes(const MultiGraph& g) {
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> classes;
    for (const auto& [e, rec] : g.edges()) classes[{rec.u, rec.v}].push_back(e);
    return classes;  // edge ids arrive sorted from the map
}

// Biconnected components of the simple subgraph spanned by `keep`,
// as edge lists. Standard lowpoint computation.
inline std::vector<std::vector<EdgeId>> blocks_of(const MultiGraph& g, const std::set<EdgeId>& keep) {
    std::map<VertexId, int> disc, low;
    std::vector<EdgeId> stack;
    std::vector<std::vector<EdgeId>> out;
    int time = 0;
    auto dfs = [&](auto&& self, VertexId u, EdgeId pe) -> void {
        disc[u] = low[u] = time++;
        for (EdgeId e : g.incident_edges(u)) {
            if (!keep.count(e) || e == pe) continue;
            VertexId v = g.other_end(e, u);
            if (!disc.count(v)) {
                stack.push_back(e);
                self(self, v, e);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= disc[u]) {
                    std::vector<EdgeId> blk;
                    while (true) {
                        EdgeId top = stack.back();
                        stack.pop_back();
                        blk.push_back(top);
                        if (top == e) break;
                    }
                    std::sort(blk.begin(), blk.end());
                    out.push_back(std::move(blk));
                }
            } else if (disc[v] < disc[u]) {
                stack.push_back(e);
                low[u] = std::min(low[u], disc[v]);
            }
        }
    };
    for (VertexId v : g.vertices())
        if (!disc.count(v)) dfs(dfs, v, -1);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Planar embedding of connected g, or nothing when g is not planar.
/// Parallel edges never affect planarity: the simplification is embedded by
/// face insertion per biconnected block, blocks are merged at cut vertices,
/// and parallel copies are then slotted next to their representative (in
/// opposite cyclic directions at the two endpoints, forming bigon faces).
inline std::optional<RotationSystem> embed_planar(const MultiGraph& g) {
    if (!is_connected(g)) throw graph_error("embed_planar: graph must be connected");
    auto classes = detail::parallel_classes(g);
    std::set<EdgeId> reps;
    for (auto& [pair, ids] : classes) reps.insert(ids.front());

    std::map<VertexId, std::map<EdgeId, EdgeId>> succ;
    for (const auto& blk : detail::blocks_of(g, reps)) {
        if (blk.size() == 1) {
            auto [u, v] = g.endpoints(blk[0]);
            succ[u][blk[0]] = blk[0];
            succ[v][blk[0]] = blk[0];
            continue;
        }
        if (!detail::embed_block(g, blk, succ)) return std::nullopt;
    }

    RotationSystem rs;
    for (VertexId v : g.vertices()) {
        // Stitch this vertex's blocks into one cyclic order: walk each
        // block's successor cycle, blocks in order of their least edge id.
        std::vector<EdgeId> cyc;
        std::set<EdgeId> done;
        if (succ.count(v)) {
            for (const auto& [start, _] : succ.at(v)) {
                if (done.count(start)) continue;
                EdgeId e = start;
                do {
                    cyc.push_back(e);
                    done.insert(e);
                    e = succ.at(v).at(e);
                } while (e != start);
            }
        }
        rs.order[v] = std::move(cyc);
    }

    // Parallel copies: descending just before the representative at the lower
    // endpoint and ascending just after it at the other, so every consecutive
    // pair of copies bounds a bigon and each copy adds exactly one face.
    for (auto& [pair, ids] : classes) {
        if (ids.size() == 1) continue;
        EdgeId rep = ids.front();
        auto& at_u = rs.order[pair.first];
        auto& at_v = rs.order[pair.second];
        std::vector<EdgeId> desc(ids.rbegin(), ids.rend());
        desc.pop_back();  // drop rep
        auto pos_u = std::find(at_u.begin(), at_u.end(), rep);
        at_u.insert(pos_u, desc.begin(), desc.end());
        auto pos_v = std::find(at_v.begin(), at_v.end(), rep);
        at_v.insert(pos_v + 1, ids.begin() + 1, ids.end());
    }

    if (!euler_check(g, rs)) throw graph_error("internal: embedding failed the Euler check");
    return rs;
}

/// True when every component embeds in the plane. Runs on the simplification
/// (parallel edges cannot break planarity).
inline bool is_planar(const MultiGraph& g) {
    for (const MultiGraph& comp : components(g)) {
        auto classes = detail::parallel_classes(comp);
        std::set<EdgeId> reps;
        for (auto& [pair, ids] : classes) reps.insert(ids.front());
        std::map<VertexId, std::map<EdgeId, EdgeId>> succ;
        for (const auto& blk : detail::blocks_of(comp, reps)) {
            if (blk.size() > 1 && !detail::embed_block(comp, blk, succ)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Disk sides
// ---------------------------------------------------------------------------

enum class DiskSide { A, B };

/// Classifies probe_edge against the two arcs into which the pair
/// (p_in, p_out) divides the cyclic order at x. Side A starts after the
/// lower-id path edge, so the labeling does not depend on the order in which
/// the two path edges are passed.
inline DiskSide local_sides(const MultiGraph& g, const RotationSystem& rs, VertexId x, EdgeId p_in,
                            EdgeId p_out, EdgeId probe_edge) {
    auto it = rs.order.find(x);
    if (it == rs.order.end()) throw graph_error("local_sides: vertex not in rotation system");
    const std::vector<EdgeId>& cyc = it->second;
    auto index_of = [&](EdgeId e, const char* what) {
        auto pos = std::find(cyc.begin(), cyc.end(), e);
        if (pos == cyc.end()) throw graph_error(std::string("local_sides: ") + what + " not incident to x");
        return static_cast<int>(pos - cyc.begin());
    };
    if (p_in == p_out) throw graph_error("local_sides: path edges must be distinct");
    if (probe_edge == p_in || probe_edge == p_out) throw graph_error("local_sides: probe may not be a path edge");
    (void)g;
    int ia = index_of(std::min(p_in, p_out), "path edge");
    int ib = index_of(std::max(p_in, p_out), "path edge");
    int ip = index_of(probe_edge, "probe edge");
    int n = static_cast<int>(cyc.size());
    // walking forward from ia: positions strictly between ia and ib are side A
    auto ahead = [&](int from, int to) { return (to - from + n) % n; };
    return ahead(ia, ip) < ahead(ia, ib) ? DiskSide::A : DiskSide::B;
}

// ---------------------------------------------------------------------------
// Rotation system text format: one line per vertex, "v: e1 e2 ... ek"
// ---------------------------------------------------------------------------

inline void write_rotation_system(std::ostream& out, const RotationSystem& rs) {
    for (const auto& [v, cyc] : rs.order) {
        out << v << ":";
        for (EdgeId e : cyc) out << " " << e;
        out << "\n";
    }
}

inline std::string write_rotation_system(const RotationSystem& rs) {
    std::ostringstream out;
    write_rotation_system(out, rs);
    return out.str();
}

inline RotationSystem read_rotation_system(std::istream& in) {
    RotationSystem rs;
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw parse_error(line_no, "expected '<v>: <edges...>'");
        std::istringstream head(line.substr(0, colon));
        VertexId v;
        std::string junk;
        if (!(head >> v) || (head >> junk)) throw parse_error(line_no, "malformed vertex id");
        if (rs.order.count(v)) throw parse_error(line_no, "duplicate vertex " + std::to_string(v));
        std::istringstream rest(line.substr(colon + 1));
        std::vector<EdgeId> cyc;
        EdgeId e;
        while (rest >> e) cyc.push_back(e);
        if (!rest.eof()) throw parse_error(line_no, "malformed edge list");
        rs.order[v] = std::move(cyc);
    }
    return rs;
}

inline RotationSystem read_rotation_system(const std::string& text) {
    std::istringstream in(text);
    return read_rotation_system(in);
}

}  // namespace imkit
