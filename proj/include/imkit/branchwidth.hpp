#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "imkit/multigraph.hpp"

namespace imkit {

/// Unrooted tree whose leaves carry the graph's edges, one each; internal
/// nodes have degree three. The middle set of a tree edge is the set of graph
/// vertices with incident edges on both sides, and the width is the largest
/// middle set.
struct BranchDecomposition {
    std::map<int, std::vector<int>> tree_adj;
    std::map<int, EdgeId> leaf_map;
};

inline bool is_valid_branch_decomposition(const MultiGraph& g, const BranchDecomposition& bd) {
    int m = g.num_edges();
    if (m == 0) return bd.tree_adj.empty() && bd.leaf_map.empty();
    // collect nodes and check symmetry
    std::set<int> nodes;
    int tree_edge_count = 0;
    for (const auto& [a, nbrs] : bd.tree_adj) {
        nodes.insert(a);
        for (int b : nbrs) {
            nodes.insert(b);
            const auto it = bd.tree_adj.find(b);
            if (it == bd.tree_adj.end()) return false;
            if (std::count(it->second.begin(), it->second.end(), a) != 1) return false;
            if (std::count(nbrs.begin(), nbrs.end(), b) != 1) return false;
            ++tree_edge_count;
        }
    }
    tree_edge_count /= 2;
    if (m == 1) {
        if (bd.leaf_map.size() != 1 || tree_edge_count != 0) return false;
        if (!nodes.empty() && !(nodes.size() == 1 && bd.leaf_map.count(*nodes.begin()))) return false;
        return bd.leaf_map.begin()->second == g.edge_ids().front();
    }
    for (const auto& [n, e] : bd.leaf_map) nodes.insert(n);
    if (static_cast<int>(nodes.size()) != tree_edge_count + 1) return false;  // acyclic if connected
    // connectivity
    if (nodes.empty()) return false;
    std::set<int> seen{*nodes.begin()};
    std::vector<int> stack{*nodes.begin()};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        auto it = bd.tree_adj.find(v);
        if (it == bd.tree_adj.end()) continue;
        for (int w : it->second)
            if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen != nodes) return false;
    // degrees: leaves 1, internal 3
    std::set<EdgeId> covered;
    for (int v : nodes) {
        auto it = bd.tree_adj.find(v);
        size_t deg = it == bd.tree_adj.end() ? 0 : it->second.size();
        if (deg == 1) {
            auto lm = bd.leaf_map.find(v);
            if (lm == bd.leaf_map.end()) return false;
            if (!g.has_edge(lm->second) || !covered.insert(lm->second).second) return false;
        } else if (deg == 3) {
            if (bd.leaf_map.count(v)) return false;
        } else {
            return false;
        }
    }
    return static_cast<int>(covered.size()) == m && bd.leaf_map.size() == covered.size();
}

/// Graph vertices whose incident edges straddle the tree edge {a, b}.
inline std::set<VertexId> middle_set(const MultiGraph& g, const BranchDecomposition& bd, int a, int b) {
    auto it = bd.tree_adj.find(a);
    if (it == bd.tree_adj.end() || !std::count(it->second.begin(), it->second.end(), b))
        throw graph_error("middle_set: no such tree edge");
    std::set<int> side_nodes{a};
    std::vector<int> stack{a};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : bd.tree_adj.at(v)) {
            if (w == b && v == a) continue;
            if (side_nodes.insert(w).second) stack.push_back(w);
        }
    }
    std::map<VertexId, int> cnt;
    for (const auto& [leaf, e] : bd.leaf_map) {
        if (!side_nodes.count(leaf)) continue;
        auto [u, v] = g.endpoints(e);
        ++cnt[u];
        ++cnt[v];
    }
    std::set<VertexId> mid;
    for (const auto& [v, c] : cnt)
        if (c < g.degree(v)) mid.insert(v);
    return mid;
}

inline int width_of(const MultiGraph& g, const BranchDecomposition& bd) {
    if (!is_valid_branch_decomposition(g, bd))
        throw graph_error("width_of: not a branch decomposition of this graph");
    if (g.num_edges() <= 1) return 0;
    int best = 0;
    for (const auto& [a, nbrs] : bd.tree_adj)
        for (int b : nbrs)
            if (a < b) best = std::max(best, static_cast<int>(middle_set(g, bd, a, b).size()));
    return best;
}

// ---------------------------------------------------------------------------
// Greedy upper bound
// ---------------------------------------------------------------------------

/// Bottom-up clustering: start with one cluster per edge and repeatedly merge
/// the pair whose union has the smallest boundary (ties to the oldest pair).
/// The merge tree, with its degree-two root spliced out, is the decomposition.
inline BranchDecomposition branchwidth_upper(const MultiGraph& g) {
    BranchDecomposition bd;
    int m = g.num_edges();
    if (m == 0) return bd;
    std::vector<EdgeId> eids = g.edge_ids();
    if (m == 1) {
        bd.leaf_map[0] = eids[0];
        return bd;
    }
    struct Cluster {
        int node;
        std::map<VertexId, int> cnt;  // incidences inside the cluster
    };
    std::vector<Cluster> active;
    int next_node = 0;
    for (EdgeId e : eids) {
        Cluster c;
        c.node = next_node++;
        auto [u, v] = g.endpoints(e);
        ++c.cnt[u];
        ++c.cnt[v];
        bd.leaf_map[c.node] = e;
        active.push_back(std::move(c));
    }
    auto boundary = [&](const std::map<VertexId, int>& cnt) {
        int b = 0;
        for (const auto& [v, c] : cnt)
            if (c < g.degree(v)) ++b;
        return b;
    };
    auto link = [&](int a, int b) {
        bd.tree_adj[a].push_back(b);
        bd.tree_adj[b].push_back(a);
    };
    while (active.size() > 1) {
        int best = -1, bi = -1, bj = -1;
        for (size_t i = 0; i < active.size(); ++i)
            for (size_t j = i + 1; j < active.size(); ++j) {
                std::map<VertexId, int> merged = active[i].cnt;
                for (const auto& [v, c] : active[j].cnt) merged[v] += c;
                int b = boundary(merged);
                if (best < 0 || b < best) {
                    best = b;
                    bi = static_cast<int>(i);
                    bj = static_cast<int>(j);
                }
            }
        Cluster merged;
        merged.node = next_node++;
        merged.cnt = active[bi].cnt;
        for (const auto& [v, c] : active[bj].cnt) merged.cnt[v] += c;
        link(active[bi].node, merged.node);
        link(active[bj].node, merged.node);
        active.erase(active.begin() + bj);
        active.erase(active.begin() + bi);
        active.push_back(std::move(merged));
    }
    // splice out the degree-two root
    int root = active[0].node;
    auto& rn = bd.tree_adj[root];
    int a = rn[0], b = rn[1];
    bd.tree_adj.erase(root);
    auto drop = [&](int from, int gone, int repl) {
        for (int& x : bd.tree_adj[from])
            if (x == gone) x = repl;
    };
    drop(a, root, b);
    drop(b, root, a);
    return bd;
}

// ---------------------------------------------------------------------------
// Exact search
// ---------------------------------------------------------------------------

namespace detail {

// Branch and bound over leaf insertions. Edges enter in id order; each new
// leaf subdivides an existing tree edge. Subdividing keeps every placed leaf
// on the side of each old tree edge it was on, so a vertex with placed edges
// on both sides of a tree edge stays that way in every extension: partial
// widths only grow and any partial exceeding k can be cut.
struct BwSearch {
    const MultiGraph& g;
    int k;
    std::vector<EdgeId> eids;
    std::vector<VertexId> verts;
    std::vector<uint64_t> inc;  // per vertex: mask of incident edge indices

    std::map<int, std::vector<int>> adj;
    std::map<int, int> leaf_edge;  // node -> edge index
    int next_node = 0;

    explicit BwSearch(const MultiGraph& graph, int limit) : g(graph), k(limit) {
        // Place edges in a connectivity-first order: always the lowest-id edge
        // touching an already placed one, so crossings show up early and the
        // bound prunes sooner. Any fixed order keeps the search complete.
        std::vector<EdgeId> all_ids = g.edge_ids();
        std::set<EdgeId> left(all_ids.begin(), all_ids.end());
        std::set<VertexId> touched;
        while (!left.empty()) {
            EdgeId pick = -1;
            for (EdgeId e : left) {
                auto [u, v] = g.endpoints(e);
                if (touched.count(u) || touched.count(v)) {
                    pick = e;
                    break;
                }
            }
            if (pick < 0) pick = *left.begin();
            auto [u, v] = g.endpoints(pick);
            touched.insert(u);
            touched.insert(v);
            eids.push_back(pick);
            left.erase(pick);
        }
        verts = g.vertices();
        inc.assign(verts.size(), 0);
        std::map<VertexId, size_t> vidx;
        for (size_t i = 0; i < verts.size(); ++i) vidx[verts[i]] = i;
        for (size_t i = 0; i < eids.size(); ++i) {
            auto [u, v] = g.endpoints(eids[i]);
            inc[vidx[u]] |= 1ull << i;
            inc[vidx[v]] |= 1ull << i;
        }
    }

    bool width_ok() const {
        // subtree leaf masks via iterative post-order from node 0
        std::map<int, uint64_t> sub;
        std::vector<std::pair<int, int>> stack{{0, -1}};
        std::vector<std::pair<int, int>> order;
        while (!stack.empty()) {
            auto [v, p] = stack.back();
            stack.pop_back();
            order.push_back({v, p});
            for (int w : adj.at(v))
                if (w != p) stack.push_back({w, v});
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            auto [v, p] = *it;
            uint64_t mask = 0;
            auto le = leaf_edge.find(v);
            if (le != leaf_edge.end()) mask |= 1ull << le->second;
            for (int w : adj.at(v))
                if (w != p) mask |= sub.at(w);
            sub[v] = mask;
        }
        uint64_t inserted = sub.at(0);  // traversal root holds every placed leaf
        for (const auto& [v, p] : order) {
            if (p < 0) continue;
            uint64_t side = sub.at(v);
            uint64_t rest = inserted & ~side;
            int crossing = 0;
            for (uint64_t iv : inc)
                if ((side & iv) && (rest & iv)) ++crossing;
            if (crossing > k) return false;
        }
        return true;
    }

    bool place(size_t idx) {
        if (idx == eids.size()) return true;
        if (idx == 0) {
            int l = next_node++;
            adj[l] = {};
            leaf_edge[l] = 0;
            if (place(1)) return true;
            adj.erase(l);
            leaf_edge.erase(l);
            next_node = l;
            return false;
        }
        if (idx == 1) {
            int l = next_node++;
            adj[l] = {0};
            adj[0].push_back(l);
            leaf_edge[l] = 1;
            if (width_ok() && place(2)) return true;
            adj.erase(l);
            adj[0].pop_back();
            leaf_edge.erase(l);
            next_node = l;
            return false;
        }
        // snapshot of current tree edges
        std::vector<std::pair<int, int>> edges;
        for (const auto& [a, nbrs] : adj)
            for (int b : nbrs)
                if (a < b) edges.push_back({a, b});
        for (auto [a, b] : edges) {
            int c = next_node++;
            int l = next_node++;
            auto rewire = [&](int from, int old_to, int new_to) {
                for (int& x : adj[from])
                    if (x == old_to) x = new_to;
            };
            rewire(a, b, c);
            rewire(b, a, c);
            adj[c] = {a, b, l};
            adj[l] = {c};
            leaf_edge[l] = static_cast<int>(idx);
            if (width_ok() && place(idx + 1)) return true;
            leaf_edge.erase(l);
            adj.erase(l);
            adj.erase(c);
            rewire(a, c, b);
            rewire(b, c, a);
            next_node = c;
        }
        return false;
    }

    BranchDecomposition result() const {
        BranchDecomposition bd;
        bd.tree_adj = adj;
        for (const auto& [node, idx] : leaf_edge) bd.leaf_map[node] = eids[idx];
        return bd;
    }
};

}  // namespace detail

/// A branch decomposition of width at most k, or nothing. Exponential search;
/// guarded to 9 edges unless overridden.
inline std::optional<BranchDecomposition> decide_branchwidth(const MultiGraph& g, int k,
                                                             bool override_guard = false) {
    if (g.num_edges() > 9 && !override_guard)
        throw capacity_error("exact branchwidth search refuses more than 9 edges; override to force");
    if (k < 0) return std::nullopt;
    if (g.num_edges() == 0) return BranchDecomposition{};
    if (g.num_edges() == 1) {
        BranchDecomposition bd;
        bd.leaf_map[0] = g.edge_ids().front();
        return bd;
    }
    detail::BwSearch search(g, k);
    if (!search.place(0)) return std::nullopt;
    return search.result();
}

/// Exact branchwidth with witness: deepen the width bound until the decision
/// search succeeds, never past the greedy upper bound.
inline std::pair<int, BranchDecomposition> branchwidth_exact(const MultiGraph& g,
                                                             bool override_guard = false) {
    if (g.num_edges() > 9 && !override_guard)
        throw capacity_error("exact branchwidth search refuses more than 9 edges; override to force");
    BranchDecomposition ub_bd = branchwidth_upper(g);
    int ub = width_of(g, ub_bd);
    for (int k = 0; k < ub; ++k)
        if (auto bd = decide_branchwidth(g, k, true)) return {k, *bd};
    return {ub, ub_bd};
}

// ---------------------------------------------------------------------------
// Cylinders
// ---------------------------------------------------------------------------

/// q concentric r-cycles joined by spokes between consecutive rings
/// (the cartesian product of a cycle and a path). cylinder(3, 1) is K3.
inline MultiGraph cylinder(int r, int q) {
    if (r < 3 || q < 1) throw graph_error("cylinder: need r >= 3 rings positions and q >= 1 rings");
    MultiGraph g = MultiGraph::with_vertices(r * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < r; ++j) g.add_edge(i * r + j, i * r + (j + 1) % r);
    for (int i = 0; i + 1 < q; ++i)
        for (int j = 0; j < r; ++j) g.add_edge(i * r + j, (i + 1) * r + j);
    return g;
}

// ---------------------------------------------------------------------------
// Text format: "tree <a> <b>" per tree edge, "leaf <node> -> <edge>" per leaf
// ---------------------------------------------------------------------------

inline void write_branch_decomposition(std::ostream& out, const BranchDecomposition& bd) {
    out << "branch-decomposition v1\n";
    for (const auto& [a, nbrs] : bd.tree_adj)
        for (int b : nbrs)
            if (a < b) out << "tree " << a << " " << b << "\n";
    for (const auto& [n, e] : bd.leaf_map) out << "leaf " << n << " -> " << e << "\n";
}

inline std::string write_branch_decomposition(const BranchDecomposition& bd) {
    std::ostringstream out;
    write_branch_decomposition(out, bd);
    return out.str();
}

inline BranchDecomposition read_branch_decomposition(std::istream& in) {
    BranchDecomposition bd;
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
            if (word != "branch-decomposition") throw parse_error(line_no, "expected branch-decomposition header");
            std::string version;
            ss >> version;
            if (version != "v1") throw parse_error(line_no, "unsupported version");
            header = true;
        } else if (word == "tree") {
            int a, b;
            if (!(ss >> a >> b)) throw parse_error(line_no, "malformed tree line");
            bd.tree_adj[a].push_back(b);
            bd.tree_adj[b].push_back(a);
        } else if (word == "leaf") {
            int n;
            EdgeId e;
            std::string arrow;
            if (!(ss >> n >> arrow >> e) || arrow != "->") throw parse_error(line_no, "malformed leaf line");
            if (bd.leaf_map.count(n)) throw parse_error(line_no, "duplicate leaf");
            bd.leaf_map[n] = e;
        } else {
            throw parse_error(line_no, "unrecognized line");
        }
    }
    if (!header) throw parse_error(1, "empty branch decomposition");
    return bd;
}

inline BranchDecomposition read_branch_decomposition(const std::string& text) {
    std::istringstream in(text);
    return read_branch_decomposition(in);
}

}  // namespace imkit
