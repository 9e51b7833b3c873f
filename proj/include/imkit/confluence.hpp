#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "imkit/connectivity.hpp"
#include "imkit/embedding.hpp"
#include "imkit/multigraph.hpp"

namespace imkit {

/// Edge-disjoint vertex-simple paths from one center vertex to distinct
/// targets. paths[k] runs from center to its own target.
struct PathFan {
    VertexId center = -1;
    std::vector<Path> paths;
};

inline bool is_valid_fan(const MultiGraph& g, const PathFan& fan) {
    if (!g.has_vertex(fan.center)) return false;
    std::set<EdgeId> used;
    std::set<VertexId> targets;
    for (const Path& p : fan.paths) {
        if (p.length() < 1 || !is_valid_path(g, p)) return false;
        if (p.front() != fan.center) return false;
        if (p.back() == fan.center || !targets.insert(p.back()).second) return false;
        for (EdgeId e : p.edges)
            if (!used.insert(e).second) return false;
    }
    return true;
}

/// Two paths from a shared start are well arranged when their common vertices
/// appear in the same order along both.
inline bool is_well_arranged(const Path& a, const Path& b) {
    std::set<VertexId> in_b(b.vertices.begin(), b.vertices.end());
    std::vector<VertexId> along_a, along_b;
    for (VertexId v : a.vertices)
        if (in_b.count(v)) along_a.push_back(v);
    std::set<VertexId> common(along_a.begin(), along_a.end());
    for (VertexId v : b.vertices)
        if (common.count(v)) along_b.push_back(v);
    return along_a == along_b;
}

inline bool is_well_arranged(const PathFan& fan) {
    for (size_t i = 0; i < fan.paths.size(); ++i)
        for (size_t j = i + 1; j < fan.paths.size(); ++j)
            if (!is_well_arranged(fan.paths[i], fan.paths[j])) return false;
    return true;
}

/// Repairs the arrangement of two edge-disjoint paths from a shared start by
/// exchanging segments at the first out-of-order common vertex. Each round
/// drops at least one edge from the union, so this terminates; the results
/// are edge-disjoint, keep both endpoints, and use only original edges.
inline std::pair<Path, Path> rewire_well_arranged(Path p1, Path p2) {
    if (p1.vertices.empty() || p2.vertices.empty() || p1.front() != p2.front())
        throw graph_error("rewire_well_arranged: paths must share their start");
    while (!is_well_arranged(p1, p2)) {
        std::set<VertexId> in_2(p2.vertices.begin(), p2.vertices.end());
        std::vector<VertexId> along_1, along_2;
        for (VertexId v : p1.vertices)
            if (in_2.count(v)) along_1.push_back(v);
        std::set<VertexId> common(along_1.begin(), along_1.end());
        for (VertexId v : p2.vertices)
            if (common.count(v)) along_2.push_back(v);
        size_t lambda = 0;
        while (lambda < along_1.size() && along_1[lambda] == along_2[lambda]) ++lambda;
        // both sequences start at the shared start vertex, so lambda >= 1
        VertexId u_prev = along_1[lambda - 1];
        VertexId a = along_2[lambda];  // lambda-th common vertex along p2, later along p1
        VertexId b = along_1[lambda];  // lambda-th common vertex along p1, later along p2
        Path n1 = concat(concat(p1.slice(p1.front(), u_prev), p2.slice(u_prev, a)), p1.slice(a, p1.back()));
        Path n2 = concat(concat(p2.slice(p2.front(), u_prev), p1.slice(u_prev, b)), p2.slice(b, p2.back()));
        size_t before = p1.edges.size() + p2.edges.size();
        size_t after = n1.edges.size() + n2.edges.size();
        if (after >= before) throw graph_error("internal: rewire failed to shrink the union");
        p1 = std::move(n1);
        p2 = std::move(n2);
    }
    return {p1, p2};
}

// ---------------------------------------------------------------------------
// Crossings in an embedded host
// ---------------------------------------------------------------------------

struct CrossingWitness {
    size_t path_a = 0;
    size_t path_b = 0;
    VertexId at = -1;
};

/// Transversal crossings of fan paths: at a vertex interior to both paths,
/// the two edges of one path straddle the two edges of the other in the
/// rotation. Touching without crossing does not count.
inline std::vector<CrossingWitness> fan_crossings(const MultiGraph& g, const RotationSystem& rs,
                                                  const PathFan& fan) {
    if (!is_valid_rotation(g, rs)) throw graph_error("fan_crossings: rotation system does not match the graph");
    std::vector<CrossingWitness> out;
    for (size_t i = 0; i < fan.paths.size(); ++i) {
        const Path& pi = fan.paths[i];
        for (size_t j = i + 1; j < fan.paths.size(); ++j) {
            const Path& pj = fan.paths[j];
            for (int a = 1; a < pi.length(); ++a) {
                VertexId u = pi.vertices[a];
                if (!pj.contains_vertex(u)) continue;
                int b = pj.position_of(u);
                if (b == 0 || b == pj.length()) continue;  // interior of both only
                EdgeId in_i = pi.edges[a - 1], out_i = pi.edges[a];
                EdgeId in_j = pj.edges[b - 1], out_j = pj.edges[b];
                DiskSide s1 = local_sides(g, rs, u, in_i, out_i, in_j);
                DiskSide s2 = local_sides(g, rs, u, in_i, out_i, out_j);
                if (s1 != s2) out.push_back({i, j, u});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Untangling
// ---------------------------------------------------------------------------

struct UntangleTrace {
    bool rebuilt = false;
    int initial_crossings = 0;
    int exchanges = 0;
    int rewires = 0;
};

namespace detail {

inline std::set<EdgeId> fan_edge_union(const PathFan& fan) {
    std::set<EdgeId> u;
    for (const Path& p : fan.paths)
        for (EdgeId e : p.edges) u.insert(e);
    return u;
}

inline MultiGraph edge_subgraph(const MultiGraph& g, const std::set<EdgeId>& keep) {
    MultiGraph out = g;
    for (EdgeId e : g.edge_ids())
        if (!keep.count(e)) out.remove_edge(e);
    return out;
}

}  // namespace detail

/// Rebuilds the fan into a confluent one: no two paths cross in the given
/// embedding and every pair is well arranged. The union of path edges never
/// grows. A fan that is already confluent comes back unchanged.
///
/// The rebuild first shrinks the union subgraph to one that is inclusion
/// minimal for routing the fan (dropping candidate edges in ascending id
/// order), re-extracts the paths from a maximum unit flow, and then repairs
/// crossings by exchanging prefixes at the offending vertex, keeping pairs
/// well arranged as it goes.
inline PathFan untangle(const MultiGraph& g, const RotationSystem& rs, const PathFan& fan,
                        UntangleTrace* trace = nullptr) {
    if (!is_valid_fan(g, fan)) throw graph_error("untangle: not a valid fan");
    UntangleTrace local;
    UntangleTrace& tr = trace ? *trace : local;
    tr = UntangleTrace{};
    if (fan.paths.size() <= 1) return fan;

    tr.initial_crossings = static_cast<int>(fan_crossings(g, rs, fan).size());
    if (tr.initial_crossings == 0 && is_well_arranged(fan)) return fan;
    tr.rebuilt = true;

    std::vector<VertexId> targets;
    for (const Path& p : fan.paths) targets.push_back(p.back());
    int r = static_cast<int>(targets.size());

    // inclusion-minimal union subgraph that still carries the whole fan
    std::set<EdgeId> keep = detail::fan_edge_union(fan);
    for (EdgeId e : std::vector<EdgeId>(keep.begin(), keep.end())) {
        std::set<EdgeId> trial = keep;
        trial.erase(e);
        MultiGraph sub = detail::edge_subgraph(g, trial);
        if (sub.degree(fan.center) >= r && max_fan_flow(sub, fan.center, targets) == r) keep = trial;
    }
    MultiGraph sub = detail::edge_subgraph(g, keep);
    auto extracted = menger_fan(sub, fan.center, targets);
    if (!extracted) throw graph_error("internal: fan vanished while minimizing its union");

    PathFan result;
    result.center = fan.center;
    result.paths = *extracted;

    auto potential = [&]() {
        return std::make_pair(detail::fan_edge_union(result).size(),
                              fan_crossings(g, rs, result).size());
    };
    auto last = potential();
    while (true) {
        // keep every pair well arranged first; rewires shrink the union
        bool rewired = false;
        for (size_t i = 0; i < result.paths.size() && !rewired; ++i)
            for (size_t j = i + 1; j < result.paths.size() && !rewired; ++j)
                if (!is_well_arranged(result.paths[i], result.paths[j])) {
                    auto [a, b] = rewire_well_arranged(result.paths[i], result.paths[j]);
                    result.paths[i] = a;
                    result.paths[j] = b;
                    ++tr.rewires;
                    rewired = true;
                }
        if (rewired) {
            auto now = potential();
            if (now >= last) throw graph_error("internal: untangle made no progress on a rewire");
            last = now;
            continue;
        }
        auto witnesses = fan_crossings(g, rs, result);
        if (witnesses.empty()) break;
        // lowest involved path; its crossing vertex nearest the target; lowest partner
        size_t pick_i = witnesses[0].path_a;
        for (const auto& w : witnesses) pick_i = std::min(pick_i, w.path_a);
        const Path& pi = result.paths[pick_i];
        int best_pos = -1;
        VertexId at = -1;
        size_t partner = 0;
        for (const auto& w : witnesses) {
            if (w.path_a != pick_i) continue;
            int pos = pi.position_of(w.at);
            if (pos > best_pos || (pos == best_pos && w.path_b < partner)) {
                best_pos = pos;
                at = w.at;
                partner = w.path_b;
            }
        }
        Path ni = concat(result.paths[partner].slice(result.paths[partner].front(), at),
                         pi.slice(at, pi.back()));
        Path nj = concat(pi.slice(pi.front(), at),
                         result.paths[partner].slice(at, result.paths[partner].back()));
        result.paths[pick_i] = ni;
        result.paths[partner] = nj;
        ++tr.exchanges;
        auto now = potential();
        if (now >= last) throw graph_error("internal: untangle made no progress on an exchange");
        last = now;
    }

    if (!is_valid_fan(g, result)) throw graph_error("internal: untangle produced an invalid fan");
    return result;
}

// ---------------------------------------------------------------------------
// Fan text format: "center <v>" then one "path <k>: <edge ids>" line per path
// ---------------------------------------------------------------------------

inline void write_fan(std::ostream& out, const PathFan& fan) {
    out << "fan v1\n";
    out << "center " << fan.center << "\n";
    for (size_t k = 0; k < fan.paths.size(); ++k) {
        out << "path " << k << ":";
        for (EdgeId e : fan.paths[k].edges) out << " " << e;
        out << "\n";
    }
}

inline std::string write_fan(const PathFan& fan) {
    std::ostringstream out;
    write_fan(out, fan);
    return out.str();
}

inline PathFan read_fan(std::istream& in, const MultiGraph& g) {
    PathFan fan;
    std::string line;
    int line_no = 0;
    bool header = false, have_center = false;
    std::map<int, std::vector<EdgeId>> raw;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        std::string word;
        ss >> word;
        if (!header) {
            if (word != "fan") throw parse_error(line_no, "expected fan header");
            std::string version;
            ss >> version;
            if (version != "v1") throw parse_error(line_no, "unsupported fan version");
            header = true;
        } else if (word == "center") {
            if (!(ss >> fan.center)) throw parse_error(line_no, "malformed center line");
            have_center = true;
        } else if (word == "path") {
            std::string id_token;
            if (!(ss >> id_token) || id_token.empty() || id_token.back() != ':')
                throw parse_error(line_no, "malformed path line");
            int k;
            try {
                k = std::stoi(id_token.substr(0, id_token.size() - 1));
            } catch (...) {
                throw parse_error(line_no, "malformed path index");
            }
            if (raw.count(k)) throw parse_error(line_no, "duplicate path index");
            std::vector<EdgeId> ids;
            EdgeId e;
            while (ss >> e) ids.push_back(e);
            raw[k] = ids;
        } else {
            throw parse_error(line_no, "unrecognized fan line");
        }
    }
    if (!header || !have_center) throw parse_error(1, "incomplete fan");
    for (const auto& [k, ids] : raw) {
        if (k != static_cast<int>(fan.paths.size())) throw parse_error(0, "path indices must be 0,1,...");
        fan.paths.push_back(path_from_edges(g, fan.center, ids));
    }
    return fan;
}

inline PathFan read_fan(const std::string& text, const MultiGraph& g) {
    std::istringstream in(text);
    return read_fan(in, g);
}

}  // namespace imkit
