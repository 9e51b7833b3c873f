#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "imkit/multigraph.hpp"

namespace imkit {

// The interchange format:
//   line 1:   <n> <m>
//   m lines:  <u> <v>      with 0 <= u < v < n
// '#' starts a comment, blank lines are ignored. Readers accept edges in any
// order; writers renumber vertices to 0..n-1 (sorted id order) and emit the
// edge list sorted, so write(read(t)) is the canonical form of t.

namespace detail {

// Pulls the next significant line, stripping comments. Returns false at EOF.
inline bool next_data_line(std::istream& in, std::string& out, int& line_no) {
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        bool blank = raw.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        out = raw;
        return true;
    }
    return false;
}

}  // namespace detail

inline MultiGraph read_multigraph(std::istream& in) {
    int line_no = 0;
    std::string line;
    if (!detail::next_data_line(in, line, line_no)) throw parse_error(line_no, "expected header '<n> <m>'");
    std::istringstream header(line);
    long long n = -1, m = -1;
    std::string extra;
    if (!(header >> n >> m) || (header >> extra))
        throw parse_error(line_no, "malformed header, expected '<n> <m>'");
    if (n < 0 || m < 0) throw parse_error(line_no, "negative counts in header");
    if (n > 1000000 || m > 1000000) throw parse_error(line_no, "unreasonable counts in header");
    MultiGraph g = MultiGraph::with_vertices(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!detail::next_data_line(in, line, line_no))
            throw parse_error(line_no, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        std::istringstream row(line);
        long long u = -1, v = -1;
        if (!(row >> u >> v) || (row >> extra)) throw parse_error(line_no, "malformed edge, expected '<u> <v>'");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw parse_error(line_no, "edge endpoint out of range [0, " + std::to_string(n) + ")");
        if (u == v) throw parse_error(line_no, "loop edges are forbidden");
        if (u > v) throw parse_error(line_no, "edge endpoints must satisfy u < v");
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    if (detail::next_data_line(in, line, line_no)) throw parse_error(line_no, "trailing content after edge list");
    return g;
}

inline MultiGraph read_multigraph(const std::string& text) {
    std::istringstream in(text);
    return read_multigraph(in);
}

inline void write_multigraph(std::ostream& out, const MultiGraph& g) {
    std::map<VertexId, int> index;
    for (VertexId v : g.vertices()) index.emplace(v, static_cast<int>(index.size()));
    std::vector<std::pair<int, int>> rows;
    rows.reserve(g.num_edges());
    for (const auto& [e, rec] : g.edges()) {
        int a = index.at(rec.u), b = index.at(rec.v);
        rows.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(rows.begin(), rows.end());
    out << g.num_vertices() << " " << g.num_edges() << "\n";
    for (auto [a, b] : rows) out << a << " " << b << "\n";
}

inline std::string write_multigraph(const MultiGraph& g) {
    std::ostringstream out;
    write_multigraph(out, g);
    return out.str();
}

}  // namespace imkit
