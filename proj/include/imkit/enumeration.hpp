#pragma once

#include <bit>
#include <set>
#include <string>

#include "imkit/multigraph.hpp"

namespace imkit {

/// All connected simple graphs with 1..max_n vertices, one representative per
/// isomorphism class, vertices labeled 0..n-1. When max_edges >= 0, classes
/// with more edges are dropped.
///
/// Each graph on n vertices arises from a graph on n-1 vertices by attaching
/// a new vertex to a nonempty neighborhood (delete a spanning tree leaf to see
/// the converse), so growing level by level and deduplicating on the canonical
/// key covers every class exactly once. Dropping over-cap graphs between
/// levels is safe because deleting a leaf never adds edges.
inline std::vector<MultiGraph> connected_graph_atlas(int max_n, int max_edges = -1) {
    if (max_n < 1) throw graph_error("connected_graph_atlas: need max_n >= 1");
    if (max_n > 9) throw graph_error("connected_graph_atlas: max_n > 9 is out of reach, use sampling");
    std::vector<MultiGraph> atlas;
    std::vector<MultiGraph> level;
    level.push_back(MultiGraph::with_vertices(1));
    atlas.push_back(level.front());
    for (int n = 2; n <= max_n; ++n) {
        std::vector<MultiGraph> next;
        std::set<std::string> seen;
        for (const MultiGraph& g : level) {
            for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
                if (max_edges >= 0 && g.num_edges() + std::popcount(mask) > max_edges) continue;
                MultiGraph h = g;
                VertexId fresh = h.add_vertex();
                for (int b = 0; b < n - 1; ++b)
                    if (mask >> b & 1) h.add_edge(b, fresh);
                if (seen.insert(canonical_key(h)).second) next.push_back(std::move(h));
            }
        }
        atlas.insert(atlas.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return atlas;
}

}  // namespace imkit
