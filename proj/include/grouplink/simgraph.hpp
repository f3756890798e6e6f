#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grouplink/schema.hpp"

namespace grouplink {

/// Transitive closure of "similar on every common-value attribute at or
/// above the threshold". Returns one class index per input record. Candidate
/// pairs come from exact-match grouping plus 4-character-prefix and
/// rare-token buckets, so the closure is computed without comparing all
/// pairs.
std::vector<int> name_equivalence(const std::vector<const record*>& records, const schema& sch,
                                  double threshold);

struct v_clique {
    std::string attribute;
    std::string value;
    std::vector<int> members; // node indices, sorted
};

// V-clique representation of the similarity graph. Two records are adjacent
// iff they share a name class and at least one dominant value, i.e. they
// co-occur in some v-clique. Nodes may represent several records after
// simplification.
struct similarity_graph {
    struct rep_node {
        std::string id;
        std::vector<std::string> records; // sorted, non-empty
    };

    std::vector<rep_node> nodes;
    std::vector<v_clique> cliques;
    std::vector<std::vector<int>> node_cliques; // inverted index: node -> clique indices

    std::size_t record_count() const;
    bool consistent() const; // index and clique membership agree both ways
};

/// Builds the v-clique graph for a set of records: for every dominant value,
/// records sharing the value and a name class form a clique; size-1 cliques
/// and cliques contained in another clique are pruned. The result does not
/// depend on record order.
similarity_graph build_graph(const std::vector<const record*>& records, const schema& sch,
                             double name_edge_threshold);

/// Overload taking precomputed name classes (one per record).
similarity_graph build_graph(const std::vector<const record*>& records, const schema& sch,
                             const std::vector<int>& name_classes);

/// Merges nodes that belong to exactly one and the same v-clique into a
/// single representative node. Core identification on the simplified graph
/// yields the same record partition as on the original.
similarity_graph simplify(const similarity_graph& graph);

/// One line per v-clique: `clique_id<TAB>attribute=value<TAB>records`,
/// sorted by attribute, value, then members.
std::string dump_cliques(const similarity_graph& graph);

std::uint64_t fnv1a64(const std::string& text);

} // namespace grouplink
