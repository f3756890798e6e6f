#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grouplink/simgraph.hpp"

namespace grouplink::core {

// Shared node pool for a core-identification run. Subgraphs reference nodes
// by pool index; separator marks and merged representatives live here.
class node_pool {
public:
    struct node {
        std::string label;
        std::vector<std::string> records; // sorted, non-empty
        bool separator = false;
    };

    int add(std::string label, std::vector<std::string> records);
    const node& at(int id) const { return nodes_[id]; }
    void mark_separator(int id) { nodes_[id].separator = true; }
    std::size_t size() const { return nodes_.size(); }

private:
    std::vector<node> nodes_;
};

// A subgraph under examination: node ids plus the v-cliques restricted to
// them. Nodes may be isolated (in no clique).
struct subgraph {
    std::vector<int> nodes;              // sorted pool ids
    std::vector<std::vector<int>> cliques; // each sorted, size >= 2

    bool same_nodes_as(const subgraph& other) const { return nodes == other.nodes; }
};

struct k_core {
    std::vector<std::string> records; // sorted, size >= 2
    int k = 0;

    bool operator==(const k_core& other) const = default;
    bool operator<(const k_core& other) const { return records < other.records; }
};

// (k+1)-connected v-union: cliques chained by pairwise overlaps of at least
// k+1 nodes, with the border to every other union.
struct v_union {
    std::vector<int> cliques;  // indices into the parent subgraph's clique list
    std::set<int> nodes;       // pool ids covered by those cliques
    std::set<int> border;      // nodes shared with cliques outside the union
};

struct vunion_result {
    std::vector<v_union> unions;
    // shared nodes per clique pair (indices into subgraph cliques, a < b)
    std::map<std::pair<int, int>, std::set<int>> clique_borders;
};

/// Groups the subgraph's cliques into (k+1)-connected v-unions: union-find
/// where two cliques merge when they share at least k+1 nodes. Borders are
/// collected from the inverted index in the same pass.
vunion_result find_vunions(const subgraph& g, int k);

struct screen_result {
    std::vector<k_core> cores;
    std::vector<subgraph> parts;
};

/// One screening pass. Emits single multi-record nodes as cores, splits off
/// every v-union whose border to the rest has at most k nodes (the border
/// nodes are dropped; they can belong to no core), and otherwise returns the
/// input unchanged to signal that it satisfies the (k+1)-overlap condition.
/// A union that is split off with an empty border is collapsed into a single
/// representative node: it satisfies the (k+1)-connected condition, so it is
/// k-robust as a whole.
screen_result screen(node_pool& pool, const subgraph& g, int k);

// Directed flow network for vertex connectivity between two nodes: interior
// nodes are split into an in/out pair joined by an arc whose capacity is the
// node's record multiplicity; all other arcs are infinite.
struct flow_network {
    struct arc {
        int to;
        long long capacity;
        int reverse; // index of the reverse arc in adj[to]
    };
    int source = 0;
    int sink = 1;
    long long infinite = 0;
    std::vector<std::vector<arc>> adj;
    std::vector<int> split_of; // network node -> pool node id when the arc out of it is a split arc, else -1

    long long split_capacity(int pool_node) const; // capacity of the node's split arc, -1 if absent
};

/// Builds the flow network for kappa(a, b) over the subgraph. Throws if a or
/// b is not in the subgraph.
flow_network build_flow_network(const node_pool& pool, const subgraph& g, int a, int b);

struct max_flow_result {
    long long value = 0;
    bool infinite = false;     // a and b are adjacent: no vertex cut exists
    std::set<int> cut_nodes;   // pool ids whose split arcs form the min cut
};

/// Max flow by shortest augmenting paths. If stop_at is given, augmenting
/// stops once the flow reaches it (the cut is then not extracted).
max_flow_result max_flow(const flow_network& net, std::optional<long long> stop_at = std::nullopt);

struct split_result {
    std::optional<k_core> core; // set when the subgraph is k-robust
    std::vector<subgraph> parts;
    std::set<int> separator; // pool ids marked in this call
};

/// Max-flow robustness check: one (a, b) probe per pair of adjacent
/// v-unions decides k-robustness. On failure the min cut becomes a
/// separator, the separator is re-added to every component, and the parts go
/// back to screening. A single v-union is k-robust outright.
split_result split(node_pool& pool, const subgraph& g, int k);

/// Full core identification. Connected components small enough to enumerate
/// (at most exact_bound representative nodes) are solved exactly against the
/// maximal-partitioning definition; larger components run the screen/split
/// work-queue loop, which peels provable separators but can over-merge in
/// rare overlap patterns. Cores are expanded to record id sets and returned
/// sorted.
std::vector<k_core> identify_cores(node_pool& pool, const subgraph& root, int k,
                                   std::size_t exact_bound = 13);

/// Convenience entry point from a v-clique similarity graph.
std::vector<k_core> identify_cores(const similarity_graph& graph, int k, std::size_t exact_bound = 13);

/// Screen/split work-queue loop alone (the scalable recursion), regardless of
/// component size.
std::vector<k_core> identify_cores_recursive(node_pool& pool, const subgraph& root, int k);

// ---------------------------------------------------------------------------
// Brute-force oracles (Definition-level semantics, exponential).

struct oracle_error : std::runtime_error {
    explicit oracle_error(const std::string& what) : std::runtime_error(what) {}
};

/// Expands representative nodes to one vertex per record and checks
/// Definition-level k-robustness: connected after removal of every node
/// subset of size <= k. Throws when the expanded graph exceeds max_nodes.
bool brute_force_k_robust(const node_pool& pool, const subgraph& g, int k, std::size_t max_nodes = 14);

/// Enumerates every maximal k-robust partitioning of the expanded graph and
/// intersects co-membership across all of them; classes of size >= 2 are the
/// k-cores. Throws when the expanded graph exceeds max_nodes.
std::vector<std::vector<std::string>> brute_force_cores(const node_pool& pool, const subgraph& g, int k,
                                                        std::size_t max_nodes = 10);

/// Minimum vertex separator size between two non-adjacent vertices of the
/// expanded graph by subset enumeration (Menger check for max_flow).
int brute_force_min_separator(const node_pool& pool, const subgraph& g, const std::string& record_a,
                              const std::string& record_b, std::size_t max_nodes = 12);

/// Builds a pool + subgraph from cliques given as record label lists; every
/// record becomes its own node. Convenience for tests and oracles.
std::pair<node_pool, subgraph> make_graph(const std::vector<std::vector<std::string>>& cliques);

/// Same, with explicit multi-record representative nodes: each node is a
/// list of records; cliques reference nodes by index.
std::pair<node_pool, subgraph> make_rep_graph(const std::vector<std::vector<std::string>>& node_records,
                                              const std::vector<std::vector<int>>& cliques);

std::pair<node_pool, subgraph> to_core_graph(const similarity_graph& graph);

/// `core_id<TAB>k<TAB>record ids comma-separated`, sorted.
std::string dump_cores(const std::vector<k_core>& cores);

} // namespace grouplink::core
