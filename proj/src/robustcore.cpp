#include "grouplink/robustcore.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <unordered_map>

#include "grouplink/union_find.hpp"

namespace grouplink::core {

int node_pool::add(std::string label, std::vector<std::string> records) {
    std::sort(records.begin(), records.end());
    nodes_.push_back({std::move(label), std::move(records), false});
    return static_cast<int>(nodes_.size()) - 1;
}

namespace {

// Drops duplicate cliques and cliques contained in another. Border
// bookkeeping in screen assumes maximal cliques; a contained clique would
// inflate its parent union's border with interior nodes.
std::vector<std::vector<int>> normalize_cliques(std::vector<std::vector<int>> cliques) {
    for (auto& clique : cliques) {
        std::sort(clique.begin(), clique.end());
        clique.erase(std::unique(clique.begin(), clique.end()), clique.end());
    }
    std::sort(cliques.begin(), cliques.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    std::vector<std::vector<int>> kept;
    for (auto& clique : cliques) {
        if (clique.size() < 2) continue;
        bool contained = false;
        for (const auto& other : kept)
            if (std::includes(other.begin(), other.end(), clique.begin(), clique.end())) {
                contained = true;
                break;
            }
        if (!contained) kept.push_back(std::move(clique));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

subgraph restrict_to(const subgraph& g, const std::set<int>& keep) {
    subgraph out;
    out.nodes.assign(keep.begin(), keep.end());
    std::vector<std::vector<int>> cliques;
    for (const auto& clique : g.cliques) {
        std::vector<int> members;
        for (int node : clique)
            if (keep.count(node)) members.push_back(node);
        if (members.size() >= 2) cliques.push_back(std::move(members));
    }
    out.cliques = normalize_cliques(std::move(cliques));
    return out;
}

std::vector<std::set<int>> connected_components(const subgraph& g) {
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) index[g.nodes[i]] = i;
    union_find uf(g.nodes.size());
    for (const auto& clique : g.cliques)
        for (std::size_t i = 1; i < clique.size(); ++i) uf.unite(index[clique[0]], index[clique[i]]);
    std::map<std::size_t, std::set<int>> by_root;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) by_root[uf.find(i)].insert(g.nodes[i]);
    std::vector<std::set<int>> out;
    for (auto& [root, nodes] : by_root) {
        (void)root;
        out.push_back(std::move(nodes));
    }
    return out;
}

std::map<int, std::set<int>> adjacency_of(const subgraph& g) {
    std::map<int, std::set<int>> adj;
    for (int node : g.nodes) adj[node];
    for (const auto& clique : g.cliques)
        for (std::size_t i = 0; i < clique.size(); ++i)
            for (std::size_t j = i + 1; j < clique.size(); ++j) {
                adj[clique[i]].insert(clique[j]);
                adj[clique[j]].insert(clique[i]);
            }
    return adj;
}

} // namespace

vunion_result find_vunions(const subgraph& g, int k) {
    vunion_result result;
    const auto clique_count = g.cliques.size();
    if (clique_count == 0) return result;

    // Inverted index over this subgraph, then shared nodes per clique pair.
    std::map<int, std::vector<int>> entries;
    for (std::size_t c = 0; c < clique_count; ++c)
        for (int node : g.cliques[c]) entries[node].push_back(static_cast<int>(c));
    for (const auto& [node, cliques] : entries)
        for (std::size_t i = 0; i < cliques.size(); ++i)
            for (std::size_t j = i + 1; j < cliques.size(); ++j)
                result.clique_borders[{cliques[i], cliques[j]}].insert(node);

    union_find uf(clique_count);
    for (const auto& [pair, shared] : result.clique_borders)
        if (shared.size() >= static_cast<std::size_t>(k + 1)) uf.unite(pair.first, pair.second);

    std::map<std::size_t, std::size_t> root_to_union;
    for (std::size_t c = 0; c < clique_count; ++c) {
        const auto root = uf.find(c);
        auto it = root_to_union.find(root);
        if (it == root_to_union.end()) {
            it = root_to_union.emplace(root, result.unions.size()).first;
            result.unions.emplace_back();
        }
        auto& u = result.unions[it->second];
        u.cliques.push_back(static_cast<int>(c));
        u.nodes.insert(g.cliques[c].begin(), g.cliques[c].end());
    }
    for (const auto& [pair, shared] : result.clique_borders) {
        const auto ua = root_to_union[uf.find(pair.first)];
        const auto ub = root_to_union[uf.find(pair.second)];
        if (ua == ub) continue;
        result.unions[ua].border.insert(shared.begin(), shared.end());
        result.unions[ub].border.insert(shared.begin(), shared.end());
    }
    return result;
}

screen_result screen(node_pool& pool, const subgraph& g, int k) {
    screen_result result;
    if (g.nodes.empty()) return result;

    if (g.nodes.size() == 1) {
        const auto& node = pool.at(g.nodes.front());
        if (!node.separator && node.records.size() >= 2)
            result.cores.push_back({node.records, k});
        return result; // single-record or separator nodes are discarded
    }

    // Nodes outside every clique are disconnected from the rest; hand them
    // back one by one.
    std::set<int> covered;
    for (const auto& clique : g.cliques) covered.insert(clique.begin(), clique.end());
    if (covered.size() < g.nodes.size()) {
        std::set<int> covered_keep;
        for (int node : g.nodes) {
            if (covered.count(node)) {
                covered_keep.insert(node);
            } else {
                result.parts.push_back({{node}, {}});
            }
        }
        if (!covered_keep.empty()) result.parts.push_back(restrict_to(g, covered_keep));
        return result;
    }

    const auto vu = find_vunions(g, k);

    // A union violates the (k+1)-overlap condition when its border to the
    // rest has at most k nodes. The condition is vacuous when the union has
    // no interior of its own or when nothing lies outside it.
    std::vector<std::size_t> violating;
    for (std::size_t i = 0; i < vu.unions.size(); ++i) {
        const auto& u = vu.unions[i];
        if (u.border.size() > static_cast<std::size_t>(k)) continue;
        if (u.nodes.size() <= u.border.size()) continue;        // no interior left
        if (u.nodes.size() >= g.nodes.size()) continue;         // nothing outside
        violating.push_back(i);
    }

    if (violating.empty()) {
        const auto components = connected_components(g);
        if (components.size() <= 1) {
            result.parts.push_back(g); // unchanged: g is a (k+1)-overlap graph
        } else {
            for (const auto& comp : components) result.parts.push_back(restrict_to(g, comp));
        }
        return result;
    }

    std::set<int> carved_nodes;
    for (auto idx : violating) {
        const auto& u = vu.unions[idx];
        carved_nodes.insert(u.nodes.begin(), u.nodes.end());
        std::set<int> interior;
        for (int node : u.nodes)
            if (!u.border.count(node)) interior.insert(node);
        if (interior.empty()) continue;
        if (u.border.empty()) {
            // The whole union stands alone and satisfies the (k+1)-connected
            // condition, hence it is k-robust; collapse it to one
            // representative unless a separator mark must survive.
            bool any_separator = false;
            for (int node : interior) any_separator |= pool.at(node).separator;
            if (!any_separator && interior.size() > 1) {
                std::vector<std::string> records;
                for (int node : interior) {
                    const auto& rec = pool.at(node).records;
                    records.insert(records.end(), rec.begin(), rec.end());
                }
                std::sort(records.begin(), records.end());
                std::string label = records.front();
                for (std::size_t i = 1; i < records.size(); ++i) label += "/" + records[i];
                const int merged = pool.add(std::move(label), std::move(records));
                result.parts.push_back({{merged}, {}});
                continue;
            }
        }
        result.parts.push_back(restrict_to(g, interior));
    }

    std::set<int> remainder;
    for (int node : g.nodes)
        if (!carved_nodes.count(node)) remainder.insert(node);
    if (!remainder.empty()) result.parts.push_back(restrict_to(g, remainder));
    return result;
}

long long flow_network::split_capacity(int pool_node) const {
    for (std::size_t v = 0; v < split_of.size(); ++v) {
        if (split_of[v] != pool_node || adj[v].empty()) continue;
        return adj[v].front().capacity; // the split arc is the first arc added at v_in
    }
    return -1;
}

flow_network build_flow_network(const node_pool& pool, const subgraph& g, int a, int b) {
    if (std::find(g.nodes.begin(), g.nodes.end(), a) == g.nodes.end() ||
        std::find(g.nodes.begin(), g.nodes.end(), b) == g.nodes.end())
        throw std::invalid_argument("build_flow_network: endpoint not in subgraph");
    if (a == b) throw std::invalid_argument("build_flow_network: endpoints must differ");

    flow_network net;
    long long total = 0;
    for (int node : g.nodes) total += static_cast<long long>(pool.at(node).records.size());
    net.infinite = total + 1;

    // source 0, sink 1, then (v_in, v_out) pairs for interior nodes
    std::map<int, std::pair<int, int>> inout;
    net.adj.resize(2);
    net.split_of.assign(2, -1);
    for (int node : g.nodes) {
        if (node == a || node == b) continue;
        const int v_in = static_cast<int>(net.adj.size());
        const int v_out = v_in + 1;
        net.adj.resize(v_out + 1);
        net.split_of.push_back(node); // v_in
        net.split_of.push_back(-1);   // v_out
        inout[node] = {v_in, v_out};
    }

    auto add_arc = [&](int from, int to, long long capacity) {
        net.adj[from].push_back({to, capacity, static_cast<int>(net.adj[to].size())});
        net.adj[to].push_back({from, 0, static_cast<int>(net.adj[from].size()) - 1});
    };
    for (const auto& [node, pair] : inout) {
        add_arc(pair.first, pair.second, static_cast<long long>(pool.at(node).records.size()));
        add_arc(pair.second, pair.first, net.infinite);
    }
    const auto adj = adjacency_of(g);
    for (const auto& [u, neighbors] : adj)
        for (int v : neighbors) {
            if (u == b || v == a) continue; // arcs never leave the sink or enter the source
            if (u == a) {
                if (v == b) add_arc(net.source, net.sink, net.infinite);
                else add_arc(net.source, inout.at(v).first, net.infinite);
            } else if (v == b) {
                add_arc(inout.at(u).second, net.sink, net.infinite);
            } else {
                add_arc(inout.at(u).second, inout.at(v).first, net.infinite);
            }
        }
    return net;
}

max_flow_result max_flow(const flow_network& net, std::optional<long long> stop_at) {
    auto adj = net.adj; // residual copy
    max_flow_result result;
    const long long limit = stop_at ? std::min(*stop_at, net.infinite) : net.infinite;

    while (result.value < limit) {
        // BFS for a shortest augmenting path
        std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1}); // (node, arc index)
        std::deque<int> queue{net.source};
        parent[net.source] = {net.source, -1};
        while (!queue.empty() && parent[net.sink].first == -1) {
            const int u = queue.front();
            queue.pop_front();
            for (std::size_t i = 0; i < adj[u].size(); ++i) {
                const auto& arc = adj[u][i];
                if (arc.capacity <= 0 || parent[arc.to].first != -1) continue;
                parent[arc.to] = {u, static_cast<int>(i)};
                queue.push_back(arc.to);
            }
        }
        if (parent[net.sink].first == -1) break;
        long long bottleneck = net.infinite;
        for (int v = net.sink; v != net.source;) {
            const auto [u, idx] = parent[v];
            bottleneck = std::min(bottleneck, adj[u][idx].capacity);
            v = u;
        }
        for (int v = net.sink; v != net.source;) {
            const auto [u, idx] = parent[v];
            adj[u][idx].capacity -= bottleneck;
            adj[adj[u][idx].to][adj[u][idx].reverse].capacity += bottleneck;
            v = u;
        }
        result.value += bottleneck;
    }

    if (result.value >= net.infinite) {
        result.infinite = true;
        return result;
    }
    if (stop_at && result.value >= *stop_at) return result; // cut not extracted

    // Min cut: split arcs from the residual source side to the unreachable side.
    std::vector<bool> reachable(adj.size(), false);
    std::deque<int> queue{net.source};
    reachable[net.source] = true;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto& arc : adj[u])
            if (arc.capacity > 0 && !reachable[arc.to]) {
                reachable[arc.to] = true;
                queue.push_back(arc.to);
            }
    }
    for (std::size_t v = 0; v < net.adj.size(); ++v) {
        if (net.split_of[v] == -1 || !reachable[v]) continue;
        for (const auto& arc : net.adj[v])
            if (net.split_of[arc.to] == -1 && arc.capacity > 0 && arc.capacity < net.infinite && !reachable[arc.to])
                result.cut_nodes.insert(net.split_of[v]);
    }
    return result;
}

namespace {

// Deterministic union ordering: by the sorted label list of member nodes.
std::vector<std::size_t> order_unions(const node_pool& pool, const std::vector<v_union>& unions) {
    std::vector<std::vector<std::string>> keys(unions.size());
    for (std::size_t i = 0; i < unions.size(); ++i) {
        for (int node : unions[i].nodes) keys[i].push_back(pool.at(node).label);
        std::sort(keys[i].begin(), keys[i].end());
    }
    std::vector<std::size_t> order(unions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    return order;
}

k_core whole_subgraph_core(const node_pool& pool, const subgraph& g, int k) {
    k_core core;
    core.k = k;
    for (int node : g.nodes) {
        const auto& rec = pool.at(node).records;
        core.records.insert(core.records.end(), rec.begin(), rec.end());
    }
    std::sort(core.records.begin(), core.records.end());
    return core;
}

} // namespace

split_result split(node_pool& pool, const subgraph& g, int k) {
    split_result result;
    const auto vu = find_vunions(g, k);
    if (vu.unions.size() <= 1) {
        // A (k+1)-connected v-union is k-robust on its own.
        result.core = whole_subgraph_core(pool, g, k);
        return result;
    }

    const auto order = order_unions(pool, vu.unions);
    auto smallest_exclusive = [&](const v_union& u, const v_union& other) -> std::optional<int> {
        std::optional<int> best;
        for (int node : u.nodes) {
            if (other.nodes.count(node)) continue;
            if (!best || pool.at(node).label < pool.at(*best).label) best = node;
        }
        return best;
    };

    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const auto& qa = vu.unions[order[i]];
            const auto& qb = vu.unions[order[j]];
            bool adjacent = false;
            for (int node : qa.nodes)
                if (qb.nodes.count(node)) {
                    adjacent = true;
                    break;
                }
            if (!adjacent) continue;
            const auto a = smallest_exclusive(qa, qb);
            const auto b = smallest_exclusive(qb, qa);
            if (!a || !b) continue; // one union swallowed by the other: nothing to probe

            const auto net = build_flow_network(pool, g, *a, *b);
            const auto flow = max_flow(net, static_cast<long long>(k) + 1);
            if (flow.infinite || flow.value > k) continue;

            result.separator = flow.cut_nodes;
            for (int node : result.separator) pool.mark_separator(node);
            std::set<int> keep;
            for (int node : g.nodes)
                if (!result.separator.count(node)) keep.insert(node);
            const auto rest = restrict_to(g, keep);
            for (const auto& comp : connected_components(rest)) {
                std::set<int> with_separator = comp;
                with_separator.insert(result.separator.begin(), result.separator.end());
                result.parts.push_back(restrict_to(g, with_separator));
            }
            return result;
        }
    }
    result.core = whole_subgraph_core(pool, g, k);
    return result;
}

std::vector<k_core> identify_cores_recursive(node_pool& pool, const subgraph& root, int k) {
    std::vector<k_core> cores;
    std::deque<subgraph> queue{root};
    while (!queue.empty()) {
        subgraph g = std::move(queue.front());
        queue.pop_front();
        auto screened = screen(pool, g, k);
        for (auto& core : screened.cores) cores.push_back(std::move(core));
        const bool unchanged = screened.parts.size() == 1 && screened.parts.front().same_nodes_as(g);
        if (!unchanged) {
            for (auto& part : screened.parts) queue.push_back(std::move(part));
            continue;
        }
        std::set<int> marked;
        for (int node : g.nodes)
            if (pool.at(node).separator) marked.insert(node);
        if (!marked.empty()) {
            std::set<int> keep;
            for (int node : g.nodes)
                if (!marked.count(node)) keep.insert(node);
            if (!keep.empty()) queue.push_back(restrict_to(g, keep));
            continue;
        }
        auto divided = split(pool, g, k);
        if (divided.core) {
            if (divided.core->records.size() >= 2) cores.push_back(std::move(*divided.core));
        } else {
            for (auto& part : divided.parts) queue.push_back(std::move(part));
        }
    }
    std::sort(cores.begin(), cores.end());
    return cores;
}

namespace {

// Representative-node view of a component for the exact procedure: removing
// part of a node's records never disconnects anything, so only whole-node
// removals matter and each costs the node's multiplicity. Relies on the
// compression invariant that a multi-record representative sits in at most
// one clique, which keeps its records interchangeable.
struct rep_view {
    std::vector<int> pool_ids;
    std::vector<int> weight;
    std::vector<unsigned> adjacency;
    unsigned all = 0;
};

rep_view to_rep_view(const node_pool& pool, const subgraph& g) {
    rep_view view;
    std::map<int, int> index;
    for (int node : g.nodes) {
        index[node] = static_cast<int>(view.pool_ids.size());
        view.pool_ids.push_back(node);
        view.weight.push_back(static_cast<int>(pool.at(node).records.size()));
    }
    view.adjacency.assign(view.pool_ids.size(), 0);
    for (const auto& clique : g.cliques)
        for (std::size_t i = 0; i < clique.size(); ++i)
            for (std::size_t j = i + 1; j < clique.size(); ++j) {
                view.adjacency[index[clique[i]]] |= 1u << index[clique[j]];
                view.adjacency[index[clique[j]]] |= 1u << index[clique[i]];
            }
    view.all = view.pool_ids.size() >= 32 ? ~0u : (1u << view.pool_ids.size()) - 1u;
    return view;
}

bool view_connected(const rep_view& g, unsigned mask) {
    if (mask == 0) return true;
    const unsigned start = mask & static_cast<unsigned>(-static_cast<int>(mask));
    unsigned seen = start;
    unsigned frontier = start;
    while (frontier) {
        unsigned next = 0;
        unsigned rest = frontier;
        while (rest) {
            const int v = __builtin_ctz(rest);
            rest &= rest - 1;
            next |= g.adjacency[v] & mask & ~seen;
        }
        seen |= next;
        frontier = next;
    }
    return seen == mask;
}

bool view_k_robust(const rep_view& g, unsigned mask, int k) {
    if (!view_connected(g, mask)) return false;
    std::vector<int> removable;
    for (int v = 0; v < static_cast<int>(g.pool_ids.size()); ++v)
        if ((mask & (1u << v)) && g.weight[v] <= k) removable.push_back(v);
    std::function<bool(std::size_t, unsigned, int)> recurse = [&](std::size_t from, unsigned removed,
                                                                  int budget) {
        if (!view_connected(g, mask & ~removed)) return false;
        for (std::size_t i = from; i < removable.size(); ++i) {
            if (g.weight[removable[i]] > budget) continue;
            if (!recurse(i + 1, removed | (1u << removable[i]), budget - g.weight[removable[i]])) return false;
        }
        return true;
    };
    return recurse(0, 0u, k);
}

// Exact core identification per the maximal-partitioning definition,
// enumerated over representative nodes. Aborts (returns false) when the
// enumeration exceeds the step budget.
bool exact_component_cores(const node_pool& pool, const subgraph& g, int k, std::vector<k_core>& cores,
                           long long step_budget = 40'000'000) {
    const auto view = to_rep_view(pool, g);
    const int n = static_cast<int>(view.pool_ids.size());
    if (n == 0) return true;
    if (n == 1) {
        if (!pool.at(view.pool_ids[0]).separator && pool.at(view.pool_ids[0]).records.size() >= 2)
            cores.push_back({pool.at(view.pool_ids[0]).records, k});
        return true;
    }

    std::vector<char> robust(view.all + 1u, 0);
    long long steps = 0;
    for (unsigned mask = 1; mask <= view.all; ++mask) {
        steps += __builtin_popcount(mask);
        robust[mask] = view_k_robust(view, mask, k) ? 1 : 0;
    }

    std::vector<unsigned> parts;
    std::vector<unsigned> comember(n, view.all);
    bool any_partition = false;
    bool aborted = false;
    std::function<void(unsigned)> recurse = [&](unsigned remaining) {
        if (aborted) return;
        if (++steps > step_budget) {
            aborted = true;
            return;
        }
        if (remaining == 0) {
            const auto count = parts.size();
            for (unsigned subset = 1; subset < (1u << count); ++subset) {
                if (__builtin_popcount(subset) < 2) continue;
                unsigned merged = 0;
                for (std::size_t i = 0; i < count; ++i)
                    if (subset & (1u << i)) merged |= parts[i];
                if (robust[merged]) return;
            }
            any_partition = true;
            for (int v = 0; v < n; ++v)
                for (unsigned part : parts)
                    if (part & (1u << v)) {
                        comember[v] &= part;
                        break;
                    }
            return;
        }
        const unsigned low = remaining & static_cast<unsigned>(-static_cast<int>(remaining));
        const unsigned others = remaining & ~low;
        unsigned sub = others;
        while (true) {
            const unsigned part = sub | low;
            if (robust[part]) {
                bool mergeable = false;
                for (unsigned placed : parts)
                    if (robust[placed | part]) {
                        mergeable = true;
                        break;
                    }
                if (!mergeable) {
                    parts.push_back(part);
                    recurse(remaining & ~part);
                    parts.pop_back();
                    if (aborted) return;
                }
            }
            if (sub == 0) break;
            sub = (sub - 1) & others;
        }
    };
    recurse(view.all);
    if (aborted || !any_partition) return false;

    std::vector<bool> done(n, false);
    for (int v = 0; v < n; ++v) {
        if (done[v]) continue;
        std::vector<std::string> records;
        for (int u = 0; u < n; ++u)
            if ((comember[v] & (1u << u)) && (comember[u] & (1u << v))) {
                done[u] = true;
                const auto& recs = pool.at(view.pool_ids[u]).records;
                records.insert(records.end(), recs.begin(), recs.end());
            }
        if (records.size() >= 2) {
            std::sort(records.begin(), records.end());
            cores.push_back({std::move(records), k});
        }
    }
    return true;
}

} // namespace

std::vector<k_core> identify_cores(node_pool& pool, const subgraph& root, int k, std::size_t exact_bound) {
    std::vector<k_core> cores;
    for (const auto& component : connected_components(root)) {
        const auto g = restrict_to(root, component);
        if (g.nodes.size() <= exact_bound) {
            std::vector<k_core> exact;
            if (exact_component_cores(pool, g, k, exact)) {
                cores.insert(cores.end(), exact.begin(), exact.end());
                continue;
            }
        }
        auto recursive = identify_cores_recursive(pool, g, k);
        cores.insert(cores.end(), recursive.begin(), recursive.end());
    }
    std::sort(cores.begin(), cores.end());
    return cores;
}

std::vector<k_core> identify_cores(const similarity_graph& graph, int k, std::size_t exact_bound) {
    auto [pool, root] = to_core_graph(graph);
    return identify_cores(pool, root, k, exact_bound);
}

// ---------------------------------------------------------------------------
// Brute-force oracles

namespace {

struct expanded_graph {
    std::vector<std::string> labels;   // one per record
    std::vector<unsigned> adjacency;   // bitmask per vertex
    unsigned all = 0;
};

expanded_graph expand(const node_pool& pool, const subgraph& g, std::size_t max_nodes) {
    expanded_graph out;
    std::map<int, std::vector<int>> vertex_of_node;
    for (int node : g.nodes)
        for (const auto& rec : pool.at(node).records) {
            vertex_of_node[node].push_back(static_cast<int>(out.labels.size()));
            out.labels.push_back(rec);
        }
    if (out.labels.size() > max_nodes)
        throw oracle_error("oracle bound exceeded: " + std::to_string(out.labels.size()) + " > " +
                           std::to_string(max_nodes));
    out.adjacency.assign(out.labels.size(), 0);
    auto connect = [&](int u, int v) {
        out.adjacency[u] |= 1u << v;
        out.adjacency[v] |= 1u << u;
    };
    // Records of one representative node form a clique, as do the expansions
    // of each v-clique.
    for (int node : g.nodes) {
        const auto& verts = vertex_of_node[node];
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) connect(verts[i], verts[j]);
    }
    for (const auto& clique : g.cliques) {
        std::vector<int> verts;
        for (int node : clique)
            verts.insert(verts.end(), vertex_of_node[node].begin(), vertex_of_node[node].end());
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) connect(verts[i], verts[j]);
    }
    out.all = out.labels.size() == 32 ? ~0u : (1u << out.labels.size()) - 1u;
    return out;
}

bool mask_connected(const expanded_graph& g, unsigned mask) {
    if (mask == 0) return true;
    const unsigned start = mask & static_cast<unsigned>(-static_cast<int>(mask));
    unsigned seen = start;
    unsigned frontier = start;
    while (frontier) {
        unsigned next = 0;
        unsigned rest = frontier;
        while (rest) {
            const int v = __builtin_ctz(rest);
            rest &= rest - 1;
            next |= g.adjacency[v] & mask & ~seen;
        }
        seen |= next;
        frontier = next;
    }
    return seen == mask;
}

bool mask_k_robust(const expanded_graph& g, unsigned mask, int k) {
    if (!mask_connected(g, mask)) return false;
    // Remove every subset of size <= k.
    const int n = __builtin_popcount(mask);
    if (n <= 1) return true;
    std::vector<int> verts;
    for (int v = 0; v < 32; ++v)
        if (mask & (1u << v)) verts.push_back(v);
    std::function<bool(std::size_t, unsigned, int)> recurse = [&](std::size_t from, unsigned removed, int left) {
        if (!mask_connected(g, mask & ~removed)) return false;
        if (left == 0) return true;
        for (std::size_t i = from; i < verts.size(); ++i)
            if (!recurse(i + 1, removed | (1u << verts[i]), left - 1)) return false;
        return true;
    };
    return recurse(0, 0u, std::min(k, n));
}

} // namespace

bool brute_force_k_robust(const node_pool& pool, const subgraph& g, int k, std::size_t max_nodes) {
    const auto expanded = expand(pool, g, max_nodes);
    return mask_k_robust(expanded, expanded.all, k);
}

std::vector<std::vector<std::string>> brute_force_cores(const node_pool& pool, const subgraph& g, int k,
                                                        std::size_t max_nodes) {
    const auto graph = expand(pool, g, max_nodes);
    const int n = static_cast<int>(graph.labels.size());
    if (n == 0) return {};

    std::vector<char> robust(graph.all + 1u, 0);
    for (unsigned mask = 1; mask <= graph.all; ++mask) robust[mask] = mask_k_robust(graph, mask, k) ? 1 : 0;

    // Enumerate partitions into k-robust parts; prune when two placed parts
    // merge into a robust set (can never be maximal). A complete partition is
    // maximal when no union of two or more parts is robust.
    std::vector<unsigned> parts;
    std::vector<std::vector<unsigned>> maximal;
    std::function<void(unsigned)> recurse = [&](unsigned remaining) {
        if (remaining == 0) {
            const auto count = parts.size();
            for (unsigned subset = 1; subset < (1u << count); ++subset) {
                if (__builtin_popcount(subset) < 2) continue;
                unsigned merged = 0;
                for (std::size_t i = 0; i < count; ++i)
                    if (subset & (1u << i)) merged |= parts[i];
                if (robust[merged]) return;
            }
            maximal.push_back(parts);
            return;
        }
        const unsigned low = remaining & static_cast<unsigned>(-static_cast<int>(remaining));
        // Every subset of `remaining` containing the lowest vertex
        const unsigned others = remaining & ~low;
        unsigned sub = others;
        while (true) {
            const unsigned part = sub | low;
            if (robust[part]) {
                bool mergeable = false;
                for (unsigned placed : parts)
                    if (robust[placed | part]) {
                        mergeable = true;
                        break;
                    }
                if (!mergeable) {
                    parts.push_back(part);
                    recurse(remaining & ~part);
                    parts.pop_back();
                }
            }
            if (sub == 0) break;
            sub = (sub - 1) & others;
        }
    };
    recurse(graph.all);

    if (maximal.empty()) return {};
    // Co-membership intersection across all maximal partitionings.
    std::vector<unsigned> comember(n, graph.all);
    for (const auto& partition : maximal) {
        for (int v = 0; v < n; ++v) {
            for (unsigned part : partition)
                if (part & (1u << v)) {
                    comember[v] &= part;
                    break;
                }
        }
    }
    std::vector<std::vector<std::string>> cores;
    std::vector<bool> done(n, false);
    for (int v = 0; v < n; ++v) {
        if (done[v]) continue;
        std::vector<std::string> records;
        for (int u = 0; u < n; ++u)
            if (comember[v] & (1u << u)) {
                if ((comember[u] & (1u << v)) == 0) continue;
                done[u] = true;
                records.push_back(graph.labels[u]);
            }
        if (records.size() >= 2) {
            std::sort(records.begin(), records.end());
            cores.push_back(std::move(records));
        }
    }
    std::sort(cores.begin(), cores.end());
    return cores;
}

int brute_force_min_separator(const node_pool& pool, const subgraph& g, const std::string& record_a,
                              const std::string& record_b, std::size_t max_nodes) {
    const auto graph = expand(pool, g, max_nodes);
    int a = -1, b = -1;
    for (int v = 0; v < static_cast<int>(graph.labels.size()); ++v) {
        if (graph.labels[v] == record_a) a = v;
        if (graph.labels[v] == record_b) b = v;
    }
    if (a < 0 || b < 0) throw oracle_error("brute_force_min_separator: unknown record");
    if (graph.adjacency[a] & (1u << b)) return -1; // adjacent: no separator exists

    const unsigned candidates = graph.all & ~(1u << a) & ~(1u << b);
    for (int size = 0; size <= __builtin_popcount(candidates); ++size) {
        std::function<bool(unsigned, int, int)> try_sets = [&](unsigned chosen, int remaining, int from) -> bool {
            if (remaining == 0) {
                const unsigned mask = graph.all & ~chosen;
                // connected from a to b?
                unsigned seen = 1u << a;
                unsigned frontier = seen;
                while (frontier) {
                    unsigned next = 0;
                    unsigned rest = frontier;
                    while (rest) {
                        const int v = __builtin_ctz(rest);
                        rest &= rest - 1;
                        next |= graph.adjacency[v] & mask & ~seen;
                    }
                    seen |= next;
                    frontier = next;
                }
                return (seen & (1u << b)) == 0;
            }
            for (int v = from; v < static_cast<int>(graph.labels.size()); ++v)
                if ((candidates & (1u << v)) && try_sets(chosen | (1u << v), remaining - 1, v + 1)) return true;
            return false;
        };
        if (try_sets(0u, size, 0)) return size;
    }
    return __builtin_popcount(candidates);
}

std::pair<node_pool, subgraph> make_graph(const std::vector<std::vector<std::string>>& cliques) {
    node_pool pool;
    subgraph g;
    std::map<std::string, int> node_of;
    std::vector<std::vector<int>> raw;
    for (const auto& clique : cliques) {
        std::vector<int> members;
        for (const auto& label : clique) {
            auto it = node_of.find(label);
            if (it == node_of.end()) it = node_of.emplace(label, pool.add(label, {label})).first;
            members.push_back(it->second);
        }
        raw.push_back(std::move(members));
    }
    g.cliques = normalize_cliques(std::move(raw));
    for (const auto& [label, id] : node_of) {
        (void)label;
        g.nodes.push_back(id);
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    return {std::move(pool), std::move(g)};
}

std::pair<node_pool, subgraph> make_rep_graph(const std::vector<std::vector<std::string>>& node_records,
                                              const std::vector<std::vector<int>>& cliques) {
    node_pool pool;
    subgraph g;
    for (const auto& records : node_records) {
        std::string label = records.front();
        for (std::size_t i = 1; i < records.size(); ++i) label += "/" + records[i];
        g.nodes.push_back(pool.add(std::move(label), records));
    }
    g.cliques = normalize_cliques(cliques);
    return {std::move(pool), std::move(g)};
}

std::pair<node_pool, subgraph> to_core_graph(const similarity_graph& graph) {
    node_pool pool;
    subgraph g;
    for (const auto& node : graph.nodes) g.nodes.push_back(pool.add(node.id, node.records));
    std::vector<std::vector<int>> raw;
    for (const auto& clique : graph.cliques) raw.push_back(clique.members);
    g.cliques = normalize_cliques(std::move(raw));
    return {std::move(pool), std::move(g)};
}

std::string dump_cores(const std::vector<k_core>& cores) {
    std::string out;
    auto sorted = cores;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& core : sorted) {
        std::string joined;
        for (const auto& rec : core.records) {
            if (!joined.empty()) joined += ",";
            joined += rec;
        }
        char id[32];
        std::snprintf(id, sizeof id, "%016llx", static_cast<unsigned long long>(fnv1a64(joined)));
        out += std::string(id) + "\t" + std::to_string(core.k) + "\t" + joined + "\n";
    }
    return out;
}

} // namespace grouplink::core
