#include "grouplink/simgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "grouplink/jaro_winkler.hpp"
#include "grouplink/union_find.hpp"

namespace grouplink {

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

namespace {

std::vector<std::string> tokenize(const std::string& value) {
    std::vector<std::string> tokens;
    std::string token;
    std::istringstream in(value);
    while (in >> token) tokens.push_back(token);
    return tokens;
}

// Union-find over distinct values of one attribute; candidate pairs share a
// 4-character prefix or their rarest token.
std::vector<int> value_classes(const std::vector<std::string>& values, double threshold) {
    union_find uf(values.size());
    std::map<std::string, std::vector<std::size_t>> buckets;
    std::unordered_map<std::string, int> token_freq;
    std::vector<std::vector<std::string>> tokens(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        tokens[i] = tokenize(values[i]);
        for (const auto& tok : tokens[i]) ++token_freq[tok];
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        buckets["p:" + values[i].substr(0, 4)].push_back(i);
        if (!tokens[i].empty()) {
            const std::string* rarest = &tokens[i][0];
            for (const auto& tok : tokens[i])
                if (token_freq[tok] < token_freq[*rarest] || (token_freq[tok] == token_freq[*rarest] && tok < *rarest))
                    rarest = &tok;
            buckets["t:" + *rarest].push_back(i);
        }
    }
    for (const auto& [key, members] : buckets) {
        (void)key;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (uf.same(members[i], members[j])) continue;
                if (jaro_winkler(values[members[i]], values[members[j]]) >= threshold)
                    uf.unite(members[i], members[j]);
            }
    }
    std::vector<int> cls(values.size());
    std::map<std::size_t, int> roots;
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto root = uf.find(i);
        auto it = roots.find(root);
        if (it == roots.end()) it = roots.emplace(root, static_cast<int>(roots.size())).first;
        cls[i] = it->second;
    }
    return cls;
}

} // namespace

std::vector<int> name_equivalence(const std::vector<const record*>& records, const schema& sch,
                                  double threshold) {
    const auto common = sch.names_with_role(attribute_role::common_value);
    const std::size_t n = records.size();
    union_find uf(n);

    if (common.size() == 1) {
        // Single common attribute: close over value classes directly. Records
        // are linked through each value they carry.
        const auto& attr = common.front();
        std::vector<std::string> values;
        std::map<std::string, int> value_index;
        std::vector<std::vector<std::size_t>> holders;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& value : records[i]->values_of(attr)) {
                auto it = value_index.find(value);
                if (it == value_index.end()) {
                    it = value_index.emplace(value, static_cast<int>(values.size())).first;
                    values.push_back(value);
                    holders.emplace_back();
                }
                holders[it->second].push_back(i);
            }
        }
        const auto cls = value_classes(values, threshold);
        std::map<int, std::size_t> class_anchor;
        for (std::size_t v = 0; v < values.size(); ++v) {
            if (holders[v].empty()) continue;
            auto it = class_anchor.find(cls[v]);
            if (it == class_anchor.end()) it = class_anchor.emplace(cls[v], holders[v].front()).first;
            for (auto rec : holders[v]) uf.unite(it->second, rec);
        }
    } else {
        // Several common attributes: pair records through first-attribute
        // buckets and require every attribute to agree.
        const auto& first = common.front();
        std::map<std::string, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& value : records[i]->values_of(first)) {
                buckets["p:" + value.substr(0, 4)].push_back(i);
                const auto toks = tokenize(value);
                for (const auto& tok : toks) buckets["t:" + tok].push_back(i);
            }
        auto similar = [&](const record& a, const record& b) {
            for (const auto& attr : common) {
                const auto& va = a.values_of(attr);
                const auto& vb = b.values_of(attr);
                if (va.empty() && vb.empty()) continue;
                if (va.empty() || vb.empty()) return false;
                double best = 0.0;
                for (const auto& x : va)
                    for (const auto& y : vb) best = std::max(best, jaro_winkler(x, y));
                if (best < threshold) return false;
            }
            return true;
        };
        for (const auto& [key, members] : buckets) {
            (void)key;
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    if (uf.same(members[i], members[j])) continue;
                    if (similar(*records[members[i]], *records[members[j]])) uf.unite(members[i], members[j]);
                }
        }
    }

    std::vector<int> cls(n);
    std::map<std::size_t, int> roots;
    for (std::size_t i = 0; i < n; ++i) {
        auto root = uf.find(i);
        auto it = roots.find(root);
        if (it == roots.end()) it = roots.emplace(root, static_cast<int>(roots.size())).first;
        cls[i] = it->second;
    }
    return cls;
}

std::size_t similarity_graph::record_count() const {
    std::size_t total = 0;
    for (const auto& node : nodes) total += node.records.size();
    return total;
}

bool similarity_graph::consistent() const {
    if (node_cliques.size() != nodes.size()) return false;
    for (std::size_t c = 0; c < cliques.size(); ++c)
        for (int member : cliques[c].members) {
            if (member < 0 || member >= static_cast<int>(nodes.size())) return false;
            const auto& entry = node_cliques[member];
            if (std::find(entry.begin(), entry.end(), static_cast<int>(c)) == entry.end()) return false;
        }
    for (std::size_t node = 0; node < node_cliques.size(); ++node)
        for (int c : node_cliques[node]) {
            const auto& members = cliques[c].members;
            if (!std::binary_search(members.begin(), members.end(), static_cast<int>(node))) return false;
        }
    return true;
}

similarity_graph build_graph(const std::vector<const record*>& records, const schema& sch,
                             double name_edge_threshold) {
    return build_graph(records, sch, name_equivalence(records, sch, name_edge_threshold));
}

similarity_graph build_graph(const std::vector<const record*>& records, const schema& sch,
                             const std::vector<int>& name_classes) {
    struct candidate {
        std::string attribute;
        std::string value;
        std::vector<int> members; // record indices, sorted
    };
    std::vector<candidate> candidates;
    for (const auto& attr : sch.names_with_role(attribute_role::dominant_value)) {
        std::map<std::string, std::map<int, std::vector<int>>> by_value_class;
        for (std::size_t i = 0; i < records.size(); ++i)
            for (const auto& value : records[i]->values_of(attr))
                by_value_class[value][name_classes[i]].push_back(static_cast<int>(i));
        for (auto& [value, classes] : by_value_class)
            for (auto& [cls, members] : classes) {
                (void)cls;
                if (members.size() < 2) continue; // size-1 v-cliques are pruned
                candidate cand{attr, value, std::move(members)};
                std::sort(cand.members.begin(), cand.members.end());
                candidates.push_back(std::move(cand));
            }
    }

    // Keep only maximal member sets. Processing largest-first means any
    // superset of a candidate has already been accepted, so one index probe
    // per candidate suffices; the outcome is independent of record order.
    std::stable_sort(candidates.begin(), candidates.end(), [](const candidate& a, const candidate& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        if (a.attribute != b.attribute) return a.attribute < b.attribute;
        return a.value < b.value;
    });
    std::vector<const candidate*> accepted;
    std::unordered_map<int, std::vector<int>> record_accepted; // record -> accepted indices
    for (const auto& cand : candidates) {
        bool contained = false;
        auto it = record_accepted.find(cand.members.front());
        if (it != record_accepted.end())
            for (int idx : it->second) {
                const auto& other = accepted[idx]->members;
                if (other.size() >= cand.members.size() &&
                    std::includes(other.begin(), other.end(), cand.members.begin(), cand.members.end())) {
                    contained = true;
                    break;
                }
            }
        if (contained) continue;
        const int idx = static_cast<int>(accepted.size());
        accepted.push_back(&cand);
        for (int rec : cand.members) record_accepted[rec].push_back(idx);
    }

    // Deterministic clique order for dumps and downstream processing.
    std::sort(accepted.begin(), accepted.end(), [](const candidate* a, const candidate* b) {
        if (a->attribute != b->attribute) return a->attribute < b->attribute;
        if (a->value != b->value) return a->value < b->value;
        return a->members < b->members;
    });

    similarity_graph graph;
    std::map<int, int> node_of_record;
    for (const candidate* cand : accepted)
        for (int rec : cand->members)
            if (!node_of_record.count(rec)) {
                node_of_record[rec] = static_cast<int>(graph.nodes.size());
                graph.nodes.push_back({records[rec]->id, {records[rec]->id}});
            }
    graph.node_cliques.resize(graph.nodes.size());
    for (const candidate* cand : accepted) {
        v_clique clique;
        clique.attribute = cand->attribute;
        clique.value = cand->value;
        for (int rec : cand->members) clique.members.push_back(node_of_record[rec]);
        std::sort(clique.members.begin(), clique.members.end());
        const int c = static_cast<int>(graph.cliques.size());
        for (int member : clique.members) graph.node_cliques[member].push_back(c);
        graph.cliques.push_back(std::move(clique));
    }
    return graph;
}

similarity_graph simplify(const similarity_graph& graph) {
    // Nodes whose clique membership is the same singleton merge into one
    // representative carrying all their records.
    std::map<int, std::vector<int>> single_clique_nodes; // clique -> nodes
    for (std::size_t node = 0; node < graph.node_cliques.size(); ++node)
        if (graph.node_cliques[node].size() == 1)
            single_clique_nodes[graph.node_cliques[node].front()].push_back(static_cast<int>(node));

    similarity_graph out;
    std::vector<int> remap(graph.nodes.size(), -1);
    auto add_node = [&](const std::vector<int>& sources) {
        similarity_graph::rep_node node;
        for (int src : sources)
            node.records.insert(node.records.end(), graph.nodes[src].records.begin(),
                                graph.nodes[src].records.end());
        std::sort(node.records.begin(), node.records.end());
        node.id = node.records.front();
        for (std::size_t i = 1; i < node.records.size(); ++i) node.id += "/" + node.records[i];
        const int idx = static_cast<int>(out.nodes.size());
        out.nodes.push_back(std::move(node));
        for (int src : sources) remap[src] = idx;
        return idx;
    };
    for (std::size_t node = 0; node < graph.nodes.size(); ++node) {
        if (remap[node] != -1) continue;
        if (graph.node_cliques[node].size() == 1) {
            const auto& group = single_clique_nodes[graph.node_cliques[node].front()];
            if (group.size() > 1) {
                add_node(group);
                continue;
            }
        }
        add_node({static_cast<int>(node)});
    }

    out.node_cliques.resize(out.nodes.size());
    for (const auto& clique : graph.cliques) {
        v_clique mapped{clique.attribute, clique.value, {}};
        std::set<int> members;
        for (int m : clique.members) members.insert(remap[m]);
        mapped.members.assign(members.begin(), members.end());
        const int c = static_cast<int>(out.cliques.size());
        for (int member : mapped.members) out.node_cliques[member].push_back(c);
        out.cliques.push_back(std::move(mapped));
    }
    return out;
}

std::string dump_cliques(const similarity_graph& graph) {
    std::vector<std::string> lines;
    for (const auto& clique : graph.cliques) {
        std::vector<std::string> members;
        for (int node : clique.members)
            members.insert(members.end(), graph.nodes[node].records.begin(), graph.nodes[node].records.end());
        std::sort(members.begin(), members.end());
        std::string joined;
        for (const auto& rec : members) {
            if (!joined.empty()) joined += ",";
            joined += rec;
        }
        char id[32];
        std::snprintf(id, sizeof id, "%016llx",
                      static_cast<unsigned long long>(
                          fnv1a64(clique.attribute + "\x1f" + clique.value + "\x1f" + joined)));
        lines.push_back(std::string(id) + "\t" + clique.attribute + "=" + clique.value + "\t" + joined);
    }
    std::sort(lines.begin(), lines.end(), [](const std::string& a, const std::string& b) {
        return a.substr(17) < b.substr(17); // order by attribute=value, members
    });
    std::string out;
    for (const auto& line : lines) out += line + "\n";
    return out;
}

} // namespace grouplink
