#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "grouplink/config.hpp"
#include "grouplink/schema.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline grouplink::schema listing_schema() {
    return grouplink::schema({{"name", grouplink::attribute_role::common_value, false},
                              {"phone", grouplink::attribute_role::dominant_value, false},
                              {"url", grouplink::attribute_role::dominant_value, true},
                              {"location", grouplink::attribute_role::multi_value, false},
                              {"category", grouplink::attribute_role::multi_value, true}});
}

inline grouplink::dataset load_listings() {
    grouplink::parse_options options;
    options.delimiter = '\t';
    return grouplink::parse_dataset_file(fixture_path("table2.tsv"), listing_schema(), options);
}

inline grouplink::linkage_config listing_config(int k) {
    grouplink::linkage_config config;
    config.schema = listing_schema();
    config.io.delimiter = '\t';
    config.k = k;
    return config;
}

inline std::vector<const grouplink::record*> record_ptrs(const grouplink::dataset& data) {
    std::vector<const grouplink::record*> out;
    out.reserve(data.records.size());
    for (const auto& rec : data.records) out.push_back(&rec);
    return out;
}

inline std::vector<const grouplink::record*> record_ptrs(const std::vector<grouplink::record>& records) {
    std::vector<const grouplink::record*> out;
    out.reserve(records.size());
    for (const auto& rec : records) out.push_back(&rec);
    return out;
}

// Random clique layouts for oracle-vs-algorithm comparisons.
inline std::vector<std::vector<std::string>> random_clique_layout(std::mt19937_64& rng, int max_nodes,
                                                                  int min_cliques = 2, int max_cliques = 5) {
    const int nodes = 4 + static_cast<int>(rng() % (max_nodes - 3));
    const int cliques = min_cliques + static_cast<int>(rng() % (max_cliques - min_cliques + 1));
    std::vector<std::vector<std::string>> out;
    for (int c = 0; c < cliques; ++c) {
        const int size = 2 + static_cast<int>(rng() % 4);
        std::vector<std::string> clique;
        for (int i = 0; i < size; ++i) {
            char label[8];
            std::snprintf(label, sizeof label, "n%02d", static_cast<int>(rng() % nodes));
            clique.emplace_back(label);
        }
        std::sort(clique.begin(), clique.end());
        clique.erase(std::unique(clique.begin(), clique.end()), clique.end());
        if (clique.size() >= 2) out.push_back(std::move(clique));
    }
    if (out.empty()) out.push_back({"n00", "n01"});
    return out;
}

} // namespace testutil
