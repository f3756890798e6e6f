#include "grouplink/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

namespace grouplink {

std::vector<std::vector<std::size_t>> block_by_name(const dataset& data, double threshold) {
    std::vector<const record*> records;
    records.reserve(data.records.size());
    for (const auto& rec : data.records) records.push_back(&rec);
    const auto classes = name_equivalence(records, data.schema, threshold);
    std::map<int, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < records.size(); ++i) blocks[classes[i]].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(blocks.size());
    for (auto& [cls, members] : blocks) {
        (void)cls;
        out.push_back(std::move(members));
    }
    return out;
}

block_output process_block(const std::vector<const record*>& records, const linkage_config& config) {
    block_output out;
    const auto classes = name_equivalence(records, config.schema, config.name_edge_threshold);
    out.graph = simplify(build_graph(records, config.schema, classes));
    out.cores = core::identify_cores(out.graph, config.k);

    std::map<std::string, const record*> by_id;
    for (const record* rec : records) by_id[rec->id] = rec;

    auto elements = std::make_shared<std::vector<element>>();
    std::set<std::string> in_core;
    for (const auto& core : out.cores) {
        std::vector<const record*> members;
        for (const auto& id : core.records) {
            members.push_back(by_id.at(id));
            in_core.insert(id);
        }
        elements->push_back(make_core_element(members, config.schema));
    }
    for (const record* rec : records)
        if (!in_core.count(rec->id)) elements->push_back(make_satellite_element(*rec, config.schema));

    signature_similarity_model model(config.schema, config.grouping.sim);
    const auto clustered = cluster_block(elements, config.grouping, model);
    out.groups = clustered.to_groups();
    return out;
}

namespace {

linkage_output merge_outputs(std::vector<block_output>& blocks) {
    linkage_output out;
    std::vector<std::string> clique_lines;
    for (auto& block : blocks) {
        out.groups.insert(block.groups.begin(), block.groups.end());
        out.cores.insert(out.cores.end(), block.cores.begin(), block.cores.end());
        std::istringstream dump(dump_cliques(block.graph));
        std::string line;
        while (std::getline(dump, line))
            if (!line.empty()) clique_lines.push_back(line);
    }
    std::sort(out.cores.begin(), out.cores.end());
    std::sort(clique_lines.begin(), clique_lines.end(),
              [](const std::string& a, const std::string& b) { return a.substr(17) < b.substr(17); });
    for (const auto& line : clique_lines) out.clique_dump += line + "\n";
    return out;
}

} // namespace

linkage_output run_linkage(const dataset& data, const linkage_config& config) {
    const auto blocks = block_by_name(data, config.name_block_threshold);
    std::vector<block_output> results(blocks.size());

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t b = begin; b < end; ++b) {
            std::vector<const record*> records;
            records.reserve(blocks[b].size());
            for (auto idx : blocks[b]) records.push_back(&data.records[idx]);
            results[b] = process_block(records, config);
        }
    };
    const int workers = std::min<int>(config.parallelism, static_cast<int>(blocks.size()));
    if (workers <= 1) {
        run_range(0, blocks.size());
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (blocks.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(blocks.size(), begin + chunk);
            if (begin < end) threads.emplace_back(run_range, begin, end);
        }
        for (auto& thread : threads) thread.join();
    }
    return merge_outputs(results);
}

linkage_output run_clustering(const dataset& data, const std::vector<std::vector<std::string>>& cores,
                              const linkage_config& config) {
    // Assign each supplied core to the block of its first record; satellites
    // are whatever the blocks do not cover with cores.
    const auto blocks = block_by_name(data, config.name_block_threshold);
    std::map<std::string, std::size_t> block_of;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (auto idx : blocks[b]) block_of[data.records[idx].id] = b;

    std::vector<std::vector<std::vector<std::string>>> block_cores(blocks.size());
    for (const auto& core : cores) {
        if (core.size() < 2) throw parse_error("cores: a core needs at least 2 records");
        auto it = block_of.find(core.front());
        if (it == block_of.end()) throw parse_error("cores: unknown record '" + core.front() + "'");
        block_cores[it->second].push_back(core);
    }

    std::vector<block_output> results(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        auto elements = std::make_shared<std::vector<element>>();
        std::set<std::string> in_core;
        for (const auto& core : block_cores[b]) {
            std::vector<const record*> members;
            for (const auto& id : core) {
                members.push_back(&data.by_id(id));
                in_core.insert(id);
            }
            elements->push_back(make_core_element(members, config.schema));
        }
        for (auto idx : blocks[b])
            if (!in_core.count(data.records[idx].id))
                elements->push_back(make_satellite_element(data.records[idx], config.schema));
        signature_similarity_model model(config.schema, config.grouping.sim);
        results[b].groups = cluster_block(elements, config.grouping, model).to_groups();
    }
    return merge_outputs(results);
}

std::string dump_groups(const std::map<std::string, std::string>& groups) {
    std::string out;
    for (const auto& [rec, group] : groups) out += rec + "\t" + group + "\n";
    return out;
}

std::map<std::string, std::string> parse_groups(const std::string& text) {
    return parse_gold_standard(text); // same record<TAB>group shape
}

std::vector<std::vector<std::string>> parse_core_dump(const std::string& text) {
    std::vector<std::vector<std::string>> cores;
    std::istringstream in(text);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto first_tab = line.find('\t');
        const auto second_tab = first_tab == std::string::npos ? std::string::npos : line.find('\t', first_tab + 1);
        if (second_tab == std::string::npos)
            throw parse_error("cores: row " + std::to_string(row) + " is not 'id<TAB>k<TAB>records'");
        std::vector<std::string> records;
        std::istringstream members(line.substr(second_tab + 1));
        std::string member;
        while (std::getline(members, member, ','))
            if (!member.empty()) records.push_back(member);
        cores.push_back(std::move(records));
    }
    return cores;
}

} // namespace grouplink
