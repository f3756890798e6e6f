#pragma once

#include <map>
#include <string>
#include <vector>

#include "grouplink/config.hpp"
#include "grouplink/grouping.hpp"
#include "grouplink/metrics.hpp"
#include "grouplink/robustcore.hpp"
#include "grouplink/schema.hpp"
#include "grouplink/simgraph.hpp"

namespace grouplink {

/// Partitions all records into blocks by transitive name similarity at the
/// given threshold. Every record lands in exactly one block.
std::vector<std::vector<std::size_t>> block_by_name(const dataset& data, double threshold);

struct block_output {
    similarity_graph graph;                       // simplified v-clique graph of the block
    std::vector<core::k_core> cores;              // stage-one output
    std::map<std::string, std::string> groups;    // record id -> group id
};

/// Runs both stages on one block of records.
block_output process_block(const std::vector<const record*>& records, const linkage_config& config);

struct linkage_output {
    std::map<std::string, std::string> groups;
    std::vector<core::k_core> cores;
    std::string clique_dump; // concatenated per-block dumps, sorted
};

/// Full pipeline: blocking, graph construction, core identification and
/// clustering per block. Deterministic for a fixed config; blocks run in
/// parallel when config.parallelism > 1.
linkage_output run_linkage(const dataset& data, const linkage_config& config);

/// Stage two alone, from an externally supplied core assignment
/// (record id sets). Records of the dataset not covered by any core become
/// satellites.
linkage_output run_clustering(const dataset& data, const std::vector<std::vector<std::string>>& cores,
                              const linkage_config& config);

std::string dump_groups(const std::map<std::string, std::string>& groups);
std::map<std::string, std::string> parse_groups(const std::string& text);
std::vector<std::vector<std::string>> parse_core_dump(const std::string& text);

} // namespace grouplink
