#pragma once

#include <stdexcept>
#include <string>

#include "grouplink/grouping.hpp"
#include "grouplink/schema.hpp"
#include "grouplink/synth.hpp"

namespace grouplink {

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Everything a run needs, loadable from a flat key/value file with dotted
// section keys. All parameters default; a minimal config names only the
// schema and the input path.
struct linkage_config {
    grouplink::schema schema;
    parse_options io;
    grouping_params grouping;
    int k = 2;
    double name_block_threshold = 0.8;
    double name_edge_threshold = 0.95;
    int parallelism = 1;
    std::uint64_t seed = 1;
    std::string input_path;
    std::string output_path;
    std::string gold_path;
    synth_spec synth;

    void validate() const;
};

/// Parses `section.key = value` lines; `#` starts a comment. Unknown keys and
/// malformed values are rejected. The schema line reads
/// `schema.attributes = name:common, phone:dominant, url:dominant:multi`.
linkage_config parse_config(const std::string& text);
linkage_config load_config_file(const std::string& path);

} // namespace grouplink
