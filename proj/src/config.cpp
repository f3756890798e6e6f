#include "grouplink/config.hpp"

#include <fstream>
#include <sstream>

namespace grouplink {

namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t");
    return text.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw config_error("config: bad number for " + key + ": '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long parsed = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw config_error("config: bad integer for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw config_error("config: bad boolean for " + key + ": '" + value + "'");
}

char parse_delimiter(const std::string& value) {
    if (value == "tab" || value == "\\t") return '\t';
    if (value == "comma") return ',';
    if (value.size() == 1) return value[0];
    throw config_error("config: bad delimiter '" + value + "'");
}

schema parse_schema_line(const std::string& value) {
    std::vector<attribute_spec> attributes;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::vector<std::string> parts;
        std::istringstream item_in(item);
        std::string part;
        while (std::getline(item_in, part, ':')) parts.push_back(trim(part));
        if (parts.size() < 2 || parts.size() > 3)
            throw config_error("config: bad schema attribute '" + item + "' (want name:role[:multi])");
        attribute_spec attr;
        attr.name = parts[0];
        if (parts[1] == "common") attr.role = attribute_role::common_value;
        else if (parts[1] == "dominant") attr.role = attribute_role::dominant_value;
        else if (parts[1] == "multi") attr.role = attribute_role::multi_value;
        else throw config_error("config: unknown attribute role '" + parts[1] + "'");
        if (parts.size() == 3) {
            if (parts[2] != "multi") throw config_error("config: bad attribute flag '" + parts[2] + "'");
            attr.multi_valued = true;
        }
        attributes.push_back(std::move(attr));
    }
    try {
        return schema(std::move(attributes));
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

} // namespace

void linkage_config::validate() const {
    if (k < 0) throw config_error("config: params.k must be >= 0");
    if (parallelism < 1) throw config_error("config: run.parallelism must be >= 1");
    for (auto [name, value] : {std::pair<const char*, double>{"name_block_threshold", name_block_threshold},
                               {"name_edge_threshold", name_edge_threshold},
                               {"theta_ini", grouping.theta_ini},
                               {"theta_s", grouping.theta_s}})
        if (value < 0.0 || value > 1.0)
            throw config_error(std::string("config: ") + name + " must be in [0,1]");
    try {
        grouping.sim.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    try {
        synth.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

linkage_config parse_config(const std::string& text) {
    linkage_config config;
    bool have_schema = false;
    std::istringstream in(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(line_number) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "schema.attributes") {
            config.schema = parse_schema_line(value);
            have_schema = true;
        } else if (key == "input.path") config.input_path = value;
        else if (key == "input.delimiter") config.io.delimiter = parse_delimiter(value);
        else if (key == "input.id_column") config.io.id_column = value;
        else if (key == "input.multi_value_separator") config.io.multi_value_separator = parse_delimiter(value);
        else if (key == "output.groups") config.output_path = value;
        else if (key == "eval.gold") config.gold_path = value;
        else if (key == "params.k") config.k = static_cast<int>(parse_int(key, value));
        else if (key == "params.name_block_threshold") config.name_block_threshold = parse_double(key, value);
        else if (key == "params.name_edge_threshold") config.name_edge_threshold = parse_double(key, value);
        else if (key == "params.p") config.grouping.sim.p = parse_double(key, value);
        else if (key == "params.theta_th") config.grouping.sim.theta_th = parse_double(key, value);
        else if (key == "params.theta_ini") config.grouping.theta_ini = parse_double(key, value);
        else if (key == "params.theta_s") config.grouping.theta_s = parse_double(key, value);
        else if (key == "params.alpha") config.grouping.alpha = parse_double(key, value);
        else if (key == "params.beta") config.grouping.beta = parse_double(key, value);
        else if (key == "params.w_c") config.grouping.sim.w_c = parse_double(key, value);
        else if (key == "params.w_o") config.grouping.sim.w_o = parse_double(key, value);
        else if (key == "params.w_m") config.grouping.sim.w_m = parse_double(key, value);
        else if (key == "params.distinct_boost") config.grouping.sim.distinct_boost = parse_double(key, value);
        else if (key == "params.value_match_threshold") config.grouping.sim.value_match_threshold = parse_double(key, value);
        else if (key == "params.primary_merge_threshold") config.grouping.sim.primary_merge_threshold = parse_double(key, value);
        else if (key == "run.parallelism") config.parallelism = static_cast<int>(parse_int(key, value));
        else if (key == "run.seed") config.seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "synth.chains") config.synth.chains = static_cast<int>(parse_int(key, value));
        else if (key == "synth.chain_size_min") config.synth.chain_size_min = static_cast<int>(parse_int(key, value));
        else if (key == "synth.chain_size_max") config.synth.chain_size_max = static_cast<int>(parse_int(key, value));
        else if (key == "synth.singletons") config.synth.singletons = static_cast<int>(parse_int(key, value));
        else if (key == "synth.local_value_rate") config.synth.local_value_rate = parse_double(key, value);
        else if (key == "synth.wrong_name_rate") config.synth.wrong_name_rate = parse_double(key, value);
        else if (key == "synth.wrong_url_rate") config.synth.wrong_url_rate = parse_double(key, value);
        else if (key == "synth.null_dominant_rate") config.synth.null_dominant_rate = parse_double(key, value);
        else if (key == "synth.shared_base_name") config.synth.shared_base_name = parse_bool(key, value);
        else if (key == "synth.seed") config.synth.seed = static_cast<std::uint64_t>(parse_int(key, value));
        else throw config_error("config: unknown key '" + key + "' (line " + std::to_string(line_number) + ")");
    }
    if (!have_schema) config.schema = synth_schema();
    config.validate();
    return config;
}

linkage_config load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace grouplink
