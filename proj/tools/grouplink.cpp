#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "grouplink/config.hpp"
#include "grouplink/metrics.hpp"
#include "grouplink/pipeline.hpp"
#include "grouplink/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitConfigError = 2;

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw grouplink::parse_error("cannot write '" + path + "'");
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw grouplink::parse_error("cannot open '" + path + "'");
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct common_options {
    std::string config_path;
    std::string input;
    std::string output;
    std::string gold;
};

grouplink::linkage_config load(const common_options& options) {
    auto config = options.config_path.empty() ? grouplink::parse_config("")
                                              : grouplink::load_config_file(options.config_path);
    if (!options.input.empty()) config.input_path = options.input;
    if (!options.output.empty()) config.output_path = options.output;
    if (!options.gold.empty()) config.gold_path = options.gold;
    return config;
}

grouplink::dataset load_input(const grouplink::linkage_config& config) {
    if (config.input_path.empty()) throw grouplink::config_error("config: no input path given");
    return grouplink::parse_dataset_file(config.input_path, config.schema, config.io);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"group linkage over delimited record files"};
    app.require_subcommand(1);

    common_options options;
    std::string cores_path, pred_path, gold_out;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path, "configuration file")->required();
        cmd->add_option("--input", options.input, "input dataset (overrides config)");
        cmd->add_option("--output", options.output, "output path ('-' for stdout)");
        return cmd;
    };

    auto* link = add_common(app.add_subcommand("link", "run the full pipeline and emit groups"));
    link->add_option("--gold", options.gold, "gold standard for a metrics line");
    auto* graph = add_common(app.add_subcommand("graph", "emit the v-clique dump"));
    auto* cores = add_common(app.add_subcommand("cores", "emit stage-one cores"));
    auto* cluster = add_common(app.add_subcommand("cluster", "cluster from an existing core dump"));
    cluster->add_option("--cores", cores_path, "core dump file")->required();
    auto* eval = app.add_subcommand("eval", "compare a group dump against a gold standard");
    eval->add_option("--pred", pred_path, "predicted groups")->required();
    eval->add_option("--gold", options.gold, "gold standard")->required();
    auto* synth = add_common(app.add_subcommand("synth", "generate planted-chain benchmark data"));
    synth->add_option("--gold-out", gold_out, "where to write the planted gold standard");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (link->parsed()) {
            const auto config = load(options);
            const auto data = load_input(config);
            const auto output = grouplink::run_linkage(data, config);
            write_or_print(config.output_path, grouplink::dump_groups(output.groups));
            if (!config.gold_path.empty()) {
                const auto gold = grouplink::parse_gold_standard_file(config.gold_path);
                std::cout << grouplink::evaluate(output.groups, gold).to_line() << "\n";
            }
        } else if (graph->parsed()) {
            const auto config = load(options);
            const auto data = load_input(config);
            write_or_print(config.output_path, grouplink::run_linkage(data, config).clique_dump);
        } else if (cores->parsed()) {
            const auto config = load(options);
            const auto data = load_input(config);
            write_or_print(config.output_path,
                           grouplink::core::dump_cores(grouplink::run_linkage(data, config).cores));
        } else if (cluster->parsed()) {
            const auto config = load(options);
            const auto data = load_input(config);
            const auto supplied = grouplink::parse_core_dump(slurp(cores_path));
            const auto output = grouplink::run_clustering(data, supplied, config);
            write_or_print(config.output_path, grouplink::dump_groups(output.groups));
        } else if (eval->parsed()) {
            const auto predicted = grouplink::parse_groups(slurp(pred_path));
            const auto gold = grouplink::parse_gold_standard_file(options.gold);
            std::cout << grouplink::evaluate(predicted, gold).to_line() << "\n";
        } else if (synth->parsed()) {
            const auto config = load(options);
            const auto [data, gold] = grouplink::generate_synthetic(config.synth);
            write_or_print(config.output_path, grouplink::serialize_dataset(data, config.io));
            if (!gold_out.empty()) write_or_print(gold_out, grouplink::serialize_gold_standard(gold));
        }
    } catch (const grouplink::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
