#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cavityclock/config.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cavity clock precision simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, format, method;
    int n_max = -1;

    const std::vector<std::string> commands = {"state", "bogo", "qfi", "sweep",
                                               "circuit"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run configuration file")
            ->required();
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--n-max", n_max, "mode truncation override");
        sub->add_option("--method", method, "series1 or quadrature")
            ->check(CLI::IsMember({"series1", "quadrature"}));
    }

    CLI11_PARSE(app, argc, argv);
    const std::string chosen = app.get_subcommands().front()->get_name();

    try {
        cavityclock::RunConfig config =
            cavityclock::parse_config(read_file(config_path));

        // The positional command and the config file must agree.
        cavityclock::RunConfig probe =
            cavityclock::parse_config("command = " + chosen);
        if (probe.command != config.command) {
            std::cerr << "config file specifies a different command than '"
                      << chosen << "'\n";
            return 1;
        }
        if (!out_path.empty()) config.out = out_path;
        if (!format.empty()) {
            config.format = format == "json" ? cavityclock::OutputFormat::json
                                             : cavityclock::OutputFormat::csv;
        }
        if (n_max > 0) config.ints["n_max"] = n_max;
        if (!method.empty()) config.enums["method"] = method;

        const cavityclock::Table table = cavityclock::run_command(config);
        cavityclock::emit(table, config.format, config.out);
    } catch (const std::exception& err) {
        std::cerr << err.what() << '\n';
        return 1;
    }
    return 0;
}
