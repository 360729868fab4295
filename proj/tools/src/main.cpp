#include <algorithm>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace tricomi;
using namespace tricomi::cli;

namespace {
// grid.N -> --grid.N, p_grid -> --p-grid
std::string flag_name(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tricomi equation toolkit: exponents, propagators, blowup and Strichartz experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kArtifactVersion));

    std::string config_path, out_dir = ".";
    unsigned long long seed = 1;
    app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "RNG seed for random data and ensembles")->capture_default_str();
    app.add_option("--out", out_dir, "directory for CSV and JSON artifacts")->capture_default_str();

    // one string slot per schema key; only keys given on the command line override the config
    std::map<std::string, std::map<std::string, std::string>> overrides;
    std::map<std::string, CLI::App*> subs;
    for (const auto& cmd : commands()) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.summary);
        sub->fallthrough();
        auto& slots = overrides[cmd.name];
        for (const auto& k : cmd.schema) {
            std::string help = k.help;
            if (!k.default_value.empty()) help += " [" + k.default_value + "]";
            sub->add_option(flag_name(k.key), slots[k.key], help);
        }
        subs[cmd.name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        for (const auto& cmd : commands()) {
            CLI::App* sub = subs.at(cmd.name);
            if (!sub->parsed()) continue;
            Config cfg(cmd.schema);
            if (!config_path.empty()) cfg.load_file(config_path);
            for (const auto& k : cmd.schema)
                if (sub->count(flag_name(k.key)) > 0) cfg.set(k.key, overrides[cmd.name][k.key]);
            const RunContext ctx{cmd.name, out_dir, seed};
            const nlohmann::json result = cmd.run(cfg, ctx);
            std::cout << result.dump(2) << '\n';
            return 0;
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
