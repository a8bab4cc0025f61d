#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cosparse/cli.hpp"
#include "cosparse/config.hpp"
#include "cosparse/errors.hpp"
#include "cosparse/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cosparse analysis-model recovery toolkit"};
    app.set_version_flag("--version", std::string(cosparse::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    auto* config_opt = app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--out", out_dir, "output directory (default: cwd)");
    auto* seed_opt = app.add_option("--seed", seed, "override the config 'seed' key");

    app.add_subcommand("constants", "error-bound constants and published-value comparison");
    app.add_subcommand("table1", "largest admissible delta sweep per p and policy");
    app.add_subcommand("figures", "K1-vs-delta and bound-vs-eta plots (CSV + SVG)");
    app.add_subcommand("recover", "build one instance, solve it, report error and bound");
    app.add_subcommand("rip", "restricted-isometry constants of a random instance");
    app.add_subcommand("verify", "run the inequality verification suite");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        cosparse::Config cfg;
        if (config_opt->count() > 0) cfg = cosparse::Config::load(config_path);
        if (seed_opt->count() > 0) cfg.set("seed", std::to_string(seed));
        const std::string name = app.get_subcommands().front()->get_name();
        return cosparse::cli::run_subcommand(name, std::move(cfg), out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
