// wgqed: config-driven waveguide-QED transport runs.
//
//   wgqed <config-path> [--out <path>] [--seed <u64>]
//
// Exit codes: 0 success, 1 validation error (bad config, unwritable path),
// 2 numerical degeneracy.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wgqed/errors.hpp"
#include "wgqed/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"single-photon transport through waveguide-coupled emitter chains"};
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("config", config_path, "run configuration file")->required();
    app.add_option("--out", out_path, "output CSV path (default: config path with .csv)");
    app.add_option("--seed", seed, "override the config's random seed")
        ->each([&seed_given](const std::string&) { seed_given = true; });
    CLI11_PARSE(app, argc, argv);

    std::ifstream file(config_path);
    if (!file) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return 1;
    }
    std::ostringstream text;
    text << file.rdbuf();

    try {
        wgqed::RunConfig cfg = wgqed::parse_config(text.str());
        if (seed_given) cfg.seed = seed;
        if (!out_path.empty()) cfg.out = out_path;
        if (cfg.out.empty())
            cfg.out = std::filesystem::path(config_path).replace_extension(".csv").string();
        const std::string summary = wgqed::run(cfg, cfg.out);
        std::cout << summary << " out=" << cfg.out << "\n";
        return 0;
    } catch (const wgqed::degeneracy_error& e) {
        std::cerr << "degeneracy: " << e.what() << "\n";
        return 2;
    } catch (const wgqed::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
