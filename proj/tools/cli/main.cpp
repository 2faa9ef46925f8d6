#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "runner.hpp"
#include "tomolyap/version.hpp"

using namespace tomolyap::cli;

namespace {

struct Subcommand {
    CLI::App* app;
    ExperimentKind kind;
    std::string config_path;
    std::map<std::string, std::string> flags;
};

const std::map<std::string, std::string>& help_text() {
    static const std::map<std::string, std::string> text = {
        {"out", "Output directory"},
        {"format", "csv or json"},
        {"n", "Periods, steps or grid points (0 = experiment default)"},
        {"seed", "Random seed"},
        {"gamma", "Kick strength"},
        {"hbar", "Planck constant (0 = classical)"},
        {"tau", "Free-flight time per period"},
        {"q0", "Base point position"},
        {"p0", "Base point momentum"},
        {"v1", "Initial-condition weight on mu"},
        {"v2", "Initial-condition weight on nu"},
        {"z", "Harmonic kick strength"},
        {"variant", "Cat variant: H1, H2 or kick_only"},
        {"state", "Tomography state: gaussian or coherent"},
        {"sigma_q", "Gaussian position width"},
        {"sigma_p", "Gaussian momentum width"},
        {"correlation", "Gaussian q-p correlation"},
        {"directions", "Number of tomogram directions"},
        {"map", "Oracle family: standard_map, harmonic or cat"}};
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tomographic Lyapunov exponents for kicked systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tomolyap::kVersion));

    std::vector<Subcommand> subs;
    subs.reserve(6);
    const std::vector<std::pair<ExperimentKind, std::string>> kinds = {
        {ExperimentKind::Tomography, "Forward and inverse tomograms of a Gaussian or coherent state"},
        {ExperimentKind::Harmonic, "Harmonic kick: derivative series, Floquet report, exponent"},
        {ExperimentKind::Cat, "Quantum cat Floquet report"},
        {ExperimentKind::StandardMap, "Standard-map lattice run and exponent"},
        {ExperimentKind::Oracle, "Tangent-map Lyapunov exponent"},
        {ExperimentKind::Compare, "Cross-system comparison table"}};
    for (const auto& [kind, description] : kinds) {
        subs.push_back({app.add_subcommand(to_string(kind), description), kind, {}, {}});
        Subcommand& s = subs.back();
        if (kind == ExperimentKind::StandardMap) s.app->alias("standard_map");
        s.app->add_option("--config", s.config_path, "key = value configuration file");
        for (const auto& key : known_keys()) s.app->add_option("--" + key, s.flags[key], help_text().at(key));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_json("config", e.what()).dump() << "\n";
        return 2;
    }

    for (auto& s : subs) {
        if (!s.app->parsed()) continue;
        ExperimentConfig config;
        try {
            Settings settings;
            if (!s.config_path.empty()) settings = read_config_file(s.config_path);
            for (const auto& key : known_keys()) {
                if (s.app->count("--" + key) > 0) settings[key] = {s.flags[key], "--" + key};
            }
            config = build_config(s.kind, settings);
        } catch (const ConfigError& e) {
            std::cerr << error_json("config", e.what()).dump() << "\n";
            return 2;
        }
        return run_guarded(config, std::cout, std::cerr);
    }
    return 2;
}
