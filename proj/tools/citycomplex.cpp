#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citycomplex/errors.hpp"
#include "citycomplex/pipeline.hpp"

namespace {

citycomplex::RunConfig make_config(const std::string& config_path,
                                   const std::vector<std::string>& overrides) {
    citycomplex::RunConfig config;
    if (const char* env_out = std::getenv("CITYCOMPLEX_OUT")) config.output_dir = env_out;
    if (!config_path.empty()) {
        citycomplex::RunConfig loaded = citycomplex::load_config(config_path);
        std::string out = config.output_dir;
        config = loaded;
        if (std::getenv("CITYCOMPLEX_OUT") && loaded.output_dir == "out") {
            config.output_dir = out;  // env var only fills the default
        }
    }
    for (const auto& kv : overrides) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            throw citycomplex::PipelineError("BadConfig",
                                             "--set expects key=value, got '" + kv + "'");
        }
        config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return config;
}

int report(const citycomplex::RunOutcome& outcome) {
    for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << '\n';
    if (!outcome.ok) {
        std::cerr << "error in stage '" << outcome.failed_stage << "': " << outcome.error
                  << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amenity-decay clustering, economic complexity, and heat-wave mobility "
                 "regression pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "Flat key=value config file");
    app.add_option("--set", overrides, "Override a config key (key=value); later wins");

    auto* run = app.add_subcommand("run", "Run the full pipeline");
    auto* synth = app.add_subcommand("synth", "Generate synthetic input files");
    std::string stage_name;
    auto* stage = app.add_subcommand("stage", "Re-run one stage from cached artifacts");
    stage->add_option("name", stage_name, "field|clusters|complexity|panel|regress")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        citycomplex::RunConfig config = make_config(config_path, overrides);
        if (run->parsed()) return report(citycomplex::cmd_run(config));
        if (synth->parsed()) return report(citycomplex::cmd_synth(config));
        if (stage->parsed()) return report(citycomplex::cmd_stage(stage_name, config));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
