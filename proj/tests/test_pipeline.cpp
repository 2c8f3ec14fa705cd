#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "citycomplex/errors.hpp"
#include "citycomplex/pipeline.hpp"
#include "helpers.hpp"

using namespace citycomplex;
using testutil::TempDir;

namespace {

RunConfig small_config(const TempDir& dir) {
    RunConfig config;
    config.stores_path = dir.file("stores.csv");
    config.weather_path = dir.file("weather.csv");
    config.mobility_path = dir.file("mobility.csv");
    config.attributes_path = dir.file("cluster_attributes.csv");
    config.output_dir = dir.file("out");
    config.synth.seed = 20;
    config.synth.n_centers = 12;
    config.synth.stores_per_center = 45;
    config.synth.min_separation_km = 1.6;
    return config;
}

std::map<std::string, std::string> numeric_artifact_checksums(const std::string& out_dir) {
    std::map<std::string, std::string> sums;
    for (const auto& entry : std::filesystem::directory_iterator(out_dir)) {
        std::string name = entry.path().filename().string();
        if (name == "run_manifest.json") continue;  // carries wall-clock timings
        sums[name] = file_checksum(entry.path().string());
    }
    return sums;
}

}  // namespace

TEST_CASE("pipeline: synth then run produces every artifact") {
    TempDir dir("pipe_run");
    RunConfig config = small_config(dir);
    auto synth = cmd_synth(config);
    REQUIRE_MESSAGE(synth.ok, synth.error);
    CHECK(std::filesystem::exists(config.stores_path));
    CHECK(std::filesystem::exists(config.weather_path));
    CHECK(std::filesystem::exists(config.mobility_path));
    CHECK(std::filesystem::exists(config.attributes_path));
    CHECK(std::filesystem::exists(config.stores_path + ".truth.csv"));

    auto run = cmd_run(config);
    REQUIRE_MESSAGE(run.ok, (run.failed_stage + ": " + run.error));
    for (const char* artifact :
         {"amenity_field.csv", "clusters.geojson", "members.csv", "complexity.csv",
          "complexity_meta.json", "panel.csv", "regression.csv", "regression_table.txt",
          "correlations.csv", "run_manifest.json"}) {
        CHECK_MESSAGE(std::filesystem::exists(config.output_dir + "/" + artifact), artifact);
    }

    // Manifest reports success, echoes parameters, and checksums inputs.
    std::ifstream in(config.output_dir + "/run_manifest.json");
    auto manifest = nlohmann::json::parse(in);
    CHECK(manifest.at("status") == "ok");
    CHECK(manifest.at("parameters").at("gamma") == "7.580000");
    CHECK(manifest.at("input_checksums").at("stores") != "missing");
    CHECK(manifest.at("stage_timings").size() == 6);
}

TEST_CASE("pipeline: reruns and thread counts leave numeric artifacts byte-identical") {
    TempDir dir("pipe_det");
    RunConfig config = small_config(dir);
    REQUIRE(cmd_synth(config).ok);

    config.threads = 1;
    REQUIRE(cmd_run(config).ok);
    auto first = numeric_artifact_checksums(config.output_dir);

    REQUIRE(cmd_run(config).ok);
    CHECK(numeric_artifact_checksums(config.output_dir) == first);

    config.threads = 4;
    REQUIRE(cmd_run(config).ok);
    CHECK(numeric_artifact_checksums(config.output_dir) == first);
}

TEST_CASE("pipeline: missing input fails in the ingest stage with the path") {
    TempDir dir("pipe_missing");
    RunConfig config = small_config(dir);
    REQUIRE(cmd_synth(config).ok);
    std::filesystem::remove(config.weather_path);

    auto run = cmd_run(config);
    CHECK_FALSE(run.ok);
    CHECK(run.failed_stage == "ingest");
    CHECK(run.error.find("weather.csv") != std::string::npos);
    // The manifest is written even on failure.
    std::ifstream in(config.output_dir + "/run_manifest.json");
    REQUIRE(in.good());
    auto manifest = nlohmann::json::parse(in);
    CHECK(manifest.at("status") == "failed");
    CHECK(manifest.at("failed_stage") == "ingest");
}

TEST_CASE("pipeline: staged reruns reuse cached artifacts") {
    TempDir dir("pipe_stage");
    RunConfig config = small_config(dir);
    REQUIRE(cmd_synth(config).ok);
    REQUIRE(cmd_run(config).ok);
    auto before = numeric_artifact_checksums(config.output_dir);

    // Each stage alone reproduces its own outputs bit-for-bit.
    for (const std::string stage : {"field", "clusters", "complexity", "panel", "regress"}) {
        auto outcome = cmd_stage(stage, config);
        REQUIRE_MESSAGE(outcome.ok, (stage + ": " + outcome.error));
    }
    CHECK(numeric_artifact_checksums(config.output_dir) == before);

    CHECK_FALSE(cmd_stage("bogus", config).ok);
}

TEST_CASE("pipeline: a stage without its upstream artifact names the gap") {
    TempDir dir("pipe_upstream");
    RunConfig config = small_config(dir);
    REQUIRE(cmd_synth(config).ok);

    auto outcome = cmd_stage("clusters", config);
    CHECK_FALSE(outcome.ok);
    CHECK(outcome.error.find("MissingUpstream") != std::string::npos);
    CHECK(outcome.error.find("amenity_field.csv") != std::string::npos);

    outcome = cmd_stage("regress", config);
    CHECK_FALSE(outcome.ok);
    CHECK(outcome.error.find("panel.csv") != std::string::npos);
}

TEST_CASE("config: files parse, overrides win, unknown keys are rejected") {
    TempDir dir("pipe_config");
    testutil::write_text(dir.file("run.conf"),
                         "# pipeline settings\n"
                         "gamma = 5.0\n"
                         "output_dir = somewhere  # trailing comment\n"
                         "years = 2016,2017,2018\n"
                         "include_self = false\n"
                         "\n");
    RunConfig config = load_config(dir.file("run.conf"));
    CHECK(config.gamma == 5.0);
    CHECK(config.output_dir == "somewhere");
    CHECK(config.years == std::vector<int>{2016, 2017, 2018});
    CHECK_FALSE(config.include_self);

    config.set("gamma", "6.5");  // --set style override
    CHECK(config.gamma == 6.5);
    CHECK_THROWS_WITH_AS(config.set("gamm", "1.0"), doctest::Contains("gamm"),
                         PipelineError);

    testutil::write_text(dir.file("bad.conf"), "gamma 5.0\n");
    CHECK_THROWS_AS(load_config(dir.file("bad.conf")), PipelineError);
    CHECK_THROWS_AS(load_config(dir.file("nonexistent.conf")), PipelineError);
}

TEST_CASE("checksum: sensitive to content, stable across calls") {
    TempDir dir("pipe_sum");
    testutil::write_text(dir.file("a.txt"), "hello");
    testutil::write_text(dir.file("b.txt"), "hello");
    testutil::write_text(dir.file("c.txt"), "hellp");
    CHECK(file_checksum(dir.file("a.txt")) == file_checksum(dir.file("b.txt")));
    CHECK(file_checksum(dir.file("a.txt")) != file_checksum(dir.file("c.txt")));
    CHECK(file_checksum(dir.file("missing.txt")) == "missing");
}

TEST_CASE("panel csv: write and read are inverse") {
    TempDir dir("pipe_panel");
    RunConfig config = small_config(dir);
    REQUIRE(cmd_synth(config).ok);
    REQUIRE(cmd_run(config).ok);
    auto panel = read_panel_csv(config.output_dir + "/panel.csv");
    REQUIRE_FALSE(panel.empty());
    write_panel_csv(dir.file("copy.csv"), panel);
    CHECK(file_checksum(dir.file("copy.csv")) ==
          file_checksum(config.output_dir + "/panel.csv"));
}
