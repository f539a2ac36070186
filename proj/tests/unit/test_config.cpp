#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conflab/config.hpp"
#include "conflab/report.hpp"
#include "conflab/runner.hpp"

using namespace conflab;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("conflab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}
}  // namespace

TEST_CASE("defaults, overrides and validation") {
    ExperimentConfig cfg("energy");
    CHECK(cfg.preset() == "default");
    CHECK(cfg.seed() == 1);
    cfg.apply_override("p-list=0.4,0.6");
    CHECK(cfg.reals("p_list") == std::vector<double>{0.4, 0.6});
    cfg.apply_override("density=power:alpha=0.25,n=3;koebe");
    CHECK(cfg.ids("density") == std::vector<std::string>{"power:alpha=0.25,n=3", "koebe"});
    CHECK_THROWS_AS(cfg.apply_override("nonsense=1"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_override("novalue"), ConfigError);
    cfg.set("preset", "huge");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.set("preset", "fine");
    CHECK_NOTHROW(cfg.validate());
    cfg.set("seed", "-3");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig("plot"), ConfigError);
}

TEST_CASE("points and typed values") {
    ExperimentConfig cfg("gh");
    const auto pts = cfg.points("endpoints");
    REQUIRE(pts.size() == 4);
    CHECK(pts[2] == std::vector<double>{-1.0, 0.0});
    CHECK(cfg.integer("count") == 200);
    cfg.set("count", "2x");
    CHECK_THROWS_AS(cfg.integer("count"), ConfigError);
    cfg.set("endpoints", "0.5");
    CHECK_THROWS_AS(cfg.points("endpoints"), ConfigError);
}

TEST_CASE("INI files") {
    const fs::path dir = scratch("ini");
    const fs::path file = dir / "run.ini";
    std::ofstream(file) << "preset = coarse\n[general]\nseed = 7\n[energy]\ndensity = moebius:a=0.2\np_list = 0.5\n"
                           "[gh]\ncount = 5\n";
    ExperimentConfig cfg("energy");
    cfg.load_file(file.string());
    CHECK(cfg.preset() == "coarse");
    CHECK(cfg.seed() == 7);
    CHECK(cfg.text("density") == "moebius:a=0.2");
    CHECK(cfg.reals("p_list") == std::vector<double>{0.5});
    CHECK_THROWS_AS(cfg.load_file((dir / "missing.ini").string()), ConfigError);
    std::ofstream(dir / "bad.ini") << "[energy]\nwhatever = 1\n";
    CHECK_THROWS_AS(cfg.load_file((dir / "bad.ini").string()), ConfigError);
}

TEST_CASE("report helpers") {
    CHECK(json_number(1.5) == 1.5);
    CHECK(json_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(csv_series({{4, 0.5}, {5, 0.75}}) == "k,truncation_value\n4,0.5\n5,0.75\n");
    const fs::path dir = scratch("atomic");
    const std::string path = (dir / "sub" / "a.json").string();
    write_atomic(path, "{}\n");
    write_atomic(path, "{\"x\":1}\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "{\"x\":1}\n");
    CHECK_FALSE(fs::exists(path + ".tmp"));
}

TEST_CASE("runner exit codes and determinism") {
    const fs::path dir = scratch("runner");
    ExperimentConfig cfg("beta");
    cfg.set("preset", "coarse");
    cfg.set("density", "constant;koebe");
    cfg.set("out", dir.string());
    std::ostringstream log, err;
    CHECK(run_and_write(cfg, log, err) == kExitOk);
    CHECK(fs::exists(dir / "beta.json"));
    CHECK(fs::exists(dir / "beta_koebe.csv"));
    const RunResult a = run(cfg);
    const RunResult b = run(cfg);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.report["schema"] == 1);
    CHECK(a.report["config"]["density"] == "constant;koebe");

    ExperimentConfig bad("beta");
    bad.set("density", "spline");
    CHECK(run_and_write(bad, log, err) == kExitUsage);
    CHECK(err.str().find("density") != std::string::npos);
}
