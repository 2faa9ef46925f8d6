#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "config.hpp"
#include "runner.hpp"
#include "tomolyap/errors.hpp"

using namespace tomolyap;
using namespace tomolyap::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("tomolyap_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig config_for(ExperimentKind kind, const fs::path& out, Settings extra = {}) {
    extra["out"] = {out.string(), "test"};
    return build_config(kind, extra);
}

}  // namespace

TEST(Config, ParsesKeyValueText) {
    const Settings s = parse_config_text("# comment\n gamma = 0.5  # trailing\n\nformat=csv\n", "cfg");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.at("gamma").value, "0.5");
    EXPECT_EQ(s.at("gamma").origin, "cfg:2");
    const ExperimentConfig c = build_config(ExperimentKind::StandardMap, s);
    EXPECT_EQ(c.gamma, 0.5);
    EXPECT_EQ(c.format, OutputFormat::Csv);
}

TEST(Config, ErrorsNameTheLine) {
    auto message = [](const std::string& text) {
        try {
            build_config(ExperimentKind::Harmonic, parse_config_text(text, "cfg.txt"));
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message("n = 100\ngama = 1\n").find("cfg.txt:2"), std::string::npos);
    EXPECT_NE(message("tau = -1\n").find("cfg.txt:1"), std::string::npos);
    EXPECT_NE(message("\n\nn = ten\n").find("cfg.txt:3"), std::string::npos);
    EXPECT_NE(message("z 5\n").find("cfg.txt:1"), std::string::npos);
    EXPECT_NE(message("z = 1\nz = 2\n").find("cfg.txt:2"), std::string::npos);
    EXPECT_NE(message("n = 5\n").find("n = 5"), std::string::npos);
    EXPECT_NE(message("variant = H7\n").find("cfg.txt:1"), std::string::npos);
    EXPECT_THROW(read_config_file("/nonexistent/tomolyap.cfg"), ConfigError);
}

TEST(Config, KindDefaultsAndValidation) {
    EXPECT_EQ(build_config(ExperimentKind::Tomography, {}).hbar, 1.0);
    EXPECT_EQ(build_config(ExperimentKind::StandardMap, {}).hbar, 0.0);
    EXPECT_EQ(effective_steps(build_config(ExperimentKind::Oracle, {})), 10000);
    EXPECT_EQ(parse_kind("standard_map"), ExperimentKind::StandardMap);
    EXPECT_THROW(parse_kind("lorenz"), ConfigError);
    Settings s;
    s["hbar"] = {"0", "--hbar"};
    EXPECT_THROW(build_config(ExperimentKind::Compare, s), ConfigError);
    s["state"] = {"coherent", "--state"};
    EXPECT_THROW(build_config(ExperimentKind::Tomography, s), ConfigError);
}

TEST(Config, JsonRoundTrip) {
    Settings s;
    s["gamma"] = {"-0.7", "t"};
    s["q0"] = {"3.141592653589793", "t"};
    s["variant"] = {"H2", "t"};
    s["format"] = {"csv", "t"};
    s["n"] = {"120", "t"};
    s["map"] = {"cat", "t"};
    const ExperimentConfig c = build_config(ExperimentKind::Oracle, s);
    const ExperimentConfig back = config_from_json(Json::parse(config_to_json(c).dump()));
    EXPECT_EQ(back, c);
    EXPECT_THROW(config_from_json(Json::parse("[1]")), ConfigError);
    EXPECT_THROW(config_from_json(Json::parse(R"({"gamma": 1})")), ConfigError);
}

TEST(Runner, EmitReport) {
    const fs::path dir = scratch("report");
    EXPECT_THROW(emit_report({}, dir, OutputFormat::Csv), ValidationError);
    const std::vector<ReportRow> rows{{"a", 1.0, std::nullopt, 0.5, std::nullopt}};
    const auto files = emit_report(rows, dir, OutputFormat::Csv);
    EXPECT_EQ(slurp(files.at(0)), "system,classical,quantum,oracle,closed_form\na,1,,0.5,\n");
    const auto json = emit_report(rows, dir, OutputFormat::Json);
    const Json j = Json::parse(slurp(json.at(0)));
    EXPECT_TRUE(j["rows"][0]["quantum"].is_null());
}

TEST(Runner, RecordsAreReproducible) {
    for (auto kind : {ExperimentKind::Harmonic, ExperimentKind::Cat, ExperimentKind::StandardMap,
                      ExperimentKind::Oracle, ExperimentKind::Tomography}) {
        const fs::path a = scratch("repro_a"), b = scratch("repro_b");
        const RunOutcome ra = run_experiment(config_for(kind, a));
        const RunOutcome rb = run_experiment(config_for(kind, b));
        ASSERT_EQ(ra.files.size(), rb.files.size());
        for (std::size_t i = 0; i < ra.files.size(); ++i) {
            std::string ta = slurp(ra.files[i]), tb = slurp(rb.files[i]);
            if (ra.files[i].filename() == "record.json") {
                Json ja = Json::parse(ta), jb = Json::parse(tb);
                ja["config"].erase("out");
                jb["config"].erase("out");
                ta = ja.dump();
                tb = jb.dump();
            }
            EXPECT_EQ(ta, tb) << to_string(kind) << " " << ra.files[i];
        }
    }
}

TEST(Runner, RecordEchoesConfig) {
    const fs::path dir = scratch("echo");
    Settings s;
    s["z"] = {"2", "t"};
    const ExperimentConfig c = config_for(ExperimentKind::Harmonic, dir, s);
    const RunOutcome r = run_experiment(c);
    const Json record = Json::parse(slurp(dir / "record.json"));
    EXPECT_EQ(record["tool"], "tomolyap");
    EXPECT_EQ(record["experiment"], "harmonic");
    EXPECT_EQ(config_from_json(record["config"]), c);
    EXPECT_EQ(record["results"]["estimate"]["classification"], "zero");
    EXPECT_EQ(record["results"]["running"]["lambda"], 0.0);
}

TEST(Runner, CompareTableAgrees) {
    const fs::path dir = scratch("compare");
    run_experiment(config_for(ExperimentKind::Compare, dir));
    const Json j = Json::parse(slurp(dir / "report.json"));
    ASSERT_EQ(j["rows"].size(), 3u);
    const double first = j["rows"][0]["classical"].get<double>();
    for (const auto& row : j["rows"]) {
        EXPECT_NEAR(row["classical"].get<double>(), first, 1e-6);
        EXPECT_NEAR(row["oracle"].get<double>(), first, 1e-6);
    }
}

TEST(Runner, CsvArtifacts) {
    const fs::path dir = scratch("csv");
    Settings s;
    s["format"] = {"csv", "t"};
    run_experiment(config_for(ExperimentKind::StandardMap, dir, s));
    EXPECT_TRUE(fs::exists(dir / "series.csv"));
    EXPECT_TRUE(fs::exists(dir / "running.csv"));
    EXPECT_TRUE(fs::exists(dir / "report.csv"));
    EXPECT_TRUE(fs::exists(dir / "record.json"));
}

TEST(Runner, GuardedExitCodes) {
    std::ostringstream out, err;
    EXPECT_EQ(run_guarded(config_for(ExperimentKind::Cat, scratch("guard_ok")), out, err), 0);

    ExperimentConfig bad = config_for(ExperimentKind::Harmonic, scratch("guard_bad"));
    bad.n = 3;
    err.str("");
    EXPECT_EQ(run_guarded(bad, out, err), 2);
    const Json e = Json::parse(err.str());
    EXPECT_EQ(e["error"]["kind"], "config");

    const fs::path blocker = scratch("guard_file");
    std::ofstream(blocker) << "x";
    ExperimentConfig io = config_for(ExperimentKind::Cat, blocker / "sub");
    err.str("");
    EXPECT_EQ(run_guarded(io, out, err), 3);
    EXPECT_EQ(Json::parse(err.str())["error"]["kind"], "io");

    Settings tiny;
    tiny["n"] = {"1000", "t"};
    ExperimentConfig big = config_for(ExperimentKind::StandardMap, scratch("guard_big"), tiny);
    err.str("");
    EXPECT_EQ(run_guarded(big, out, err), 3);
    EXPECT_EQ(Json::parse(err.str())["error"]["kind"], "resource");
}

TEST(Runner, ResonanceWarning) {
    const fs::path dir = scratch("resonant");
    Settings s;
    s["hbar"] = {"6.283185307179586", "t"};
    s["n"] = {"20", "t"};
    const RunOutcome r = run_experiment(config_for(ExperimentKind::StandardMap, dir, s));
    EXPECT_EQ(r.record["warnings"].size(), 1u);
}
