#include <gtest/gtest.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "endo/cli.hpp"
#include "endo/service.hpp"

// After Eigen: <resolv.h> defines a _res macro.
#include <httplib.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = endo::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("endo_cli_" + name); }

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = temp_path(name);
    std::ofstream(p) << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(CliFk, ZeroPose) {
    const Result r = run({"fk", "0,0", "0,0", "0,0"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "tip (0.000000, 0.000000, 180.000000)\nquaternion (1.000000, 0.000000, 0.000000, 0.000000)\n");
}

TEST(CliFk, BentPose) {
    const Result r = run({"fk", "0,90", "0,0", "0,0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "tip (157.519470, 0.000000, 37.519470)");
}

TEST(CliFk, PolylineJson) {
    const Result r = run({"fk", "--polyline", "0,0", "0,0", "0,0"});
    ASSERT_EQ(r.code, 0);
    const auto json_start = r.out.find('{');
    ASSERT_NE(json_start, std::string::npos);
    EXPECT_EQ(nlohmann::json::parse(r.out.substr(json_start))["polyline_mm"].size(), 15u);
}

TEST(CliFk, ValidationErrors) {
    const Result over = run({"fk", "0,200", "0,0", "0,0"});
    EXPECT_EQ(over.code, 2);
    EXPECT_NE(over.err.find("theta2 exceeds theta2_max"), std::string::npos);
    EXPECT_EQ(run({"fk", "0;0", "0,0", "0,0"}).code, 2);
    EXPECT_EQ(run({"fk", "0,0,0", "0,0", "0,0"}).code, 2);
    EXPECT_EQ(run({"fk", "0,0", "0,0"}).code, 2);
    EXPECT_EQ(run({"fk", "--bogus", "0,0", "0,0", "0,0"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(CliFk, Deterministic) {
    EXPECT_EQ(run({"fk", "10,20", "30,40", "300,80"}).out, run({"fk", "10,20", "30,40", "300,80"}).out);
}

TEST(CliTendons, SingleSegmentConfig) {
    const fs::path cfg = write_file("one_segment.json", R"({"num_segments": 1})");
    const Result r = run({"--config", cfg.string(), "tendons", "0,90"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("ch0_mm"), std::string::npos);
    EXPECT_NE(r.out.find("9.364335      4.682168      0.000000      4.682168"), std::string::npos) << r.out;
    fs::remove(cfg);
}

TEST(CliMotors, ZeroAndSaturation) {
    const Result zero = run({"motors", "0,0", "0,0", "0,0"});
    ASSERT_EQ(zero.code, 0);
    EXPECT_NE(zero.out.find("pulley radii (mm): 2.980761 5.961521 8.942282"), std::string::npos);
    std::istringstream rows(zero.out);
    for (std::string line; std::getline(rows, line);) {
        if (line.rfind("1 ", 0) == 0 || line.rfind("2 ", 0) == 0 || line.rfind("3 ", 0) == 0) {
            std::istringstream cols(line);
            int seg;
            double v;
            cols >> seg;
            while (cols >> v) EXPECT_EQ(v, 0.0);
        }
    }

    const Result full = run({"motors", "0,90", "0,0", "0,0"});
    ASSERT_EQ(full.code, 0);
    EXPECT_NE(full.out.find("180.000000     90.000000      0.000000     90.000000"), std::string::npos);

    const fs::path cfg = write_file("offsets.json", R"({"actuation": {"zero_offsets_deg": [5,5,5,5,5,5,5,5,5,5,5,5]}})");
    const Result sat = run({"--config", cfg.string(), "motors", "0,90", "0,0", "0,0"});
    EXPECT_EQ(sat.code, 2);
    EXPECT_NE(sat.err.find("RangeExceeded"), std::string::npos);
    fs::remove(cfg);
}

TEST(CliConfig, Errors) {
    EXPECT_EQ(run({"--config", "/nonexistent.json", "fk", "0,0", "0,0", "0,0"}).code, 2);
    const fs::path bad = write_file("bad.json", "{\"num_segments\": ");
    EXPECT_EQ(run({"--config", bad.string(), "fk", "0,0", "0,0", "0,0"}).code, 2);
    const fs::path unknown = write_file("unknown.json", R"({"segments": 3})");
    EXPECT_EQ(run({"--config", unknown.string(), "fk", "0,0", "0,0", "0,0"}).code, 2);
    fs::remove(bad);
    fs::remove(unknown);
}

TEST(CliWorkspace, DefaultSweep) {
    const fs::path out = temp_path("ws.csv");
    const Result r = run({"workspace", "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("1728 samples\n"), std::string::npos);
    EXPECT_NE(r.out.find("max radius (mm): "), std::string::npos);
    const std::string csv = slurp(out);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1729);
    fs::remove(out);
}

TEST(CliWorkspace, GridAndFormats) {
    const fs::path csv = temp_path("ws1.csv");
    const Result one = run({"workspace", "--grid", "1x1", "--out", csv.string()});
    ASSERT_EQ(one.code, 0);
    EXPECT_NE(one.out.find("1 samples\n"), std::string::npos);

    const fs::path ply = temp_path("ws.ply");
    const Result p = run({"workspace", "--format", "ply", "--out", ply.string()});
    ASSERT_EQ(p.code, 0);
    EXPECT_EQ(slurp(ply).rfind("ply\nformat ascii 1.0\n", 0), 0u);

    const Result lists = run({"workspace", "--theta1", "0", "--theta2", "0", "--out", csv.string()});
    ASSERT_EQ(lists.code, 0);
    EXPECT_NE(lists.out.find("z extent (mm): 180.000000 .. 180.000000"), std::string::npos);

    fs::remove(csv);
    fs::remove(ply);
}

TEST(CliWorkspace, Errors) {
    const std::string out = temp_path("err.csv").string();
    EXPECT_EQ(run({"workspace", "--grid", "4y3", "--out", out}).code, 2);
    EXPECT_EQ(run({"workspace", "--grid", "0x3", "--out", out}).code, 2);
    EXPECT_EQ(run({"workspace", "--theta1", "0", "--out", out}).code, 2);
    EXPECT_EQ(run({"workspace", "--format", "pcd", "--out", out}).code, 2);
    EXPECT_EQ(run({"workspace"}).code, 2);
    EXPECT_EQ(run({"workspace", "--out", "/nonexistent-dir/ws.csv"}).code, 3);
}

TEST(CliServe, BusyPort) {
    const endo::TwinService svc{endo::Config{}};
    endo::TeleopServer holder(svc);
    ASSERT_TRUE(holder.bind("0.0.0.0", 0));
    const Result r = run({"serve", "--port", std::to_string(holder.port())});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("port busy"), std::string::npos);
}

TEST(CliServe, ConfigPassThrough) {
    const fs::path cfg = write_file("serve.json", R"({"num_segments": 2, "gap_length_L": 11.0})");
    // Subshell prints its pid, then becomes the server.
    const std::string cmd = "sh -c 'echo $$; exec \"" ENDO_CLI_PATH "\" serve --host 127.0.0.1 --port 0 --config " +
                            cfg.string() + "'";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    char line[256];
    ASSERT_NE(fgets(line, sizeof line, pipe), nullptr);
    const pid_t pid = static_cast<pid_t>(std::stol(line));
    ASSERT_NE(fgets(line, sizeof line, pipe), nullptr);
    const std::string listening(line);
    ASSERT_EQ(listening.rfind("listening on :", 0), 0u) << listening;
    const int port = std::stoi(listening.substr(14));

    httplib::Client client("127.0.0.1", port);
    const auto res = client.Get("/api/params");
    ASSERT_TRUE(res);
    const auto body = nlohmann::json::parse(res->body);
    EXPECT_EQ(body["num_segments"], 2);
    EXPECT_EQ(body["gap_length_L"], 11.0);

    kill(pid, SIGINT);
    EXPECT_EQ(pclose(pipe), 0);
    fs::remove(cfg);
}
