// Copyright 2026 The gateverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() /
                   ("gateverify_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CliRun run_cli(const std::string &args, const std::string &env = "") {
    fs::path dir = work_dir();
    const std::string cmd = env + " '" GATEVERIFY_CLI "' " + args + " >'" + (dir / "stdout").string() + "' 2>'" +
                            (dir / "stderr").string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(dir / "stdout"), slurp(dir / "stderr")};
}

std::string config(const char *name) {
    return std::string("--config '") + GATEVERIFY_CONFIGS + "/" + name + "'";
}

Json parse_ok(const CliRun &r) {
    EXPECT_EQ(r.exit_code, 0) << r.err;
    return Json::parse(r.out);
}

}  // namespace

TEST(Cli, AnalyzeCz) {
    Json doc = parse_ok(run_cli("analyze " + config("cz.json")));
    EXPECT_EQ(doc["schema"], "gateverify.report/1");
    EXPECT_NEAR(doc["gaps"]["nu_p"].get<double>(), 0.5, 1e-12);
    EXPECT_NEAR(doc["gaps"]["nu_m"].get<double>(), 0.5, 1e-12);
    EXPECT_EQ(doc["num_tests"]["bound"]["n"].get<long long>(),
              static_cast<long long>(std::ceil(400 * std::log(100.0))));
    EXPECT_LE(doc["num_tests"]["exact"]["n"].get<long long>(), doc["num_tests"]["bound"]["n"].get<long long>());
}

TEST(Cli, AnalyzeSwapTwoDesign) {
    Json doc = parse_ok(run_cli("analyze " + config("swap.json")));
    EXPECT_NEAR(doc["gaps"]["nu"].get<double>(), 2.0 / 3, 1e-9);
    EXPECT_EQ(doc["num_tests"]["bound"]["n"].get<long long>(),
              static_cast<long long>(std::ceil(1.5 * 100 * std::log(100.0))));
}

TEST(Cli, AnalyzeCswapReportsDeviation) {
    Json doc = parse_ok(run_cli("analyze " + config("cswap.json")));
    EXPECT_NEAR(doc["gaps"]["nu_p"].get<double>(), 2.0 / 3, 1e-9);
    EXPECT_NEAR(doc["gaps"]["nu_m"].get<double>(), 4.0 / 7, 1e-9);
    ASSERT_FALSE(doc["notes"].empty());
    EXPECT_NE(doc["notes"][0].get<std::string>().find("4/7"), std::string::npos);
}

TEST(Cli, FlagsOverrideConfig) {
    Json doc = parse_ok(run_cli("analyze " + config("cz.json") + " --epsilon 0.02 --delta 0.05 --fidelity average"));
    EXPECT_EQ(doc["epsilon"].get<double>(), 0.02);
    EXPECT_EQ(doc["delta"].get<double>(), 0.05);
    EXPECT_EQ(doc["fidelity_kind"], "average");
    EXPECT_NEAR(doc["epsilon_entanglement"].get<double>(), 5 * 0.02 / 4, 1e-15);
}

TEST(Cli, AnalyzeText) {
    CliRun r = run_cli("analyze " + config("qutrit_clifford.json") + " --format text");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("nu_P            0.75"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("average"), std::string::npos);
}

TEST(Cli, OutWritesFile) {
    fs::path out = fs::temp_directory_path() / "gateverify_cli_out.json";
    fs::remove(out);
    CliRun r = run_cli("export-protocol " + config("cz.json") + " --out '" + out.string() + "'");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    Json doc = Json::parse(slurp(out));
    EXPECT_EQ(doc["schema"], "gateverify.protocol/1");
}

TEST(Cli, TableRows) {
    Json doc = parse_ok(run_cli("table --max-n 3 --max-n-qutrit 2 --format json"));
    const Json &rows = doc["rows"];
    ASSERT_GE(rows.size(), 10u);
    EXPECT_EQ(rows[0]["note"], "out of scope (external adaptive protocol)");
    for (const auto &row : rows) {
        if (row.contains("passed")) {
            EXPECT_TRUE(row["passed"].get<bool>()) << row.dump();
        }
    }
    CliRun csv = run_cli("table --max-n 2 --max-n-qutrit 2 --format csv");
    ASSERT_EQ(csv.exit_code, 0);
    EXPECT_EQ(csv.out.rfind("unitary,d1,n,", 0), 0u);
}

TEST(Cli, PcurveOptimalStrategy) {
    // A single-qubit gate with the six stabilizer states: Θ = (2Φ + 1)/3.
    CliRun r = run_cli("pcurve " + config("hadamard.json") + " --grid 0.1,0.2");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    EXPECT_EQ(header, "epsilon,epsilon_e,p_bound,p_sdp,upper_certificate,converged");
    int rows = 0;
    while (std::getline(lines, row)) {
        double eps, eps_e, bound, sdp;
        ASSERT_EQ(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf", &eps, &eps_e, &bound, &sdp), 4) << row;
        EXPECT_NEAR(bound, 1 - 2.0 / 3 * eps, 1e-12);
        EXPECT_NEAR(sdp, 1 - 2.0 / 3 * eps, 1e-6);
        rows++;
    }
    EXPECT_EQ(rows, 2);
}

TEST(Cli, PcurveRangeGrid) {
    CliRun r = run_cli("pcurve " + config("cz.json") + " --grid 0:0.1:0.05");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, SimulateNoiselessAcceptsEverything) {
    Json doc = parse_ok(run_cli("simulate " + config("cz.json") + " --trials 500 --repetitions 3 --seed 5"));
    EXPECT_EQ(doc["results"]["passed"].get<long long>(), 1500);
    EXPECT_EQ(doc["results"]["acceptance_frequency"].get<double>(), 1.0);
}

TEST(Cli, SimulateIsReproducible) {
    CliRun a = run_cli("simulate " + config("cnot_depolarizing.json"));
    CliRun b = run_cli("simulate " + config("cnot_depolarizing.json"));
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    Json doc = Json::parse(a.out);
    EXPECT_FALSE(doc["results"]["flagged"].get<bool>());
}

TEST(Cli, SimulateTrialsCsv) {
    fs::path csv = fs::temp_directory_path() / "gateverify_cli_trials.csv";
    fs::remove(csv);
    CliRun r = run_cli("simulate " + config("cnot_depolarizing.json") + " --trials 10 --repetitions 1 --format text " +
                    "--trials-csv '" + csv.string() + "'");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("pass rate"), std::string::npos);
    std::istringstream lines(slurp(csv));
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "trial,j,l,outcome,pass");
    int n = 0;
    for (std::string l; std::getline(lines, l);) {
        n++;
    }
    EXPECT_EQ(n, 10);
}

TEST(Cli, ExportCzProtocol) {
    Json doc = parse_ok(run_cli("export-protocol " + config("cz.json")));
    ASSERT_EQ(doc["states"].size(), 8u);
    for (const auto &st : doc["states"]) {
        for (const auto &t : st["tests"]) {
            ASSERT_TRUE(t.contains("settings"));
            for (const auto &s : t["settings"]) {
                EXPECT_TRUE(s == "X" || s == "Z") << s;
            }
            EXPECT_FALSE(t["accept"].empty());
        }
    }
}

TEST(Cli, SchemaViolationFails) {
    CliRun r = run_cli("analyze " + config("bad_schema.json"));
    EXPECT_NE(r.exit_code, 0);
    EXPECT_NE(r.err.find("unexpected"), std::string::npos) << r.err;
}

TEST(Cli, UnsupportedPolicyFails) {
    CliRun r = run_cli("analyze " + config("bad_policy.json"));
    EXPECT_NE(r.exit_code, 0);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, MissingConfigFails) {
    CliRun r = run_cli("analyze --config /nonexistent/config.json");
    EXPECT_NE(r.exit_code, 0);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, MaxDimEnvironment) {
    CliRun small = run_cli("analyze " + config("cswap.json"), "GATEVERIFY_MAX_DIM=4");
    EXPECT_NE(small.exit_code, 0);
    EXPECT_NE(small.err.find("dimension"), std::string::npos) << small.err;
    CliRun ok = run_cli("analyze " + config("cswap.json"), "GATEVERIFY_MAX_DIM=8");
    EXPECT_EQ(ok.exit_code, 0) << ok.err;
}
