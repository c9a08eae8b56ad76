// Copyright 2026 The qpair Authors
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

#include "qpair/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "gtest/gtest.h"

using namespace qpair;
using namespace qpair::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = main_with_args(args, out, err);
    return {code, out.str(), err.str()};
}

class TempFile {
   public:
    explicit TempFile(const std::string &contents) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("qpair_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::ofstream(path_) << contents;
    }
    ~TempFile() {
        std::filesystem::remove(path_);
    }
    std::string path() const {
        return path_.string();
    }

   private:
    std::filesystem::path path_;
};

Json strip_volatile(Json j) {
    j.erase("timestamp");
    return j;
}

const char *kGoodTable =
    "000 0 0\n001 0 1\n010 0 1\n011 0 0\n"
    "100 1 0\n101 1 1\n110 1 1\n111 1 0\n";

}  // namespace

TEST(parse_request, run_grammar) {
    auto req = parse_request({"run", "--algorithm", "entangled", "--f", "B1", "--g", "B2", "--shots", "exact"});
    ASSERT_TRUE(req.has_value());
    EXPECT_EQ(req->command, Command::kRun);
    EXPECT_EQ(req->algorithm, Algorithm::kEntangledPair);
    EXPECT_EQ(req->f, named::B1);
    EXPECT_EQ(req->g, named::B2);
    EXPECT_FALSE(req->shots.has_value());
}

TEST(parse_request, truth_table_resolves_to_named) {
    auto req = parse_request({"run", "--f", "0:0,1:1", "--g", "B1"});
    ASSERT_TRUE(req.has_value());
    EXPECT_EQ(req->f, named::B1);
}

TEST(parse_request, rejections) {
    EXPECT_THROW(parse_request({"run", "--f", "B1", "--g", "C1"}), UsageError);
    EXPECT_THROW(parse_request({"run", "--f", "0:2,1:0"}), UsageError);
    EXPECT_THROW(parse_request({"run", "--bogus"}), UsageError);
    EXPECT_THROW(parse_request({"run", "--shots", "0"}), UsageError);
    EXPECT_THROW(parse_request({"run", "--shots", "many"}), UsageError);
    EXPECT_THROW(parse_request({"verify", "--output", "csv"}), UsageError);
    EXPECT_THROW(parse_request({}), UsageError);
}

TEST(parse_request, shots_and_seed) {
    auto req = parse_request({"run", "--shots", "8192", "--seed", "17"});
    ASSERT_TRUE(req.has_value());
    EXPECT_EQ(req->shots, 8192);
    EXPECT_EQ(req->seed, 17u);
}

TEST(cli, run_exact_probabilities) {
    auto r = run_cli({"run", "--algorithm", "entangled", "--f", "B1", "--g", "B1", "--shots", "exact"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["probabilities"].size(), 2u);
    EXPECT_NEAR(j["probabilities"]["100"].get<double>(), 0.5, 1e-10);
    EXPECT_NEAR(j["probabilities"]["111"].get<double>(), 0.5, 1e-10);
    EXPECT_EQ(j["queries"]["f"], 1);
    EXPECT_EQ(j["queries"]["g"], 1);
    EXPECT_EQ(j["decoded"]["balanced"], 1);
    EXPECT_EQ(j["decoded"]["different"], 0);
    EXPECT_FALSE(j.contains("fidelity"));
    EXPECT_EQ(j["tool_version"], kToolVersion);
}

TEST(cli, json_key_order) {
    auto j = Json::parse(run_cli({"run", "--shots", "100"}).out);
    std::vector<std::string> keys;
    for (const auto &item : j.items()) {
        keys.push_back(item.key());
    }
    const std::vector<std::string> expected = {
        "request", "queries", "probabilities", "counts", "decoded", "separability", "fidelity", "gate_count",
        "tool_version", "timestamp"};
    EXPECT_EQ(keys, expected);
}

TEST(cli, json_round_trip) {
    auto req = parse_request({"run", "--algorithm", "product", "--f", "C1", "--g", "C2", "--shots", "500"});
    auto envelope = execute(*req);
    auto parsed = Json::parse(emit(envelope, OutputFormat::kJson));
    EXPECT_EQ(parsed, envelope.to_json());
    parsed.erase("timestamp");
    parsed.erase("tool_version");
    EXPECT_EQ(parsed, envelope.payload);
}

TEST(cli, deterministic_payload) {
    const std::vector<std::string> args = {"run", "--noise", "table2", "--shots", "4096", "--seed", "99"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(strip_volatile(Json::parse(a.out)).dump(), strip_volatile(Json::parse(b.out)).dump());
    auto c = run_cli({"run", "--noise", "table2", "--shots", "4096", "--seed", "100"});
    EXPECT_NE(strip_volatile(Json::parse(a.out))["counts"], strip_volatile(Json::parse(c.out))["counts"]);
}

TEST(cli, seed_from_environment) {
    ::setenv(kSeedEnvVar, "1234", 1);
    auto req = parse_request({"run"});
    ::unsetenv(kSeedEnvVar);
    EXPECT_EQ(req->seed, 1234u);
    ::setenv(kSeedEnvVar, "abc", 1);
    EXPECT_THROW(parse_request({"run"}), UsageError);
    ::unsetenv(kSeedEnvVar);
}

TEST(cli, usage_errors_have_prefix_and_exit_2) {
    for (const auto &args : std::vector<std::vector<std::string>>{
             {"run", "--f", "B1", "--g", "C1"},
             {"run", "--f", "0:2,1:0"},
             {"run", "--nope"},
             {"fidelity", "--counts", "/nonexistent/counts.json", "--theory", "entangled:B1,B1"},
             {"run", "--noise", "/nonexistent/noise.cfg"},
         }) {
        auto r = run_cli(args);
        EXPECT_EQ(r.code, kExitUsage) << args[1];
        EXPECT_EQ(r.err.rfind(kErrorPrefix, 0), 0u) << r.err;
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
        EXPECT_TRUE(r.out.empty());
    }
}

TEST(cli, malformed_truth_table_names_token) {
    auto r = run_cli({"run", "--f", "0:2,1:0"});
    EXPECT_NE(r.err.find("0:2"), std::string::npos) << r.err;
}

TEST(cli, csv_output) {
    auto r = run_cli({"run", "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header, row1, row2, extra;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    EXPECT_EQ(header, "bitstring,probability,count");
    EXPECT_FALSE(std::getline(in, extra) && !extra.empty());
    EXPECT_EQ(row1.substr(0, 4), "100,");
    EXPECT_EQ(row2.substr(0, 4), "111,");
    const auto prob = row1.substr(4, row1.rfind(',') - 4);
    int digits = 0;
    for (char c : prob) {
        digits += std::isdigit(static_cast<unsigned char>(c)) != 0;
    }
    EXPECT_GE(digits, 12) << prob;
    EXPECT_NEAR(std::stod(prob), 0.5, 1e-10);
}

TEST(cli, verify_passes) {
    auto r = run_cli({"verify"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["summary"]["entangled_pair"], "8/8");
    EXPECT_EQ(j["summary"]["product_pair"], "8/8");
    EXPECT_EQ(j["summary"]["deutsch"], "4/4");
    EXPECT_EQ(j["passed"], true);
}

TEST(cli, verify_with_correct_table_passes) {
    TempFile table(kGoodTable);
    EXPECT_EQ(run_cli({"verify", "--decode-table", table.path()}).code, kExitOk);
}

TEST(cli, verify_with_broken_table_fails) {
    std::string broken = kGoodTable;
    broken.replace(broken.find("100 1 0"), 7, "100 0 0");
    TempFile table(broken);
    auto r = run_cli({"verify", "--decode-table", table.path()});
    EXPECT_EQ(r.code, kExitCheckFailed);
    EXPECT_EQ(Json::parse(r.out)["passed"], false);
}

TEST(cli, verify_with_incomplete_table_is_usage_error) {
    TempFile table("100 1 0\n");
    EXPECT_EQ(run_cli({"verify", "--decode-table", table.path()}).code, kExitUsage);
}

TEST(cli, fidelity_from_counts_file) {
    TempFile counts(R"({"100": 50, "111": 50})");
    auto r = run_cli({"fidelity", "--counts", counts.path(), "--theory", "entangled:B1,B1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_NEAR(j["fidelity"]["value"].get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(j["fidelity"].contains("stderr"));
    EXPECT_EQ(j["shots"], 100);
}

TEST(cli, fidelity_from_csv_counts) {
    TempFile counts("bitstring,count\n000,50\n111,50\n");
    auto r = run_cli({"fidelity", "--counts", counts.path(), "--theory", "entangled:C1,C1"});
    ASSERT_EQ(r.code, 0) << r.err;
    // C1,C1 theory is {000: .5, 011: .5}.
    EXPECT_NEAR(Json::parse(r.out)["fidelity"]["value"].get<double>(), 0.5, 1e-12);
}

TEST(parse_counts, formats_and_errors) {
    auto a = parse_counts(R"({"100": 3, "111": 5})");
    EXPECT_EQ(a.shots, 8);
    auto b = parse_counts("100,3\n111,5\n");
    EXPECT_EQ(a, b);
    EXPECT_THROW(parse_counts(R"({"100": 3, "11": 5})"), UsageError);
    EXPECT_THROW(parse_counts("100,-1\n"), UsageError);
}

TEST(cli, noise_config_file) {
    TempFile cfg(to_config(NoiseModel::table2()));
    auto from_file = run_cli({"run", "--noise", cfg.path()});
    auto builtin = run_cli({"run", "--noise", "table2"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_EQ(Json::parse(from_file.out)["probabilities"], Json::parse(builtin.out)["probabilities"]);
}

TEST(cli, audit_theorem) {
    auto r = run_cli({"audit-theorem", "--samples", "200", "--grid", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["families"].size(), 4u);
}

TEST(cli, sweep_noise) {
    auto r = run_cli({"sweep-noise", "--algorithm", "entangled", "--f", "B1", "--g", "B1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    ASSERT_EQ(j["sweep"].size(), 1u);
    EXPECT_EQ(j["sweep"][0]["points"].size(), 4u);
    EXPECT_EQ(j["sweep"][0]["monotone"], true);
}

TEST(cli, help_exits_zero) {
    auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verify"), std::string::npos);
}
