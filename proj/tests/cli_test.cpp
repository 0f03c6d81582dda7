// Copyright 2026 The unital Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(UNITAL_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("unital_cli_" + std::to_string(::getpid()) + "_" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(Cli, FieldInfo) {
    const auto r = run("field-info --q 4");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["size"], 16);
    EXPECT_EQ(j["modulus"], (std::vector<int>{1, 0, 0, 1, 1}));
    EXPECT_EQ(run("field-info --p 3 --t 1").code, 0);
}

TEST_F(Cli, BadFlags) {
    EXPECT_EQ(run("field-info --q 6").code, 2);
    EXPECT_EQ(run("field-info --q 9 --p 2").code, 2);
    EXPECT_EQ(run("field-info --p 4").code, 2);
    EXPECT_EQ(run("census --kind nope --q 3").code, 2);
    EXPECT_EQ(run("census --q 3").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("enum points --q 3 --format xml").code, 2);
}

TEST_F(Cli, Enumerations) {
    auto r = run("enum points --q 2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["count"], 21);
    r = run("enum lines --q 3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["count"], 91);
    r = run("enum monomials --q 2 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 22);
}

TEST_F(Cli, MakeAndVerifyUnital) {
    const auto u = path("u.json");
    ASSERT_EQ(run("make-unital --kind hermitian --q 3 --out " + u).code, 0);
    EXPECT_EQ(run("verify-unital --in " + u).code, 0);
    ASSERT_EQ(run("make-unital --kind hermitian --q 4 --random --seed 5 --out " + u).code, 0);
    const auto r = run("verify-unital --in " + u);
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["is_unital"].get<bool>());
    EXPECT_EQ(j["design"]["v"], 65);
    EXPECT_EQ(j["design"]["k"], 5);
    EXPECT_TRUE(j["hermitian_form_found"].get<bool>());

    auto pts = nlohmann::json::parse(slurp(u));
    pts["points"] = std::vector<int>{0, 1, 2};
    std::ofstream(path("bad.json")) << pts.dump();
    EXPECT_EQ(run("verify-unital --in " + path("bad.json")).code, 1);
    EXPECT_EQ(run("verify-unital --in " + path("missing.json")).code, 2);
}

TEST_F(Cli, InvalidBMParameters) {
    // a = 0 with b in GF(q) is never valid.
    EXPECT_EQ(run("make-unital --kind bm --q 3 --a 0 --b 1").code, 2);
    EXPECT_EQ(run("make-unital --kind bm --q 3 --a 100 --b 1").code, 2);
    EXPECT_EQ(run("make-unital --kind bm --q 2 --a 1 --b 2").code, 2);
    EXPECT_EQ(run("make-unital --kind bm --q 3 --a 1").code, 2);
}

TEST_F(Cli, InvariantsWithOracle) {
    const auto r = run("invariants --p 2 --t 1 --n 2 --r 2 --verify-snf");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["row_count"], 21);
    EXPECT_TRUE(j["snf_match"].get<bool>());
    EXPECT_EQ(j["predicted_multiset"], j["snf_multiset"]);
}

TEST_F(Cli, CensusBMVersusHermitian) {
    const auto r = run("census --kind bm-vs-hermitian --q 3");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["summary"]["passed"].get<bool>());
    EXPECT_EQ(j["config"]["run"]["subcommand"], "census");
    for (const auto& rec : j["records"]) EXPECT_EQ(rec["size"].get<int>() % 3, 1);
}

TEST_F(Cli, ReportsAreByteIdentical) {
    const auto a = path("a.json"), b = path("b.json"), c = path("c.csv"), d = path("d.csv");
    ASSERT_EQ(run("census --kind kestenband --q 3 --samples 50 --out " + a).code, 0);
    ASSERT_EQ(run("census --kind kestenband --q 3 --samples 50 --threads 3 --out " + b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    ASSERT_EQ(run("census --kind nonhermitian-scan --q 3 --samples 40 --format csv --out " + c).code, 0);
    ASSERT_EQ(run("census --kind nonhermitian-scan --q 3 --samples 40 --format csv --out " + d).code, 0);
    EXPECT_EQ(slurp(c), slurp(d));
    EXPECT_FALSE(slurp(c).empty());
}

TEST_F(Cli, CensusGeneralWithFiles) {
    const auto u = path("u.json"), bad = path("bad.json");
    ASSERT_EQ(run("make-unital --kind hermitian --q 3 --random --seed 9 --out " + u).code, 0);
    EXPECT_EQ(run("census --kind general --q 3 --hermitian-samples 3 --unital " + u).code, 0);
    auto pts = nlohmann::json::parse(slurp(u));
    pts["points"] = std::vector<int>{0, 1, 2};
    std::ofstream(bad) << pts.dump();
    EXPECT_EQ(run("census --kind general --q 3 --unital " + u + " --unital " + bad).code, 1);
}

TEST_F(Cli, HermitianPairsExitCode) {
    const auto r = run("census --kind hermitian-pairs --q 2 --samples 30");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NE(j["summary"]["reading_supported"].get<std::string>().find("direct reading fails"), std::string::npos);
}

TEST_F(Cli, CharacteristicFunctionCheck) {
    auto r = run("charfn-check --q 2");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["mismatches"], 0);
    EXPECT_EQ(j["on_hermitian"], 9);
    EXPECT_EQ(run("charfn-check --q 3").code, 0);
    EXPECT_EQ(run("charfn-check --q 2 --k 1").code, 2);
}

}  // namespace
