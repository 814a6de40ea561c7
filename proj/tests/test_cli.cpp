// Copyright 2026 The lcuresp Authors
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
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string kHam = std::string(LCURESP_DATA_DIR) + "/synth-A.ham";

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("lcuresp_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir.parent_path());
    return dir;
}

int run(const std::string &args) {
    const std::string cmd = std::string(LCURESP_CLI) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Every file in `a` exists in `b` with identical bytes.
void expect_same_tree(const fs::path &a, const fs::path &b) {
    int files = 0;
    for (const auto &e : fs::directory_iterator(a)) {
        ++files;
        EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
    }
    EXPECT_GT(files, 0);
}

void expect_units_headers(const fs::path &dir) {
    for (const auto &e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".csv") continue;
        EXPECT_EQ(slurp(e.path()).rfind("# units:", 0), 0U) << e.path().filename();
    }
}

}  // namespace

TEST(Cli, SpectralRerunIsByteIdentical) {
    const auto a = scratch("spec_a"), b = scratch("spec_b");
    const std::string common = "spectral --hamiltonian " + kHam + " --noise paper --shots 300 --seed 7 --output ";
    ASSERT_EQ(run(common + a.string()), 0);
    ASSERT_EQ(run(common + b.string()), 0);
    expect_same_tree(a, b);
    expect_units_headers(a);
    EXPECT_TRUE(fs::exists(a / "amplitudes.csv"));
}

TEST(Cli, ResponseRerunIsByteIdentical) {
    const auto a = scratch("resp_a"), b = scratch("resp_b");
    const std::string common = "response --hamiltonian " + kHam + " --noise paper --shots 200 --rc --n-rand 3 --seed 9 --output ";
    ASSERT_EQ(run(common + a.string()), 0);
    ASSERT_EQ(run(common + b.string()), 0);
    expect_same_tree(a, b);
    expect_units_headers(a);
    for (const char *f : {"chi_00.csv", "chi_01.csv", "chi_11.csv", "fidelity_matrix.csv", "census.csv"}) EXPECT_TRUE(fs::exists(a / f)) << f;
}

nlohmann::json exact_summary() {
    static const nlohmann::json j = [] {
        const auto out = scratch("summary");
        if (run("response --exact --hamiltonian " + kHam + " --output " + out.string()) != 0) return nlohmann::json{};
        return nlohmann::json::parse(slurp(out / "summary.json"));
    }();
    return j;
}

TEST(Cli, ResponseSummaryCarriesCensus) {
    const auto j = exact_summary();
    ASSERT_FALSE(j.is_null());
    int pairs = 0;
    double worst = 0.0;
    for (const auto &[label, c] : j["circuits"].items()) {
        if (!c.contains("itoffoli")) continue;
        ++pairs;
        EXPECT_EQ(c["itoffoli"]["census"]["n_itoffoli"].get<int>(), 2) << label;
        EXPECT_EQ(c["cz"]["census"]["n_itoffoli"].get<int>(), 0) << label;
        const double ratio = c["itoffoli"]["census"]["depth"].get<double>() / c["cz"]["census"]["depth"].get<double>();
        EXPECT_DOUBLE_EQ(j["depth_ratio_itoffoli_over_cz"][label].get<double>(), ratio) << label;
        worst = std::max(worst, ratio);
    }
    EXPECT_DOUBLE_EQ(j["max_depth_ratio"].get<double>(), worst);
    EXPECT_EQ(pairs, 12);
    for (const auto &[key, r] : j["rms_imag_chi_vs_exact"].items()) {
        EXPECT_LT(r["itoffoli"].get<double>(), 1e-9) << key;
        EXPECT_LT(r["cz"].get<double>(), 1e-9) << key;
    }
}

TEST(Cli, ResponseDepthRatioWithinBudget) {
    const auto j = exact_summary();
    ASSERT_FALSE(j.is_null());
    EXPECT_LE(j["max_depth_ratio"].get<double>(), 0.6);
}

TEST(Cli, TwirlAuditAndFidelityTrace) {
    const auto out = scratch("audit");
    ASSERT_EQ(run("twirl-audit --output " + out.string()), 0);
    const std::string audit = slurp(out / "twirl_audit.csv");
    EXPECT_NE(audit.find("\nCZ,16,16,"), std::string::npos);
    EXPECT_NE(audit.find("\nCS,4,16,"), std::string::npos);
    EXPECT_NE(audit.find("\nCSdg,4,16,"), std::string::npos);
    EXPECT_NE(audit.find("\niToffoli,8,64,"), std::string::npos);
    ASSERT_EQ(run("fidelity-trace --noise paper --hamiltonian " + kHam + " --output " + out.string()), 0);
    EXPECT_EQ(slurp(out / "fidelity_trace.csv").rfind("# units:", 0), 0U);
}

TEST(Cli, ConfigErrorsExitTwo) {
    const auto out = scratch("errors");
    EXPECT_EQ(run("spectral --exact --shots 10 --hamiltonian " + kHam + " --output " + out.string()), 2);
    EXPECT_EQ(run("spectral --hamiltonian /no/such/file.ham --output " + out.string()), 2);
    EXPECT_EQ(run("spectral --branch toffoli --hamiltonian " + kHam + " --output " + out.string()), 2);
    EXPECT_EQ(run("spectral --unknown-flag"), 2);
    EXPECT_EQ(run("response --rc --n-rand 0 --hamiltonian " + kHam + " --output " + out.string()), 2);
    EXPECT_EQ(run("spectral --noise /no/such/noise.txt --hamiltonian " + kHam + " --output " + out.string()), 2);
    fs::create_directories(out);
    std::ofstream(out / "bad.noise") << "cz.depolarizing = 2\n";
    EXPECT_EQ(run("spectral --noise " + (out / "bad.noise").string() + " --hamiltonian " + kHam + " --output " + out.string()), 2);
    EXPECT_FALSE(fs::exists(out / "spectral.csv"));
}

TEST(Cli, PurificationFailureExitsThree) {
    // Fully depolarized states are maximally mixed; purification has no
    // dominant eigenvector to converge to.
    const auto out = scratch("numerical");
    fs::create_directories(out);
    std::ofstream noise(out / "full.noise");
    for (const char *g : {"single", "cz", "cs", "csdg", "czphi", "swap", "itoffoli", "prep"}) noise << g << ".depolarizing = 1\n";
    noise.close();
    EXPECT_EQ(run("spectral --noise " + (out / "full.noise").string() + " --hamiltonian " + kHam + " --output " + out.string()), 3);
    EXPECT_EQ(run("spectral --no-purify --noise " + (out / "full.noise").string() + " --hamiltonian " + kHam + " --output " + out.string()), 0);
}

TEST(Cli, ConfigFileWithFlagOverride) {
    const auto out = scratch("config");
    fs::create_directories(out);
    std::ofstream(out / "run.toml") << "hamiltonian = \"" << kHam << "\"\nshots = 200\nnoise = \"paper\"\n";
    ASSERT_EQ(run("--config " + (out / "run.toml").string() + " spectral --shots 50 --output " + out.string()), 0);
    const auto j = nlohmann::json::parse(slurp(out / "summary.json"));
    EXPECT_EQ(j["config"]["shots"].get<int>(), 50);
    EXPECT_EQ(j["config"]["noise"].get<std::string>(), "paper");
}
