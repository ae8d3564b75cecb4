/*
   Copyright 2026 The rpf-lab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rpf/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = rpf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("rpf_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("sample is reproducible and independent of the worker count") {
    const auto a = scratch("sample_a"), b = scratch("sample_b");
    const std::vector<std::string> base{"sample", "--beta", "1", "--n", "30", "--replicas", "6", "--seed", "12"};
    auto args_a = base;
    args_a.insert(args_a.end(), {"--out-dir", a.string(), "--workers", "1"});
    auto args_b = base;
    args_b.insert(args_b.end(), {"--out-dir", b.string(), "--workers", "3"});
    const auto ra = run(args_a);
    REQUIRE(ra.code == 0);
    CHECK(ra.out.find("samples.csv") != std::string::npos);
    REQUIRE(run(args_b).code == 0);
    const auto text = slurp(a / "samples.csv");
    CHECK(text == slurp(b / "samples.csv"));
    CHECK(text.rfind("# config: ", 0) == 0);
    CHECK(text.find("replica,re,im") != std::string::npos);
}

TEST_CASE("a config file reproduces the run") {
    const auto a = scratch("config_a"), b = scratch("config_b");
    REQUIRE(run({"kernel-table", "--kernel", "sine", "--points", "7", "--out-dir", a.string()}).code == 0);
    const auto text = slurp(a / "kernel_table.csv");
    const auto line = text.substr(0, text.find('\n'));
    const auto cfg = nlohmann::json::parse(line.substr(std::string("# config: ").size()));
    {
        std::ofstream f(b / "cfg.json");
        f << cfg.dump();
    }
    REQUIRE(run({"kernel-table", "--config", (b / "cfg.json").string(), "--out-dir", b.string()}).code == 0);
    CHECK(slurp(b / "kernel_table.csv") == text);
    CHECK(cfg.contains("kernel"));
    CHECK(!cfg.contains("workers"));
}

TEST_CASE("report schema") {
    const auto dir = scratch("probe");
    REQUIRE(run({"qg-probe", "--n", "20", "--outer", "5", "--grid-points", "10", "--out-dir", dir.string()})
                .code == 0);
    const auto rep = nlohmann::json::parse(slurp(dir / "qg_probe.json"));
    for (const char* key : {"condition", "params", "table", "verdicts", "seed", "replicas", "config"})
        CHECK(rep.contains(key));
    CHECK(rep["condition"] == "QG-probe");
}

TEST_CASE("invalid input exits with 2") {
    const auto dir = scratch("invalid");
    CHECK(run({"sample", "--replicas", "0", "--out-dir", dir.string()}).code == rpf::cli::kExitInvalid);
    CHECK(run({"sample", "--no-such-flag"}).code == rpf::cli::kExitInvalid);
    CHECK(run({"sample", "--beta", "abc"}).code == rpf::cli::kExitInvalid);
    CHECK(run({"no-such-command"}).code == rpf::cli::kExitInvalid);
    CHECK(run({}).code == rpf::cli::kExitInvalid);
    CHECK(run({"correlate", "--scaling", "sideways", "--out-dir", dir.string()}).code ==
          rpf::cli::kExitInvalid);
    CHECK(run({"sample", "--config", (dir / "missing.json").string()}).code == rpf::cli::kExitInvalid);
    const auto r = run({"simulate", "--dt", "-1", "--out-dir", dir.string()});
    CHECK(r.code == rpf::cli::kExitInvalid);
    CHECK(!r.err.empty());
}

TEST_CASE("help exits with 0") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"sample", "--help"}).code == 0);
}

TEST_CASE("documented invocations") {
    const auto a = scratch("doc_a"), b = scratch("doc_b");
    const std::vector<std::string> sample{"sample",     "--beta", "2",  "--n",    "50", "--scaling",
                                          "softedge",   "--replicas", "10", "--seed", "7"};
    auto args = sample;
    args.insert(args.end(), {"--out-dir", a.string()});
    REQUIRE(run(args).code == 0);
    args = sample;
    args.insert(args.end(), {"--out-dir", b.string()});
    REQUIRE(run(args).code == 0);
    CHECK(slurp(a / "samples.csv") == slurp(b / "samples.csv"));

    CHECK(run({"check-h4", "--ell0", "3", "--n-grid", "50,100", "--replicas", "0", "--out-dir", a.string()})
              .code == rpf::cli::kExitInvalid);

    REQUIRE(run({"qg-probe", "--beta", "2", "--n", "100", "--m-inside", "1", "--r", "1", "--outer", "50",
                 "--seed", "1", "--out-dir", a.string()})
                .code == 0);
    const auto rep = nlohmann::json::parse(slurp(a / "qg_probe.json"));
    REQUIRE(rep["table"].size() == 1);
    const auto& row = rep["table"][0];
    CHECK(row["osc"].size() == 50);
    for (const char* key : {"osc_p50", "osc_p90", "osc_max", "control_max_osc"}) CHECK(row.contains(key));
    for (const char* key : {"uniform_in_n", "control_passes", "p90_growth"}) CHECK(rep["verdicts"].contains(key));
    CHECK(rep["config"]["n"] == 100);
}
