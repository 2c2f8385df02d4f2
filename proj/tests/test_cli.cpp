// Copyright 2026 The psdist Authors
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
//
// End-to-end checks of the psdist binary: formats, exit codes, determinism.

#include "psdist/mean_param.hpp"
#include "psdist/series.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(PSDIST_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

TEST_CASE("coeffs csv round-trips the exact values") {
    const CliResult r = run_cli("coeffs --max-m 20 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 22);
    CHECK(lines[0] == "m,numerator,denominator,a_m_float");

    const auto row0 = split_csv(lines[1]);
    CHECK(row0[0] == "0");
    CHECK(row0[1] == "1");
    CHECK(row0[2] == "1");
    const auto row1 = split_csv(lines[2]);
    CHECK(row1[1] == "1");
    CHECK(row1[2] == "8");
    const auto row3 = split_csv(lines[4]);
    CHECK(row3[1] == "33");
    CHECK(row3[2] == "1024");

    // 17-digit floats parse back bit-exactly
    for (std::size_t m = 0; m <= 20; ++m) {
        const auto row = split_csv(lines[m + 1]);
        CHECK(std::strtod(row[3].c_str(), nullptr) == psdist::series::coefficient_value(m));
    }
}

TEST_CASE("coeffs rejects out-of-range max-m with a usage error") {
    CHECK(run_cli("coeffs --max-m 10001").exit_code == 2);
    CHECK(run_cli("coeffs --max-m 0 --format csv").exit_code == 0);
}

TEST_CASE("pmf table in mean parameterization") {
    const CliResult r = run_cli("pmf --x 1 --max-k 0 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] == "k,pmf,cdf,printed,ratio");
    const auto row = split_csv(lines[1]);
    const double p = std::strtod(row[1].c_str(), nullptr);
    CHECK(p == Catch::Approx(std::sqrt(0.6)).epsilon(1e-14));
    // printed form is 1 at k=0, so the ratio equals the pmf itself
    CHECK(std::strtod(row[3].c_str(), nullptr) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(std::strtod(row[4].c_str(), nullptr) == Catch::Approx(p).epsilon(1e-12));
}

TEST_CASE("pmf running total approaches one") {
    const CliResult r = run_cli("pmf --x 1 --max-k 200 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    const auto total_row = split_csv(lines.at(lines.size() - 1));
    REQUIRE(total_row[0] == "total");
    const double total = std::strtod(total_row[1].c_str(), nullptr);
    const double total_plus_tail = std::strtod(total_row[2].c_str(), nullptr);
    CHECK(total <= 1.0 + 1e-12);
    CHECK(total_plus_tail >= 1.0 - 1e-10);

    // a deep table gets there on the running total alone
    const CliResult deep = run_cli("pmf --x 1 --max-k 2000 --format csv");
    const auto deep_total = split_csv(lines_of(deep.out).back());
    CHECK(std::strtod(deep_total[1].c_str(), nullptr) >= 1.0 - 1e-10);
}

TEST_CASE("pmf in y parameterization uses the family registry") {
    const CliResult r = run_cli("pmf --family poisson --y 1 --max-k 0 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto row = split_csv(lines_of(r.out).at(1));
    CHECK(std::strtod(row[1].c_str(), nullptr) == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));

    CHECK(run_cli("pmf --family poisson --x 1").exit_code == 2);  // mean form is flagship-only
    CHECK(run_cli("pmf --format csv").exit_code == 2);            // need --x or --y
    CHECK(run_cli("pmf --x -3").exit_code == 3);                  // domain
    CHECK(run_cli("pmf --family geometric --y 1.5").exit_code == 3);
}

TEST_CASE("moments text output prints the polynomials") {
    const CliResult r = run_cli("moments --kind cumulant --max-order 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("8x^3 + 6x^2 + x") != std::string::npos);

    const CliResult raw = run_cli("moments --kind raw --max-order 1");
    CHECK(raw.out.find("alpha_1 = x") != std::string::npos);

    const CliResult central = run_cli("moments --kind central --max-order 1");
    CHECK(central.out.find("mu_1 = 0") != std::string::npos);

    CHECK(run_cli("moments --max-order 13").exit_code == 2);
    CHECK(run_cli("moments --kind bogus").exit_code == 2);
}

TEST_CASE("moments json carries exact integer strings") {
    const CliResult r = run_cli("moments --kind cumulant --max-order 3 --format json");
    REQUIRE(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 3);
    CHECK(parsed[0].at("kind") == "cumulant");
    CHECK(parsed[0].at("order") == 1);
    // chi_2 = x + 6x^2 + 8x^3 ascending
    const auto& chi2 = parsed[1].at("coeffs");
    REQUIRE(chi2.size() == 4);
    CHECK(chi2[1][0] == "1");
    CHECK(chi2[2][0] == "6");
    CHECK(chi2[3][0] == "8");
    CHECK(chi2[3][1] == "1");
}

TEST_CASE("sampling output is deterministic") {
    const std::string args = "sample --n 50 --x 1 --seed 42 --format csv";
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto lines = lines_of(a.out);
    CHECK(lines[0].rfind("# x=1 seed=42", 0) == 0);
    CHECK(lines[1] == "value");
    CHECK(lines.size() >= 52);

    const CliResult empty = run_cli("sample --n 0 --x 1 --format csv");
    const auto empty_lines = lines_of(empty.out);
    CHECK(empty_lines.size() == 2);  // comment header + column header only

    CHECK(run_cli("sample --n 5 --x 0").exit_code == 3);
    CHECK(run_cli("sample --n 5").exit_code == 2);  // --x required
}

TEST_CASE("sample summary mean lands in the 3-sigma band") {
    const CliResult r = run_cli("sample --n 100000 --x 1 --seed 1234 --format text");
    REQUIRE(r.exit_code == 0);
    const std::size_t pos = r.out.find("mean=");
    REQUIRE(pos != std::string::npos);
    const double mean = std::strtod(r.out.c_str() + pos + 5, nullptr);
    CHECK(mean >= 0.96);
    CHECK(mean <= 1.04);
}

TEST_CASE("sample json matches the library batch") {
    const CliResult r = run_cli("sample --n 20 --x 2 --seed 7 --format json");
    REQUIRE(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed.at("x") == 2.0);
    CHECK(parsed.at("seed") == 7);
    const auto batch = psdist::sample(20, 2.0, 7);
    REQUIRE(parsed.at("values").size() == 20);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(parsed.at("values")[i].get<std::uint64_t>() == batch.values[i]);
    }
}

TEST_CASE("validate exits zero with three discrepancy notes") {
    const CliResult r = run_cli("validate");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("3 discrepancy notes") != std::string::npos);
    CHECK(r.out.find("OVERALL: PASS") != std::string::npos);
    CHECK(r.out.find("DISCREPANCY") != std::string::npos);

    const CliResult json = run_cli("validate --format json");
    REQUIRE(json.exit_code == 0);
    const auto parsed = nlohmann::json::parse(json.out);
    CHECK(parsed.at("overall_pass").get<bool>());
    CHECK(parsed.at("discrepancy_notes").get<int>() == 3);

    // byte-identical across runs
    CHECK(run_cli("validate --format json").out == json.out);

    CHECK(run_cli("validate --x -1").exit_code == 3);
}

TEST_CASE("unknown flags are usage errors") {
    CHECK(run_cli("coeffs --no-such-flag").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}
