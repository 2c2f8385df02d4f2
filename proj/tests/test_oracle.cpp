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

#include "psdist/generating.hpp"
#include "psdist/validation.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <cmath>

using namespace psdist;

TEST_CASE("brute moments recover known values") {
    CHECK(brute_moment(0, 1.0, 1e-8) == Catch::Approx(1.0).margin(1e-8));
    CHECK(brute_moment(1, 1.0, 1e-8) == Catch::Approx(1.0).margin(1e-8));
    CHECK(brute_moment(2, 1.0, 1e-8) == Catch::Approx(16.0).epsilon(1e-8));
    CHECK_THROWS_AS(brute_moment(1, -1.0, 1e-8), std::domain_error);
    CHECK_THROWS_AS(brute_moment(1, 1.0, 0.0), std::domain_error);
}

TEST_CASE("generating function side conditions") {
    for (const double x : {0.5, 1.0, 2.0}) {
        CHECK(gf_value({GenFn::P, x, 1.0}) == Catch::Approx(1.0).epsilon(1e-14));  // P(1) = 1
        CHECK(gf_value({GenFn::A, x, 0.0}) == Catch::Approx(1.0).epsilon(1e-14));  // A(0) = 1
        CHECK(gf_value({GenFn::C, x, 0.0}) == Catch::Approx(1.0).epsilon(1e-14));  // C(0) = 1
        CHECK(gf_value({GenFn::K, x, 0.0}) == Catch::Approx(0.0).margin(1e-14));   // K(0) = 0
    }
}

TEST_CASE("generating function compositions agree") {
    const double x = 0.5;
    const double z = -0.3;
    const double a = gf_value({GenFn::A, x, z});
    CHECK(gf_value({GenFn::P, x, std::exp(z)}) == Catch::Approx(a).epsilon(1e-14));
    CHECK(gf_value({GenFn::C, x, z}) == Catch::Approx(std::exp(-x * z) * a).epsilon(1e-14));
    CHECK(gf_value({GenFn::K, x, z}) == Catch::Approx(std::log(a)).epsilon(1e-12));
}

TEST_CASE("probes outside the convergence region are rejected") {
    CHECK_FALSE(in_convergence_region(GenFn::P, 1.0, -0.2));
    CHECK_FALSE(in_convergence_region(GenFn::P, 1.0, 1.1));  // y z > 1
    CHECK(in_convergence_region(GenFn::P, 1.0, 1.0));
    CHECK_FALSE(in_convergence_region(GenFn::A, 1.0, 0.1));  // y e^z > 1
    CHECK(in_convergence_region(GenFn::A, 0.5, 0.1));
    CHECK(in_convergence_region(GenFn::A, 2.0, -0.2));
    CHECK_THROWS_AS(gf_value({GenFn::P, 1.0, -0.5}), std::domain_error);
    CHECK_THROWS_AS(gf_value({GenFn::A, 1.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(pde_check(Pde::eq2, 2.0, 0.1, 2e-5, 1e-5), std::domain_error);
}

TEST_CASE("pde residuals vanish to second order on the probe grid") {
    for (const double x : {0.5, 1.0, 2.0}) {
        for (const double z : {0.1, 0.5, 1.0}) {
            const PdeCheck c = pde_check(Pde::eq1, x, z, x * 1e-5, 1e-5);
            CHECK(c.relative() <= 1e-5);
        }
        for (const Pde eq : {Pde::eq2, Pde::eq3, Pde::eq4}) {
            const PdeCheck c = pde_check(eq, x, -0.2, x * 1e-5, 1e-5);
            CHECK(c.relative() <= 1e-5);
        }
    }
    // z = 1 reduces eq1 to the side condition P(1) = 1; the residual is the
    // same finite-difference identity and stays within tolerance
    CHECK(std::abs(pde_residual(Pde::eq1, 1.0, 1.0))
          <= 1e-5 * pde_check(Pde::eq1, 1.0, 1.0, 1e-5, 1e-5).scale);
}

TEST_CASE("halving the steps divides the residual by about four") {
    for (const Pde eq : {Pde::eq1, Pde::eq2, Pde::eq3, Pde::eq4}) {
        const double z = eq == Pde::eq1 ? 0.5 : -0.2;
        for (const double x : {0.5, 1.0}) {
            const double r1 = pde_check(eq, x, z, x * 1e-3, 1e-3).residual;
            const double r2 = pde_check(eq, x, z, x * 5e-4, 5e-4).residual;
            const double factor = std::abs(r1 / r2);
            CHECK(factor >= 3.5);
            CHECK(factor <= 4.5);
        }
    }
}

TEST_CASE("full validation passes with exactly three discrepancy notes") {
    const ValidationReport report = run_full_validation({0.1, 1.0, 10.0});
    CHECK(report.overall_pass());
    CHECK(report.discrepancy_count() == 3);

    // the notes are notes, not failures
    for (const auto& e : report.entries()) {
        if (e.note.rfind("DISCREPANCY", 0) == 0) {
            CHECK(e.is_note);
            CHECK(e.pass);
        }
    }
}

TEST_CASE("validation rejects bad inputs") {
    CHECK_THROWS_AS(run_full_validation({}), std::invalid_argument);
    CHECK_THROWS_AS(run_full_validation({-1.0}), std::domain_error);
    CHECK_THROWS_AS(run_full_validation({0.0}), std::domain_error);
    CHECK_THROWS_AS(run_full_validation({1.0, std::nan("")}), std::domain_error);
}

TEST_CASE("reports are deterministic and serialize to valid JSON") {
    const ValidationReport a = run_full_validation({0.5, 2.0});
    const ValidationReport b = run_full_validation({0.5, 2.0});
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_text() == b.to_text());

    const auto parsed = nlohmann::json::parse(a.to_json());
    CHECK(parsed.at("overall_pass").get<bool>());
    CHECK(parsed.at("discrepancy_notes").get<int>() == 3);
    CHECK(parsed.at("entries").is_array());
    CHECK(parsed.at("entries").size() == a.entries().size());
    const auto& first = parsed.at("entries").at(0);
    CHECK(first.contains("name"));
    CHECK(first.contains("probe"));
    CHECK(first.contains("residual"));
    CHECK(first.contains("tolerance"));
    CHECK(first.contains("pass"));
    CHECK(first.contains("note"));
}
