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
// psdist command line: series coefficient tables, pmf/cdf tables, exact
// moment polynomials, reproducible sampling, and the validation suite.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 domain error.

#include "psdist/format.hpp"
#include "psdist/mean_param.hpp"
#include "psdist/moments.hpp"
#include "psdist/power_series.hpp"
#include "psdist/series.hpp"
#include "psdist/summation.hpp"
#include "psdist/validation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#if defined(_WIN32)
#define PSDIST_ISATTY() false
#else
#include <unistd.h>
#define PSDIST_ISATTY() (isatty(fileno(stdout)) != 0)
#endif

namespace {

using psdist::format_double;
using Json = nlohmann::ordered_json;

enum class Format { csv, json, text };

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    return Format::text;
}

bool color_allowed() {
    return PSDIST_ISATTY() && std::getenv("NO_COLOR") == nullptr;
}

// ---------------------------------------------------------------- coeffs --

int run_coeffs(std::size_t max_m, Format format) {
    if (format == Format::csv) {
        std::cout << "m,numerator,denominator,a_m_float\n";
        for (std::size_t m = 0; m <= max_m; ++m) {
            const psdist::Rational r = psdist::series::coefficient_rational(m);
            std::cout << m << ',' << r.num().str() << ',' << r.den().str() << ','
                      << format_double(psdist::series::coefficient_value(m)) << '\n';
        }
    } else if (format == Format::json) {
        Json rows = Json::array();
        for (std::size_t m = 0; m <= max_m; ++m) {
            const psdist::Rational r = psdist::series::coefficient_rational(m);
            rows.push_back({{"m", m},
                            {"numerator", r.num().str()},
                            {"denominator", r.den().str()},
                            {"a_m", psdist::series::coefficient_value(m)}});
        }
        std::cout << Json{{"coefficients", rows}}.dump(2) << '\n';
    } else {
        std::printf("%6s  %-28s  %s\n", "m", "r_m (exact)", "a_m = r_m/sqrt(2)");
        for (std::size_t m = 0; m <= max_m; ++m) {
            const psdist::Rational r = psdist::series::coefficient_rational(m);
            std::printf("%6zu  %-28s  %s\n", m, r.str().c_str(),
                        format_double(psdist::series::coefficient_value(m)).c_str());
        }
    }
    return 0;
}

// ------------------------------------------------------------------- pmf --

int run_pmf_mean(double x, std::size_t max_k, Format format) {
    const psdist::MeanParamDistribution dist(x);
    psdist::NeumaierSum running;

    std::vector<std::array<double, 4>> rows;  // pmf, cdf, printed, ratio
    rows.reserve(max_k + 1);
    for (std::size_t k = 0; k <= max_k; ++k) {
        const double p = dist.pmf(k);
        running.add(p);
        const double printed = dist.pmf_printed(k);
        rows.push_back({p, running.value(), printed, p / printed});
    }
    const double total = running.value();
    const double rho = psdist::geometric_ratio_cap(dist.y());
    const double total_plus_tail = total + dist.pmf(max_k) * rho / (1.0 - rho);

    if (format == Format::csv) {
        std::cout << "k,pmf,cdf,printed,ratio\n";
        for (std::size_t k = 0; k <= max_k; ++k) {
            std::cout << k << ',' << format_double(rows[k][0]) << ',' << format_double(rows[k][1])
                      << ',' << format_double(rows[k][2]) << ',' << format_double(rows[k][3])
                      << '\n';
        }
        std::cout << "total," << format_double(total) << ',' << format_double(total_plus_tail)
                  << ",,\n";
    } else if (format == Format::json) {
        Json out;
        out["x"] = x;
        out["rows"] = Json::array();
        for (std::size_t k = 0; k <= max_k; ++k) {
            out["rows"].push_back({{"k", k},
                                   {"pmf", rows[k][0]},
                                   {"cdf", rows[k][1]},
                                   {"printed", rows[k][2]},
                                   {"ratio", rows[k][3]}});
        }
        out["total"] = total;
        out["total_plus_tail"] = total_plus_tail;
        std::cout << out.dump(2) << '\n';
    } else {
        std::printf("pmf table, mean x = %s (y = %s)\n", format_double(x).c_str(),
                    format_double(dist.y()).c_str());
        std::printf("%6s  %-22s  %-22s  %-22s  %s\n", "k", "pmf", "cdf", "printed form", "ratio");
        for (std::size_t k = 0; k <= max_k; ++k) {
            std::printf("%6zu  %-22s  %-22s  %-22s  %s\n", k, format_double(rows[k][0]).c_str(),
                        format_double(rows[k][1]).c_str(), format_double(rows[k][2]).c_str(),
                        format_double(rows[k][3]).c_str());
        }
        std::printf("total: %s  (plus tail bound: %s)\n", format_double(total).c_str(),
                    format_double(total_plus_tail).c_str());
    }
    return 0;
}

int run_pmf_y(const std::string& family_name, double y, std::size_t max_k, Format format) {
    const psdist::YParamState state(psdist::family_by_name(family_name), y);
    psdist::NeumaierSum running;
    std::vector<std::array<double, 2>> rows;
    rows.reserve(max_k + 1);
    for (std::size_t k = 0; k <= max_k; ++k) {
        const double p = psdist::pmf_y(state, k);
        running.add(p);
        rows.push_back({p, running.value()});
    }
    const double total = running.value();

    if (format == Format::csv) {
        std::cout << "k,pmf,cdf\n";
        for (std::size_t k = 0; k <= max_k; ++k) {
            std::cout << k << ',' << format_double(rows[k][0]) << ',' << format_double(rows[k][1])
                      << '\n';
        }
        std::cout << "total," << format_double(total) << ",\n";
    } else if (format == Format::json) {
        Json out;
        out["family"] = family_name;
        out["y"] = y;
        out["rows"] = Json::array();
        for (std::size_t k = 0; k <= max_k; ++k) {
            out["rows"].push_back({{"k", k}, {"pmf", rows[k][0]}, {"cdf", rows[k][1]}});
        }
        out["total"] = total;
        std::cout << out.dump(2) << '\n';
    } else {
        std::printf("pmf table, family %s, y = %s\n", family_name.c_str(),
                    format_double(y).c_str());
        std::printf("%6s  %-22s  %s\n", "k", "pmf", "cdf");
        for (std::size_t k = 0; k <= max_k; ++k) {
            std::printf("%6zu  %-22s  %s\n", k, format_double(rows[k][0]).c_str(),
                        format_double(rows[k][1]).c_str());
        }
        std::printf("total: %s\n", format_double(total).c_str());
    }
    return 0;
}

// --------------------------------------------------------------- moments --

const char* symbol_for(psdist::MomentKind kind) {
    switch (kind) {
        case psdist::MomentKind::raw: return "alpha";
        case psdist::MomentKind::central: return "mu";
        default: return "chi";
    }
}

psdist::MomentPolynomial moment_of(psdist::MomentKind kind, std::size_t order) {
    switch (kind) {
        case psdist::MomentKind::raw: return psdist::raw_moment(order);
        case psdist::MomentKind::central: return psdist::central_moment(order);
        default: return psdist::cumulant(order);
    }
}

int run_moments(std::size_t max_order, const std::string& kind_flag, Format format) {
    std::vector<psdist::MomentKind> kinds;
    if (kind_flag == "all") {
        kinds = {psdist::MomentKind::raw, psdist::MomentKind::central,
                 psdist::MomentKind::cumulant};
    } else if (kind_flag == "raw") {
        kinds = {psdist::MomentKind::raw};
    } else if (kind_flag == "central") {
        kinds = {psdist::MomentKind::central};
    } else {
        kinds = {psdist::MomentKind::cumulant};
    }

    std::vector<psdist::MomentPolynomial> polys;
    for (const auto kind : kinds) {
        const std::size_t start = kind == psdist::MomentKind::cumulant ? 1 : 0;
        for (std::size_t m = start; m <= max_order; ++m) polys.push_back(moment_of(kind, m));
    }

    if (format == Format::csv) {
        std::cout << "kind,order,power,numerator,denominator\n";
        for (const auto& p : polys) {
            const auto& coeffs = p.poly.coefficients();
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                std::cout << psdist::moment_kind_name(p.kind) << ',' << p.order << ',' << i << ','
                          << coeffs[i].num().str() << ',' << coeffs[i].den().str() << '\n';
            }
        }
    } else if (format == Format::json) {
        Json out = Json::array();
        for (const auto& p : polys) {
            Json coeffs = Json::array();
            for (const auto& c : p.poly.coefficients()) {
                coeffs.push_back(Json::array({c.num().str(), c.den().str()}));
            }
            out.push_back({{"kind", psdist::moment_kind_name(p.kind)},
                           {"order", p.order},
                           {"coeffs", coeffs}});
        }
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& p : polys) {
            std::printf("%s_%zu = %s\n", symbol_for(p.kind), p.order,
                        p.poly.to_string().c_str());
        }
    }
    return 0;
}

// ---------------------------------------------------------------- sample --

int run_sample(std::size_t n, double x, std::uint64_t seed, Format format) {
    const psdist::SampleBatch batch = psdist::sample(n, x, seed);

    if (format == Format::csv) {
        std::cout << "# x=" << format_double(batch.x) << " seed=" << batch.seed << " n=" << n
                  << "\nvalue\n";
        for (const auto v : batch.values) std::cout << v << '\n';
    } else if (format == Format::json) {
        Json out;
        out["x"] = batch.x;
        out["seed"] = batch.seed;
        out["values"] = batch.values;
        std::cout << out.dump(2) << '\n';
    } else {
        psdist::NeumaierSum sum;
        for (const auto v : batch.values) sum.add(static_cast<double>(v));
        const double mean = n > 0 ? sum.value() / static_cast<double>(n) : 0.0;
        psdist::NeumaierSum sq;
        for (const auto v : batch.values) {
            const double d = static_cast<double>(v) - mean;
            sq.add(d * d);
        }
        const double var = n > 1 ? sq.value() / static_cast<double>(n - 1) : 0.0;
        for (const auto v : batch.values) std::cout << v << '\n';
        std::printf("summary: n=%zu x=%s seed=%llu mean=%s variance=%s\n", n,
                    format_double(batch.x).c_str(),
                    static_cast<unsigned long long>(batch.seed), format_double(mean).c_str(),
                    format_double(var).c_str());
    }
    return 0;
}

// -------------------------------------------------------------- validate --

int run_validate(std::vector<double> xs, Format format) {
    if (xs.empty()) xs = {0.1, 1.0, 10.0};
    const psdist::ValidationReport report = psdist::run_full_validation(xs);
    if (format == Format::json) {
        std::cout << report.to_json();
    } else if (format == Format::csv) {
        std::cout << "name,probe,residual,tolerance,pass,note\n";
        for (const auto& e : report.entries()) {
            std::cout << e.name << ',' << e.probe << ',' << format_double(e.residual) << ','
                      << (e.is_note ? "" : format_double(e.tolerance)) << ','
                      << (e.pass ? "true" : "false") << ",\"" << e.note << "\"\n";
        }
    } else {
        std::cout << report.to_text(color_allowed());
    }
    return report.overall_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"power series distribution toolkit: the distribution built from "
                 "w(y) = (1+sqrt(1-y))^(-1/2) under mean parameterization"};
    app.require_subcommand(1);

    std::string format_flag = "text";
    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_flag, "output format")
            ->check(CLI::IsMember({"csv", "json", "text"}))
            ->capture_default_str();
    };

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "exact series coefficients r_m (a_m = r_m/sqrt 2)");
    std::size_t max_m = 10;
    coeffs->add_option("--max-m", max_m, "largest coefficient index")
        ->check(CLI::Range(std::size_t{0}, std::size_t{10000}))
        ->capture_default_str();
    add_format(coeffs);

    // pmf
    auto* pmf = app.add_subcommand("pmf", "pmf/cdf table");
    double pmf_x = 0.0;
    double pmf_y_param = 0.0;
    std::size_t max_k = 50;
    std::string family = "flagship";
    auto* opt_x = pmf->add_option("--x", pmf_x, "mean (mean parameterization, flagship family)");
    auto* opt_y = pmf->add_option("--y", pmf_y_param, "series argument (y parameterization)");
    pmf->add_option("--family", family, "family for the y parameterization")
        ->check(CLI::IsMember({"bernoulli", "poisson", "geometric", "flagship"}))
        ->capture_default_str();
    pmf->add_option("--max-k", max_k, "largest k in the table")->capture_default_str();
    add_format(pmf);
    opt_x->excludes(opt_y);

    // moments
    auto* moments = app.add_subcommand("moments", "exact moment polynomials in the mean x");
    std::size_t max_order = 4;
    std::string kind = "all";
    moments->add_option("--max-order", max_order, "largest order")
        ->check(CLI::Range(std::size_t{1}, std::size_t{12}))
        ->capture_default_str();
    moments->add_option("--kind", kind, "which polynomials")
        ->check(CLI::IsMember({"raw", "central", "cumulant", "all"}))
        ->capture_default_str();
    add_format(moments);

    // sample
    auto* sample = app.add_subcommand("sample", "reproducible draws by quantile inversion");
    std::size_t n = 10;
    double sample_x = 0.0;
    std::uint64_t seed = 12345;
    sample->add_option("--n", n, "number of draws")->capture_default_str();
    sample->add_option("--x", sample_x, "mean")->required();
    sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
    add_format(sample);

    // validate
    auto* validate = app.add_subcommand("validate", "run the full validation suite");
    std::vector<double> xs;
    validate->add_option("--x", xs, "means to validate at (default 0.1 1 10)");
    add_format(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Format format = parse_format(format_flag);
    try {
        if (coeffs->parsed()) return run_coeffs(max_m, format);
        if (pmf->parsed()) {
            if (opt_y->count() > 0) return run_pmf_y(family, pmf_y_param, max_k, format);
            if (opt_x->count() == 0) {
                std::cerr << "pmf: one of --x or --y is required\n";
                return 2;
            }
            if (family != "flagship") {
                std::cerr << "pmf: mean parameterization (--x) applies to the flagship family; "
                             "use --y for "
                          << family << "\n";
                return 2;
            }
            return run_pmf_mean(pmf_x, max_k, format);
        }
        if (moments->parsed()) return run_moments(max_order, kind, format);
        if (sample->parsed()) return run_sample(n, sample_x, seed, format);
        if (validate->parsed()) return run_validate(xs, format);
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
