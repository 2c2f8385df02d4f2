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
// Numeric probes of the four generating functions of the flagship
// distribution at mean x,
//   P(z) = w(y(x) z) / w(y(x))   probability generating function
//   A(z) = P(e^z)                raw moments
//   C(z) = e^(-xz) A(z)          central moments
//   K(z) = log A(z)              cumulants
// and central-difference residuals of the differential equations they
// satisfy:
//   (1)  v P_x - z P_z + x P        = 0       P(1) = 1
//   (2)  v A_x -   A_z + x A        = 0       A(0) = 1
//   (3)  v (C_x + z C) - C_z        = 0       C(0) = 1
//   (4)  v K_x -   K_z + x          = 0       K(0) = 0
// The residuals vanish only up to O(h^2); halving the steps must shrink
// them by about 4, which is itself a checkable property.

#ifndef PSDIST_GENERATING_HPP
#define PSDIST_GENERATING_HPP

#include "psdist/mean_param.hpp"
#include "psdist/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psdist {

enum class GenFn { P, A, C, K };

enum class Pde { eq1, eq2, eq3, eq4 };

inline GenFn pde_function(Pde which) {
    switch (which) {
        case Pde::eq1: return GenFn::P;
        case Pde::eq2: return GenFn::A;
        case Pde::eq3: return GenFn::C;
        default: return GenFn::K;
    }
}

struct GeneratingFunctionProbe {
    GenFn which;
    double x;  // mean, > 0
    double z;  // evaluation point
};

/// Whether the probe (and an FD stencil of half-widths hx, hz around it)
/// stays inside the series' convergence region: the w argument must stay in
/// [0, 1), i.e. z in (0, 1/y) for P and y e^z < 1 for A, C, K.
inline bool in_convergence_region(GenFn which, double x, double z,
                                  double hx = 0.0, double hz = 0.0) {
    if (!(x > 0.0) || !(x - hx > 0.0)) return false;
    const double y_hi = y_of_x(x + hx);  // y is increasing in x
    if (which == GenFn::P) {
        return z - hz > 0.0 && y_hi * (z + hz) < 1.0;
    }
    return y_hi * std::exp(z + hz) < 1.0;
}

/// Evaluates the requested generating function at the probe.
inline double gf_value(const GeneratingFunctionProbe& probe) {
    if (!in_convergence_region(probe.which, probe.x, probe.z)) {
        throw std::domain_error("gf_value: probe outside convergence region");
    }
    const double y = y_of_x(probe.x);
    const auto p_at = [&](double z) { return series::eval_w(y * z) / series::eval_w(y); };
    switch (probe.which) {
        case GenFn::P: return p_at(probe.z);
        case GenFn::A: return p_at(std::exp(probe.z));
        case GenFn::C: return std::exp(-probe.x * probe.z) * p_at(std::exp(probe.z));
        default: return std::log(p_at(std::exp(probe.z)));
    }
}

/// One residual evaluation: the left-hand side of the equation and the
/// magnitude of its largest term (the natural scale for "relative").
struct PdeCheck {
    double residual = 0.0;
    double scale = 0.0;

    double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

/// Central-difference residual of the chosen equation at (x, z) with
/// explicit steps. Throws if any stencil point leaves the region.
inline PdeCheck pde_check(Pde which, double x, double z, double hx, double hz) {
    const GenFn fn = pde_function(which);
    if (!in_convergence_region(fn, x, z, hx, hz)) {
        throw std::domain_error("pde_check: stencil outside convergence region");
    }
    const auto f = [&](double xx, double zz) { return gf_value({fn, xx, zz}); };
    const double fx = (f(x + hx, z) - f(x - hx, z)) / (2.0 * hx);
    const double fz = (f(x, z + hz) - f(x, z - hz)) / (2.0 * hz);
    const double f0 = f(x, z);
    const double v = variance_fn(x);

    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    switch (which) {
        case Pde::eq1: t1 = v * fx; t2 = -z * fz; t3 = x * f0; break;
        case Pde::eq2: t1 = v * fx; t2 = -fz; t3 = x * f0; break;
        case Pde::eq3: t1 = v * fx; t2 = v * z * f0; t3 = -fz; break;
        default:       t1 = v * fx; t2 = -fz; t3 = x; break;
    }
    PdeCheck out;
    out.residual = t1 + t2 + t3;
    out.scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    return out;
}

/// Residual with the default steps h_x = x * 1e-5, h_z = 1e-5.
inline double pde_residual(Pde which, double x, double z) {
    return pde_check(which, x, z, x * 1e-5, 1e-5).residual;
}

}  // namespace psdist

#endif  // PSDIST_GENERATING_HPP
