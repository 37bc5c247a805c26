// classicalpath.hpp - the C-number ("improper") semiclassical Hamiltonian
//
//   H_C(phi) = omega |a|^2 + B(phi) . sigma
//   B = ( |a| cos(ph) (lambda + lambda_nr), |a| sin(ph) (lambda_nr - lambda), nu/2 ),  ph = phi + varphi'
//
// For lambda_nr = 0 the eigenvectors wind around the Bloch sphere and pick up
// half the enclosed solid angle; for lambda_nr = lambda B stays in the x-z
// plane, the eigenvectors are real and the loop phase vanishes.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "rabibp/error.hpp"
#include "rabibp/model.hpp"

namespace rabibp {

struct ClassicalField {
    double alpha_mod{0.0};
    double varphi_prime{0.0};
};

using Spinor = std::array<std::complex<double>, 2>;
using Matrix2c = std::array<std::array<std::complex<double>, 2>, 2>;

struct SpinHamiltonian {
    double offset{0.0};            // omega |alpha|^2
    std::array<double, 3> b{};     // coefficients of sigma_x, sigma_y, sigma_z

    Matrix2c matrix() const {
        using c = std::complex<double>;
        return {{{c(offset + b[2], 0.0), c(b[0], -b[1])},
                 {c(b[0], b[1]), c(offset - b[2], 0.0)}}};
    }

    double field_norm() const { return std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]); }

    // Angle between B and the +z axis.
    double polar_angle() const { return std::atan2(std::hypot(b[0], b[1]), b[2]); }
};

inline SpinHamiltonian classical_hamiltonian(const TwoLevelParams& p, const ClassicalField& field, double phi) {
    validate(p);
    if (!(field.alpha_mod >= 0.0) || !std::isfinite(field.alpha_mod) || !std::isfinite(field.varphi_prime))
        throw InputError("classical_hamiltonian: alpha_mod must be finite and >= 0");
    if (!std::isfinite(phi))
        throw InputError("classical_hamiltonian: non-finite phi");

    const double ph = phi + field.varphi_prime;
    SpinHamiltonian h;
    h.offset = p.omega * field.alpha_mod * field.alpha_mod;
    h.b = {field.alpha_mod * std::cos(ph) * (p.lambda + p.lambda_nr),
           field.alpha_mod * std::sin(ph) * (p.lambda_nr - p.lambda),
           0.5 * p.nu};
    return h;
}

struct BlochPath {
    std::vector<double> phi;
    std::vector<Spinor> samples;
    std::vector<double> energies;
    bool closed{false};
};

struct EigenPaths {
    BlochPath lower;
    BlochPath upper;
};

namespace detail {

inline double spinor_norm(const Spinor& s) { return std::sqrt(std::norm(s[0]) + std::norm(s[1])); }

inline std::complex<double> overlap(const Spinor& a, const Spinor& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

// Largest-magnitude component made real positive; the spinor is normalized.
inline Spinor fix_gauge(Spinor s) {
    const double n = spinor_norm(s);
    const std::size_t big = std::abs(s[1]) > std::abs(s[0]) ? 1 : 0;
    const std::complex<double> phase = std::abs(s[big]) > 0 ? s[big] / std::abs(s[big]) : 1.0;
    const std::complex<double> factor = std::conj(phase) / n;
    return {s[0] * factor, s[1] * factor};
}

// Eigenvector of B.sigma with eigenvalue sign * |B|. Of the two null-vector
// formulas the one with the larger norm is used.
inline Spinor spin_eigenvector(const std::array<double, 3>& b, int sign) {
    using c = std::complex<double>;
    const double r = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    const c bm(b[0], -b[1]);  // bx - i by
    const c bp(b[0], b[1]);   // bx + i by
    Spinor first, second;
    if (sign > 0) {
        first = {c(r + b[2]), bp};
        second = {bm, c(r - b[2])};
    } else {
        first = {-bm, c(r + b[2])};
        second = {c(r - b[2]), -bp};
    }
    return fix_gauge(spinor_norm(first) >= spinor_norm(second) ? first : second);
}

} // namespace detail

// Samples both bands at phi_k = 2 pi k / steps, k = 0..steps-1. `closed`
// compares the eigenvector at phi = 2 pi with the first sample.
inline EigenPaths eigenpath(const TwoLevelParams& p, const ClassicalField& field, std::size_t steps) {
    if (steps < 8)
        throw InputError("eigenpath: steps must be >= 8");

    EigenPaths out;
    for (auto* path : {&out.lower, &out.upper}) {
        path->phi.reserve(steps);
        path->samples.reserve(steps);
        path->energies.reserve(steps);
    }

    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t k = 0; k < steps; ++k) {
        const double phi = two_pi * static_cast<double>(k) / static_cast<double>(steps);
        const SpinHamiltonian h = classical_hamiltonian(p, field, phi);
        const double r = h.field_norm();
        if (2.0 * r < 1e-10)
            throw NumericalError("eigenpath: bands degenerate at phi_" + std::to_string(k) + " = " +
                                 std::to_string(phi));
        out.lower.phi.push_back(phi);
        out.lower.samples.push_back(detail::spin_eigenvector(h.b, -1));
        out.lower.energies.push_back(h.offset - r);
        out.upper.phi.push_back(phi);
        out.upper.samples.push_back(detail::spin_eigenvector(h.b, +1));
        out.upper.energies.push_back(h.offset + r);
    }

    const SpinHamiltonian end = classical_hamiltonian(p, field, two_pi);
    out.lower.closed = std::abs(detail::overlap(detail::spin_eigenvector(end.b, -1), out.lower.samples.front())) >
                       1.0 - 1e-10;
    out.upper.closed = std::abs(detail::overlap(detail::spin_eigenvector(end.b, +1), out.upper.samples.front())) >
                       1.0 - 1e-10;
    return out;
}

// Discrete Pancharatnam phase -sum_k Arg <s_k|s_{k+1}> over the samples plus
// the closing overlap <s_last|s_0>. Samples are re-gauged first, so the result
// does not depend on the phases they arrive with.
inline double path_geometric_phase(const BlochPath& path) {
    if (path.samples.size() < 8)
        throw InputError("path_geometric_phase: need at least 8 samples");

    std::vector<Spinor> s;
    s.reserve(path.samples.size());
    for (const auto& v : path.samples) {
        const double n = detail::spinor_norm(v);
        if (std::abs(n - 1.0) > 1e-12)
            throw InputError("path_geometric_phase: sample is not normalized");
        s.push_back(detail::fix_gauge(v));
    }

    double gamma = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto o = detail::overlap(s[k], s[(k + 1) % s.size()]);
        if (std::abs(o) < 0.5)
            throw NumericalError("path_geometric_phase: overlap " + std::to_string(std::abs(o)) + " at sample " +
                                 std::to_string(k) + " is too small; sample more densely");
        gamma -= std::arg(o);
    }
    return gamma;
}

// Half the solid angle of a cap with opening angle theta.
inline double solid_angle_phase(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw InputError("solid_angle_phase: theta must lie in [0, pi]");
    return std::numbers::pi * (1.0 - std::cos(theta));
}

} // namespace rabibp
