// berryphase.hpp - Berry phase of an eigenstate under the photon-phase loop
// U(phi) = exp(-i phi a^+a), phi: 0 -> 2pi.
//
// Two routes: the closed form gamma = 2 pi <a^+a>, and a discrete
// Pancharatnam product over the rotated states U(phi_k)|psi>.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "rabibp/error.hpp"
#include "rabibp/model.hpp"

namespace rabibp {

enum class BerryMethod { formula, pancharatnam };

struct BerryResult {
    double gamma{0.0};        // radians, not reduced mod 2pi
    double mean_photon{0.0};
    BerryMethod method{BerryMethod::formula};
    std::size_t loop_steps{0};
};

namespace detail {

inline double weight(double c) { return c * c; }
inline double weight(const std::complex<double>& c) { return std::norm(c); }

template <typename T>
void require_normalized(std::span<const T> state, const std::vector<BasisLabel>& basis) {
    if (state.size() != basis.size())
        throw InputError("state and basis have different sizes");
    double norm = 0.0;
    for (const auto& c : state)
        norm += weight(c);
    if (std::abs(norm - 1.0) > 1e-8)
        throw InputError("state is not normalized (|psi|^2 = " + std::to_string(norm) + ")");
}

} // namespace detail

template <typename T>
double mean_photon(std::span<const T> state, const std::vector<BasisLabel>& basis) {
    detail::require_normalized(state, basis);
    double n = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i)
        n += static_cast<double>(basis[i].photon_n) * detail::weight(state[i]);
    return n;
}

template <typename T>
BerryResult berry_phase_formula(std::span<const T> state, const std::vector<BasisLabel>& basis) {
    const double n = mean_photon(state, basis);
    return {2.0 * std::numbers::pi * n, n, BerryMethod::formula, 0};
}

// gamma = -sum_k Arg <psi(phi_k)|psi(phi_{k+1})>, |psi(phi)> = U(phi)|psi>.
// Each rotated state is built explicitly, so this path shares nothing with
// the closed form beyond the basis labels.
template <typename T>
BerryResult pancharatnam_loop(std::span<const T> state, const std::vector<BasisLabel>& basis,
                              std::size_t steps) {
    if (steps < 8)
        throw InputError("pancharatnam_loop: steps must be >= 8");
    detail::require_normalized(state, basis);

    using cplx = std::complex<double>;
    const std::size_t dim = state.size();
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(steps);

    auto rotated = [&](std::size_t k, std::vector<cplx>& out) {
        const double phi = dphi * static_cast<double>(k);
        for (std::size_t i = 0; i < dim; ++i)
            out[i] = std::polar(1.0, -phi * static_cast<double>(basis[i].photon_n)) * cplx(state[i]);
    };

    std::vector<cplx> current(dim), next(dim);
    rotated(0, current);
    double gamma = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        rotated(k + 1, next);
        cplx overlap{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i)
            overlap += std::conj(current[i]) * next[i];
        if (std::abs(overlap) < 0.1)
            throw NumericalError("pancharatnam_loop: overlap magnitude " + std::to_string(std::abs(overlap)) +
                                 " below 0.1 at step " + std::to_string(k) + "; increase steps");
        gamma -= std::arg(overlap);
        std::swap(current, next);
    }

    double n = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        n += static_cast<double>(basis[i].photon_n) * detail::weight(state[i]);
    return {gamma, n, BerryMethod::pancharatnam, steps};
}

inline BerryResult berry_phase_formula(const std::vector<double>& state, const std::vector<BasisLabel>& basis) {
    return berry_phase_formula(std::span<const double>(state), basis);
}

inline BerryResult pancharatnam_loop(const std::vector<double>& state, const std::vector<BasisLabel>& basis,
                                     std::size_t steps) {
    return pancharatnam_loop(std::span<const double>(state), basis, steps);
}

struct DoubletPhases {
    double gamma_lower{0.0};
    double gamma_upper{0.0};
    double weight_lower{0.0};  // |n+1,g> probability in the lower dressed state
    double weight_upper{0.0};
};

// Closed-form phases of the two JC dressed states spanning {|n+1,g>, |n,e>}.
// In that basis the block is (n + 1/2) omega + [[-D/2, c], [c, D/2]] with
// D = nu - omega and c = lambda sqrt(n+1).
inline DoubletPhases jc_doublet_phase(std::size_t n, const TwoLevelParams& p) {
    validate(p);
    if (p.lambda_nr != 0.0)
        throw InputError("jc_doublet_phase: only defined for the JC model (lambda_nr = 0)");

    const double detuning = p.nu - p.omega;
    const double c = p.lambda * std::sqrt(static_cast<double>(n + 1));
    const double split = std::hypot(detuning, 2.0 * c);
    if (split == 0.0)
        throw NumericalError("jc_doublet_phase: doublet is degenerate (zero detuning and coupling)");

    DoubletPhases out;
    out.weight_lower = 0.5 * (1.0 + detuning / split);
    out.weight_upper = 0.5 * (1.0 - detuning / split);
    const double two_pi = 2.0 * std::numbers::pi;
    out.gamma_lower = two_pi * (static_cast<double>(n) + out.weight_lower);
    out.gamma_upper = two_pi * (static_cast<double>(n) + out.weight_upper);
    return out;
}

} // namespace rabibp
