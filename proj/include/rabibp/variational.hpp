// variational.hpp - coherent-state variational ground states
//
// The field is replaced by a coherent state |alpha> and the averaged
// Hamiltonian <alpha|H|alpha> is diagonalized in the atomic space. Minimizing
// the lowest branch over alpha gives the semiclassical ground state; its
// Berry phase under the photon-phase loop is 2 pi |alpha_gs|^2.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <algorithm>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "rabibp/error.hpp"
#include "rabibp/model.hpp"

namespace rabibp {

enum class Regime { normal, superradiant };

inline const char* to_string(Regime r) { return r == Regime::normal ? "normal" : "superradiant"; }

struct VariationalSolution {
    double alpha_gs{0.0};           // coherent amplitude (beta_gs for the Lambda model)
    double energy{0.0};
    double gamma{0.0};
    Regime regime{Regime::normal};
    std::optional<double> c_plus;   // two-level only: amplitude of |e>
    std::optional<double> c_minus;  // two-level only: amplitude of |g>
    double critical_coupling{0.0};  // lambda_c, or F for the Lambda model

    double mean_photon() const { return alpha_gs * alpha_gs; }
};

// E_-(alpha) = omega |alpha|^2 - sqrt(nu^2/4 + lambda^2 (alpha + alpha*)^2)
inline double effective_energy_two_level(const TwoLevelParams& p, std::complex<double> alpha) {
    const double re2 = 2.0 * alpha.real();
    return p.omega * std::norm(alpha) - std::sqrt(0.25 * p.nu * p.nu + p.lambda * p.lambda * re2 * re2);
}

inline double effective_energy_two_level(const TwoLevelParams& p, double alpha) {
    return effective_energy_two_level(p, std::complex<double>(alpha, 0.0));
}

inline double critical_coupling_two_level(const TwoLevelParams& p) {
    if (!(p.omega > 0.0) || !(p.nu > 0.0))
        throw InputError("critical_coupling_two_level: omega and nu must be > 0");
    return 0.5 * std::sqrt(p.omega * p.nu);
}

inline VariationalSolution solve_two_level(const TwoLevelParams& p) {
    validate(p);
    if (!p.is_standard_rabi())
        throw InputError("solve_two_level: closed form only covers the standard Rabi model (lambda_nr = lambda)");

    VariationalSolution s;
    s.critical_coupling = critical_coupling_two_level(p);
    if (p.lambda <= s.critical_coupling) {
        s.alpha_gs = 0.0;
        s.energy = -0.5 * p.nu;
        s.gamma = 0.0;
        s.regime = Regime::normal;
        s.c_plus = 0.0;
        s.c_minus = 1.0;
        return s;
    }

    const double l2 = p.lambda * p.lambda;
    const double wn = p.omega * p.nu;
    s.alpha_gs = std::sqrt(l2 / (p.omega * p.omega) - p.nu * p.nu / (16.0 * l2));
    s.energy = -l2 / p.omega - p.omega * p.nu * p.nu / (16.0 * l2);
    s.gamma = 2.0 * std::numbers::pi * s.alpha_gs * s.alpha_gs;
    s.regime = Regime::superradiant;
    s.c_plus = std::sqrt(2.0 * l2 - 0.5 * wn) / (2.0 * p.lambda);
    s.c_minus = std::sqrt(2.0 * l2 + 0.5 * wn) / (2.0 * p.lambda);
    return s;
}

struct LambdaBranches {
    double minus{0.0};
    double zero{0.0};
    double plus{0.0};
};

// Eigenvalues of <beta|H|beta> for omega1 = omega2, beta = u + i v.
inline LambdaBranches lambda_energy_branches(const LambdaParams& p, std::complex<double> beta) {
    const double u = beta.real();
    const double field = p.omega0 * std::norm(beta);
    const double split = p.omega1 - p.omega3;
    const double root = std::sqrt(0.25 * split * split + 8.0 * p.eta * p.eta * u * u);
    const double centre = field + 0.5 * (p.omega1 + p.omega3);
    return {centre - root, field + p.omega1, centre + root};
}

inline double effective_energy_lambda(const LambdaParams& p, double u) {
    return lambda_energy_branches(p, std::complex<double>(u, 0.0)).minus;
}

// F = sqrt(omega0 (omega3 - omega1) / 8)
inline double critical_coupling_lambda(const LambdaParams& p) {
    if (!(p.omega0 > 0.0) || !(p.omega3 > p.omega1))
        throw InputError("critical_coupling_lambda: need omega0 > 0 and omega3 > omega1");
    return std::sqrt(p.omega0 * (p.omega3 - p.omega1) / 8.0);
}

inline VariationalSolution solve_lambda(const LambdaParams& p) {
    if (p.omega1 != p.omega2)
        throw InputError("solve_lambda: closed form requires omega1 = omega2");
    if (!(p.omega3 > p.omega1))
        throw InputError("solve_lambda: invalid level ordering, need omega3 > omega1");
    validate(p);

    VariationalSolution s;
    s.critical_coupling = critical_coupling_lambda(p);
    if (p.eta <= s.critical_coupling) {
        s.energy = p.omega1;
        return s;
    }

    const double e2 = p.eta * p.eta;
    const double split2 = (p.omega1 - p.omega3) * (p.omega1 - p.omega3);
    s.alpha_gs = std::sqrt(2.0 * e2 / (p.omega0 * p.omega0) - split2 / (32.0 * e2));
    s.energy = -2.0 * e2 / p.omega0 - p.omega0 * split2 / (32.0 * e2) + 0.5 * (p.omega1 + p.omega3);
    s.gamma = 2.0 * std::numbers::pi * s.alpha_gs * s.alpha_gs;
    s.regime = Regime::superradiant;
    return s;
}

struct Minimum {
    double x{0.0};
    double value{0.0};
};

// Grid scan over [lo, hi] followed by golden-section refinement of the
// bracketing cells and a final parabolic step. Throws if the lowest grid
// point sits on the bracket edge.
inline Minimum numeric_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                std::size_t grid_points = 1024) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InputError("numeric_minimize: need a finite bracket with lo < hi");
    if (!(tol > 0.0))
        throw InputError("numeric_minimize: tol must be > 0");
    grid_points = std::max<std::size_t>(grid_points, 512);

    const double h = (hi - lo) / static_cast<double>(grid_points);
    std::size_t best = 0;
    double best_value = f(lo);
    for (std::size_t i = 1; i <= grid_points; ++i) {
        const double v = f(lo + h * static_cast<double>(i));
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    if (best == 0 || best == grid_points)
        throw NumericalError("numeric_minimize: minimum at bracket edge, widen the bracket");

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo + h * static_cast<double>(best - 1);
    double b = lo + h * static_cast<double>(best + 1);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    Minimum m{0.5 * (a + b), 0.0};
    m.value = f(m.x);

    // Golden section stalls near sqrt(eps) because of rounding in f; one
    // parabola through points a fixed distance apart recovers the digits.
    const double step = 1e-5 * std::max(1.0, std::abs(m.x));
    const double fl = f(m.x - step);
    const double fr = f(m.x + step);
    const double curvature = fl - 2.0 * m.value + fr;
    if (curvature > 0.0) {
        const double shift = 0.5 * step * (fl - fr) / curvature;
        if (std::abs(shift) <= step) {
            const double x = m.x + shift;
            const double v = f(x);
            if (v <= m.value + 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v)))
                m = {x, v};
        }
    }
    return m;
}

} // namespace rabibp
