// controversy.hpp - side-by-side comparison of the C-number loop phase and the
// full quantum ground-state Berry phase, with and without counter-rotating terms.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rabibp/berryphase.hpp"
#include "rabibp/classicalpath.hpp"
#include "rabibp/error.hpp"
#include "rabibp/model.hpp"
#include "rabibp/spectra.hpp"
#include "rabibp/sweep.hpp"
#include "rabibp/variational.hpp"

namespace rabibp {

struct ControversyRow {
    std::string label;             // "jc" or "rabi"
    double lambda_nr{0.0};
    double polar_angle{std::numeric_limits<double>::quiet_NaN()};  // of B at phi = 0
    bool loop_closed{false};
    double loop_phase_lower{std::numeric_limits<double>::quiet_NaN()};
    double loop_phase_upper{std::numeric_limits<double>::quiet_NaN()};
    double expected_loop_phase{std::numeric_limits<double>::quiet_NaN()};  // magnitude for the lower band
    double quantum_gamma{std::numeric_limits<double>::quiet_NaN()};
    double variational_gamma{std::numeric_limits<double>::quiet_NaN()};
    std::string error;
};

struct ControversyReport {
    double omega{1.0}, nu{1.0}, lambda{0.0}, alpha_mod{0.0};
    std::size_t steps{0};
    std::vector<ControversyRow> rows;
};

// Runs the C-number path for lambda_nr = 0 and lambda_nr = lambda at the same
// |alpha|, next to the exact ground-state phase. A failure in one case is
// recorded in its row and does not stop the other.
inline ControversyReport demo_controversy(double omega, double nu, double lambda, double alpha_mod,
                                          std::size_t steps, const TruncationPolicy& policy = {}) {
    ControversyReport report{omega, nu, lambda, alpha_mod, steps, {}};
    validate(TwoLevelParams{omega, nu, lambda, lambda});

    for (const bool rwa : {true, false}) {
        ControversyRow row;
        row.label = rwa ? "jc" : "rabi";
        row.lambda_nr = rwa ? 0.0 : lambda;
        const TwoLevelParams p{omega, nu, lambda, row.lambda_nr};
        try {
            const ClassicalField field{alpha_mod, 0.0};
            row.polar_angle = classical_hamiltonian(p, field, 0.0).polar_angle();
            const EigenPaths paths = eigenpath(p, field, steps);
            row.loop_closed = paths.lower.closed && paths.upper.closed;
            row.loop_phase_lower = path_geometric_phase(paths.lower);
            row.loop_phase_upper = path_geometric_phase(paths.upper);
            // JC: B has fixed polar angle, the band encircles a cap.
            // Rabi: B stays in the x-z plane, no enclosed area.
            row.expected_loop_phase = rwa ? solid_angle_phase(row.polar_angle) : 0.0;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        try {
            auto builder = [p](const FockTruncation& t) { return build_rabi_matrix(p, t); };
            SymmetryBuilder symmetry;
            if (rwa)
                symmetry = [](const FockTruncation& t) {
                    const SymmetricMatrix n = excitation_number_matrix(t);
                    std::vector<double> d(n.dim());
                    for (std::size_t i = 0; i < d.size(); ++i) d[i] = n(i, i);
                    return d;
                };
            else
                symmetry = [](const FockTruncation& t) {
                    const auto s = parity_signs(ModelKind::two_level, t);
                    return std::vector<double>(s.begin(), s.end());
                };
            const auto spectrum = converge_truncation(
                builder, [](std::span<const double> v, const std::vector<BasisLabel>& b) { return mean_photon(v, b); },
                policy, symmetry);
            row.quantum_gamma = berry_phase_formula(spectrum.result.eigenvector(0), spectrum.result.basis).gamma;
            if (!rwa)
                row.variational_gamma = solve_two_level(p).gamma;
        } catch (const std::exception& e) {
            row.error += (row.error.empty() ? "" : "; ") + std::string(e.what());
        }
        report.rows.push_back(row);
    }
    return report;
}

inline constexpr std::string_view controversy_csv_header =
    "model,lambda_nr,polar_angle,loop_closed,loop_phase_lower,loop_phase_upper,expected_loop_phase,"
    "quantum_gamma,variational_gamma,error";

inline std::string controversy_csv(const ControversyReport& r) {
    std::string out(controversy_csv_header);
    out += '\n';
    for (const auto& row : r.rows) {
        std::string err = row.error;
        for (auto& c : err)
            if (c == ',' || c == '\n') c = ';';
        out += row.label + ',' + format_number(row.lambda_nr) + ',' + format_number(row.polar_angle) + ',' +
               (row.loop_closed ? "true" : "false") + ',' + format_number(row.loop_phase_lower) + ',' +
               format_number(row.loop_phase_upper) + ',' + format_number(row.expected_loop_phase) + ',' +
               format_number(row.quantum_gamma) + ',' + format_number(row.variational_gamma) + ',' + err + '\n';
    }
    return out;
}

inline std::string controversy_text(const ControversyReport& r) {
    std::string out;
    out += "C-number loop phase vs quantum Berry phase\n";
    out += "  omega = " + format_number(r.omega) + ", nu = " + format_number(r.nu) + ", lambda = " +
           format_number(r.lambda) + ", |alpha| = " + format_number(r.alpha_mod) + ", steps = " +
           std::to_string(r.steps) + "\n\n";
    for (const auto& row : r.rows) {
        out += "[" + row.label + "] lambda_nr = " + format_number(row.lambda_nr) + "\n";
        if (!row.error.empty()) out += "  error: " + row.error + "\n";
        out += "  C-number path closed     : " + std::string(row.loop_closed ? "yes" : "no") + "\n";
        out += "  loop phase (lower band)  : " + format_number(row.loop_phase_lower) + "\n";
        out += "  loop phase (upper band)  : " + format_number(row.loop_phase_upper) + "\n";
        out += "  expected |lower|         : " + format_number(row.expected_loop_phase) + "\n";
        out += "  quantum ground-state BP  : " + format_number(row.quantum_gamma) + "\n";
        if (std::isfinite(row.variational_gamma))
            out += "  variational ground BP    : " + format_number(row.variational_gamma) + "\n";
        out += "\n";
    }
    return out;
}

} // namespace rabibp
