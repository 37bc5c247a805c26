// rabibp - command-line front end
//
//   rabibp sweep             coupling sweep -> CSV (+ optional SVG)
//   rabibp demo-controversy  C-number loop phase vs quantum Berry phase
//   rabibp variational       closed-form variational ground state
//   rabibp diag              one-shot exact diagonalization dump
//   rabibp plot              sweep CSV -> SVG
//
// Exit status: 0 success, 1 input or I/O error, 2 non-convergence under --strict.

#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rabibp/rabibp.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_unconverged = 2;

// Options whose values are forwarded verbatim as sweep settings, so a config
// file and the command line go through the same parser.
const std::vector<std::pair<const char*, const char*>> sweep_flags = {
    {"model", "rabi | jc | lambda3"},
    {"omega", "field frequency (omega0 for lambda3)"},
    {"nu", "atomic frequency (two-level models)"},
    {"lambda-nr-ratio", "lambda_NR / lambda in [0, 1]"},
    {"omega1", "lambda3: level |1> energy"},
    {"omega2", "lambda3: level |2> energy"},
    {"omega3", "lambda3: level |3> energy"},
    {"g-start", "first coupling g = lambda/omega (eta/omega0 for lambda3)"},
    {"g-stop", "last coupling"},
    {"g-count", "number of grid points"},
    {"tol", "truncation convergence tolerance on <a^+a>"},
    {"n-start", "initial Fock cutoff"},
    {"n-step", "initial cutoff increment (doubles after each failure)"},
    {"n-cap", "largest Fock cutoff"},
    {"methods", "comma list of numeric, variational, oracle"},
    {"oracle-steps", "loop steps for the discrete-loop oracle"},
    {"threads", "worker threads over grid points"},
    {"out", "CSV output path"},
    {"svg", "SVG output path"},
};

void print_table_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        std::cout << (i ? "  " : "") << cells[i];
    std::cout << '\n';
}

int run_sweep_command(const std::string& config_path, const std::map<std::string, CLI::Option*>& options,
                      const std::map<std::string, std::string>& values, bool strict) {
    rabibp::SweepConfig config;
    if (!config_path.empty())
        rabibp::apply_settings(config, rabibp::load_config_file(config_path));
    for (const auto& [name, opt] : options)
        if (opt->count() > 0)
            rabibp::apply_setting(config, name, values.at(name));
    if (strict)
        config.strict = true;
    if (config.out.empty())
        throw rabibp::InputError("sweep: --out <csv> is required");

    const rabibp::SweepOutcome outcome = rabibp::run_sweep(config);
    rabibp::write_text_file(config.out, rabibp::to_csv(outcome.records));
    if (!config.svg.empty()) {
        rabibp::PlotStyle style;
        style.title = std::string("Ground-state Berry phase (") + rabibp::to_string(config.model) + ")";
        style.x_label = config.model == rabibp::SweepModel::lambda3 ? "g' = eta/omega0" : "g = lambda/omega";
        rabibp::write_text_file(config.svg, rabibp::emit_plot(outcome.records, style));
    }

    std::cout << "wrote " << outcome.records.size() << " records to " << config.out << '\n';
    if (outcome.oracle_max_deviation)
        std::cout << "oracle max |loop - formula| = " << rabibp::format_number(*outcome.oracle_max_deviation) << '\n';
    if (outcome.unconverged > 0) {
        std::cerr << outcome.unconverged << " grid point(s) did not converge within n-cap\n";
        if (config.strict)
            return exit_unconverged;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berry phases of Rabi, Jaynes-Cummings and Lambda-type cavity models"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "coupling sweep of the ground-state Berry phase");
    std::map<std::string, std::string> sweep_values;
    std::map<std::string, CLI::Option*> sweep_options;
    for (const auto& [name, help] : sweep_flags) {
        auto& slot = sweep_values[name];
        sweep_options[name] = sweep->add_option(std::string("--") + name, slot, help);
    }
    std::string sweep_config;
    bool sweep_strict = false;
    sweep->add_option("--config", sweep_config, "key = value config file; flags override it");
    sweep->add_flag("--strict", sweep_strict, "exit with status 2 if any point is unconverged");

    // demo-controversy
    auto* demo = app.add_subcommand("demo-controversy", "C-number loop phase vs exact Berry phase");
    double d_omega = 1.0, d_nu = 1.0, d_lambda = 0.5, d_alpha = 1.0;
    std::size_t d_steps = 1024;
    std::string d_out;
    demo->add_option("--omega", d_omega, "field frequency");
    demo->add_option("--nu", d_nu, "atomic frequency");
    demo->add_option("--lambda", d_lambda, "rotating coupling");
    demo->add_option("--alpha", d_alpha, "C-number field modulus |alpha|");
    demo->add_option("--steps", d_steps, "loop samples");
    demo->add_option("--out", d_out, "CSV report path");

    // variational
    auto* var = app.add_subcommand("variational", "closed-form coherent-state ground state");
    std::string v_model = "rabi";
    double v_omega = 1.0, v_nu = 1.0, v_lambda = 1.0;
    double v_omega1 = -0.25, v_omega2 = -0.25, v_omega3 = 0.25, v_eta = 0.5;
    var->add_option("--model", v_model, "rabi | lambda3");
    var->add_option("--omega", v_omega, "field frequency (omega0 for lambda3)");
    var->add_option("--nu", v_nu, "atomic frequency");
    var->add_option("--lambda", v_lambda, "coupling (lambda = lambda_NR)");
    var->add_option("--omega1", v_omega1, "lambda3: level |1>");
    var->add_option("--omega2", v_omega2, "lambda3: level |2>");
    var->add_option("--omega3", v_omega3, "lambda3: level |3>");
    var->add_option("--eta", v_eta, "lambda3: coupling");

    // diag
    auto* diag = app.add_subcommand("diag", "diagonalize one truncated Hamiltonian and list eigenstates");
    std::string g_model = "rabi";
    double g_omega = 1.0, g_nu = 1.0, g_lambda = 0.5;
    double g_lambda_nr = -1.0;
    double g_omega1 = -0.25, g_omega2 = -0.25, g_omega3 = 0.25, g_eta = 0.5;
    std::size_t g_nmax = 40, g_states = 6;
    diag->add_option("--model", g_model, "rabi | jc | lambda3");
    diag->add_option("--omega", g_omega, "field frequency (omega0 for lambda3)");
    diag->add_option("--nu", g_nu, "atomic frequency");
    diag->add_option("--lambda", g_lambda, "rotating coupling");
    diag->add_option("--lambda-nr", g_lambda_nr, "counter-rotating coupling (default: lambda for rabi, 0 for jc)");
    diag->add_option("--omega1", g_omega1, "lambda3: level |1>");
    diag->add_option("--omega2", g_omega2, "lambda3: level |2>");
    diag->add_option("--omega3", g_omega3, "lambda3: level |3>");
    diag->add_option("--eta", g_eta, "lambda3: coupling");
    diag->add_option("--n-max", g_nmax, "Fock cutoff");
    diag->add_option("--states", g_states, "number of lowest eigenstates to list");

    // plot
    auto* plot = app.add_subcommand("plot", "render a sweep CSV as SVG");
    std::string p_in, p_svg, p_title = "Ground-state Berry phase";
    plot->add_option("--in", p_in, "sweep CSV")->required();
    plot->add_option("--svg", p_svg, "SVG output path")->required();
    plot->add_option("--title", p_title, "plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*sweep)
            return run_sweep_command(sweep_config, sweep_options, sweep_values, sweep_strict);

        if (*demo) {
            const auto report = rabibp::demo_controversy(d_omega, d_nu, d_lambda, d_alpha, d_steps);
            std::cout << rabibp::controversy_text(report);
            if (!d_out.empty())
                rabibp::write_text_file(d_out, rabibp::controversy_csv(report));
            return exit_ok;
        }

        if (*var) {
            rabibp::VariationalSolution s;
            if (v_model == "rabi") {
                s = rabibp::solve_two_level({v_omega, v_nu, v_lambda, v_lambda});
                std::cout << "lambda_c     = " << rabibp::format_number(s.critical_coupling) << '\n';
            } else if (v_model == "lambda3") {
                s = rabibp::solve_lambda({v_omega, v_omega1, v_omega2, v_omega3, v_eta});
                std::cout << "F            = " << rabibp::format_number(s.critical_coupling) << '\n';
            } else {
                throw rabibp::InputError("variational: unknown model '" + v_model + "'");
            }
            std::cout << "regime       = " << rabibp::to_string(s.regime) << '\n'
                      << "amplitude    = " << rabibp::format_number(s.alpha_gs) << '\n'
                      << "mean photon  = " << rabibp::format_number(s.mean_photon()) << '\n'
                      << "energy       = " << rabibp::format_number(s.energy) << '\n'
                      << "gamma        = " << rabibp::format_number(s.gamma) << '\n';
            if (s.c_plus && s.c_minus)
                std::cout << "C+ (|e>)     = " << rabibp::format_number(*s.c_plus) << '\n'
                          << "C- (|g>)     = " << rabibp::format_number(*s.c_minus) << '\n';
            return exit_ok;
        }

        if (*diag) {
            rabibp::SymmetricMatrix h;
            rabibp::ModelKind kind = rabibp::ModelKind::two_level;
            const rabibp::FockTruncation trunc{g_nmax};
            if (g_model == "lambda3") {
                kind = rabibp::ModelKind::lambda_three_level;
                h = rabibp::build_lambda_matrix({g_omega, g_omega1, g_omega2, g_omega3, g_eta}, trunc);
            } else if (g_model == "rabi" || g_model == "jc") {
                const double lnr = g_lambda_nr >= 0.0 ? g_lambda_nr : (g_model == "jc" ? 0.0 : g_lambda);
                h = rabibp::build_rabi_matrix({g_omega, g_nu, g_lambda, lnr}, trunc);
            } else {
                throw rabibp::InputError("diag: unknown model '" + g_model + "'");
            }
            rabibp::SpectralResult r = rabibp::eigh(h);
            const auto signs = rabibp::parity_signs(kind, trunc);
            if (g_model == "jc") {
                // excitation number is finer than parity and orders |0,g> first
                const auto n = rabibp::excitation_number_matrix(trunc);
                std::vector<double> d(n.dim());
                for (std::size_t i = 0; i < d.size(); ++i) d[i] = n(i, i);
                rabibp::resolve_degeneracy(r, d);
            } else {
                rabibp::resolve_degeneracy(r, std::vector<double>(signs.begin(), signs.end()));
            }

            std::cout << "dim = " << r.dim() << ", residual = " << rabibp::format_number(r.residual)
                      << ", converged = " << (r.converged ? "yes" : "no") << '\n';
            print_table_row({"k", "energy", "mean_photon", "gamma", "parity", "largest component"});
            for (std::size_t k = 0; k < std::min(g_states, r.dim()); ++k) {
                const auto v = r.eigenvector(k);
                const auto berry = rabibp::berry_phase_formula(v, r.basis);
                double parity = 0.0;
                std::size_t big = 0;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    parity += signs[i] * v[i] * v[i];
                    if (std::abs(v[i]) > std::abs(v[big])) big = i;
                }
                print_table_row({std::to_string(k), rabibp::format_number(r.eigenvalues[k]),
                                 rabibp::format_number(berry.mean_photon), rabibp::format_number(berry.gamma),
                                 rabibp::format_number(parity), rabibp::to_string(r.basis[big], kind)});
            }
            return r.converged ? exit_ok : exit_unconverged;
        }

        if (*plot) {
            const auto records = rabibp::parse_csv(rabibp::read_text_file(p_in));
            rabibp::PlotStyle style;
            style.title = p_title;
            rabibp::write_text_file(p_svg, rabibp::emit_plot(records, style));
            return exit_ok;
        }
    } catch (const rabibp::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const rabibp::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_unconverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
