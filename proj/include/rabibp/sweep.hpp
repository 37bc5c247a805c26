// sweep.hpp - coupling sweeps comparing exact-diagonalization Berry phases
// with the variational closed forms, plus the CSV and key-value config formats
// used by the command-line tool.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <utility>
#include <vector>

#include "rabibp/berryphase.hpp"
#include "rabibp/error.hpp"
#include "rabibp/model.hpp"
#include "rabibp/spectra.hpp"
#include "rabibp/variational.hpp"

namespace rabibp {

enum class SweepModel { rabi, jc, lambda3 };

inline const char* to_string(SweepModel m) {
    switch (m) {
    case SweepModel::rabi: return "rabi";
    case SweepModel::jc: return "jc";
    case SweepModel::lambda3: return "lambda3";
    }
    return "?";
}

inline SweepModel parse_sweep_model(std::string_view s) {
    if (s == "rabi") return SweepModel::rabi;
    if (s == "jc") return SweepModel::jc;
    if (s == "lambda3") return SweepModel::lambda3;
    throw InputError("unknown model '" + std::string(s) + "' (expected rabi, jc or lambda3)");
}

struct SweepMethods {
    bool numeric{true};
    bool variational{true};
    bool oracle{false};
};

struct SweepConfig {
    SweepModel model{SweepModel::rabi};
    double g_start{0.0};
    double g_stop{2.0};
    std::size_t g_count{81};

    // omega doubles as omega0 for lambda3.
    double omega{1.0};
    double nu{1.0};
    std::optional<double> lambda_nr_ratio;  // defaults: 1 for rabi, 0 for jc
    double omega1{-0.25};
    double omega2{-0.25};
    double omega3{0.25};

    TruncationPolicy truncation{};
    SweepMethods methods{};
    std::size_t oracle_steps{4096};
    std::size_t threads{1};

    std::string out;
    std::string svg;
    bool strict{false};

    double ratio() const { return lambda_nr_ratio.value_or(model == SweepModel::jc ? 0.0 : 1.0); }
};

struct SweepRecord {
    double g{0.0};
    double gamma_numeric{std::numeric_limits<double>::quiet_NaN()};
    double gamma_variational{std::numeric_limits<double>::quiet_NaN()};
    double mean_photon{std::numeric_limits<double>::quiet_NaN()};
    std::size_t n_max{0};
    bool converged{true};
};

struct SweepOutcome {
    std::vector<SweepRecord> records;
    std::size_t unconverged{0};
    // max |pancharatnam - formula| over the grid, when the oracle ran
    std::optional<double> oracle_max_deviation;
};

// ---------------------------------------------------------------------------
// Number formatting: 12 significant digits, no locale involvement.

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s, std::string_view what) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw InputError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
    return v;
}

inline std::size_t parse_count(std::string_view s, std::string_view what) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw InputError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
    return v;
}

inline bool parse_bool(std::string_view s, std::string_view what) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw InputError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Config: `key = value` lines, `#` starts a comment.

using Settings = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::string normalize_key(std::string_view key) {
    std::string k(key);
    while (!k.empty() && k.front() == '-') k.erase(k.begin());
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

} // namespace detail

inline Settings parse_config_text(std::string_view text) {
    Settings out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InputError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = detail::trim(line.substr(0, eq));
        auto value = detail::trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw InputError("config line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(detail::normalize_key(key), std::string(value));
    }
    return out;
}

inline Settings load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

inline SweepMethods parse_methods(std::string_view list) {
    SweepMethods m{false, false, false};
    while (!list.empty()) {
        const auto comma = list.find(',');
        const auto item = detail::trim(list.substr(0, comma));
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
        if (item == "numeric") m.numeric = true;
        else if (item == "variational") m.variational = true;
        else if (item == "oracle") m.oracle = true;
        else if (!item.empty())
            throw InputError("unknown method '" + std::string(item) + "'");
    }
    return m;
}

inline void apply_setting(SweepConfig& c, std::string_view raw_key, std::string_view value) {
    const std::string key = detail::normalize_key(raw_key);
    if (key == "model") c.model = parse_sweep_model(value);
    else if (key == "omega" || key == "omega0") c.omega = parse_number(value, key);
    else if (key == "nu") c.nu = parse_number(value, key);
    else if (key == "lambda-nr-ratio") c.lambda_nr_ratio = parse_number(value, key);
    else if (key == "omega1") c.omega1 = parse_number(value, key);
    else if (key == "omega2") c.omega2 = parse_number(value, key);
    else if (key == "omega3") c.omega3 = parse_number(value, key);
    else if (key == "g-start") c.g_start = parse_number(value, key);
    else if (key == "g-stop") c.g_stop = parse_number(value, key);
    else if (key == "g-count") c.g_count = parse_count(value, key);
    else if (key == "tol") c.truncation.tol = parse_number(value, key);
    else if (key == "n-start") c.truncation.n_start = parse_count(value, key);
    else if (key == "n-step") c.truncation.n_step = parse_count(value, key);
    else if (key == "n-cap") c.truncation.n_cap = parse_count(value, key);
    else if (key == "methods") c.methods = parse_methods(value);
    else if (key == "oracle-steps") c.oracle_steps = parse_count(value, key);
    else if (key == "threads") c.threads = parse_count(value, key);
    else if (key == "out") c.out = std::string(value);
    else if (key == "svg") c.svg = std::string(value);
    else if (key == "strict") c.strict = parse_bool(value, key);
    else throw InputError("unknown setting '" + key + "'");
}

inline void apply_settings(SweepConfig& c, const Settings& settings) {
    for (const auto& [k, v] : settings)
        apply_setting(c, k, v);
}

inline void validate(const SweepConfig& c) {
    if (!(c.g_start >= 0.0)) throw InputError("sweep: g-start must be >= 0");
    if (!(c.g_stop > c.g_start)) throw InputError("sweep: g-stop must exceed g-start");
    if (c.g_count < 2) throw InputError("sweep: g-count must be >= 2");
    if (!(c.truncation.tol > 0.0)) throw InputError("sweep: tol must be > 0");
    if (c.truncation.n_cap < 1 || c.truncation.n_start < 1 || c.truncation.n_step < 1)
        throw InputError("sweep: truncation sizes must be >= 1");
    if (c.oracle_steps < 8) throw InputError("sweep: oracle-steps must be >= 8");
    if (c.threads < 1) throw InputError("sweep: threads must be >= 1");
    const double r = c.ratio();
    if (!(r >= 0.0 && r <= 1.0)) throw InputError("sweep: lambda-nr-ratio must lie in [0, 1]");
    if (c.model == SweepModel::jc && r != 0.0)
        throw InputError("sweep: the jc model has lambda-nr-ratio = 0");
    if (c.model == SweepModel::lambda3)
        validate(LambdaParams{c.omega, c.omega1, c.omega2, c.omega3, 0.0});
    else
        validate(TwoLevelParams{c.omega, c.nu, 0.0, 0.0});
}

inline std::vector<double> coupling_grid(const SweepConfig& c) {
    std::vector<double> g(c.g_count);
    const double span = c.g_stop - c.g_start;
    for (std::size_t i = 0; i < c.g_count; ++i)
        g[i] = c.g_start + span * static_cast<double>(i) / static_cast<double>(c.g_count - 1);
    g.back() = c.g_stop;
    return g;
}

namespace detail {

inline double mean_photon_observable(std::span<const double> v, const std::vector<BasisLabel>& basis) {
    return mean_photon(v, basis);
}

inline std::vector<double> to_double(const std::vector<int>& v) { return {v.begin(), v.end()}; }

struct PointResult {
    SweepRecord record;
    std::optional<double> oracle_deviation;
};

inline PointResult sweep_point(const SweepConfig& c, double g) {
    PointResult out;
    out.record.g = g;

    MatrixBuilder builder;
    SymmetryBuilder symmetry;
    std::optional<double> variational;
    if (c.model == SweepModel::lambda3) {
        const LambdaParams p{c.omega, c.omega1, c.omega2, c.omega3, g * c.omega};
        builder = [p](const FockTruncation& t) { return build_lambda_matrix(p, t); };
        symmetry = [](const FockTruncation& t) { return to_double(parity_signs(ModelKind::lambda_three_level, t)); };
        if (c.methods.variational && p.omega1 == p.omega2)
            variational = solve_lambda(p).gamma;
    } else {
        const double lambda = g * c.omega;
        const TwoLevelParams p{c.omega, c.nu, lambda, c.ratio() * lambda};
        builder = [p](const FockTruncation& t) { return build_rabi_matrix(p, t); };
        if (p.is_jc())
            symmetry = [](const FockTruncation& t) {
                std::vector<double> n(t.dim(2));
                for (std::size_t i = 0; i < n.size(); ++i)
                    n[i] = static_cast<double>(i / 2 + i % 2);
                return n;
            };
        else
            symmetry = [](const FockTruncation& t) { return to_double(parity_signs(ModelKind::two_level, t)); };
        if (c.methods.variational && p.is_standard_rabi())
            variational = solve_two_level(p).gamma;
    }
    if (variational)
        out.record.gamma_variational = *variational;

    if (c.methods.numeric || c.methods.oracle) {
        const ConvergedSpectrum spectrum = converge_truncation(builder, mean_photon_observable, c.truncation, symmetry);
        const BerryResult formula = berry_phase_formula(spectrum.result.eigenvector(0), spectrum.result.basis);
        out.record.mean_photon = formula.mean_photon;
        out.record.gamma_numeric = formula.gamma;
        out.record.n_max = spectrum.result.n_max_used;
        out.record.converged = spectrum.result.converged;
        if (c.methods.oracle) {
            const BerryResult loop = pancharatnam_loop(spectrum.result.eigenvector(0), spectrum.result.basis, c.oracle_steps);
            out.oracle_deviation = std::abs(loop.gamma - formula.gamma);
        }
        if (!c.methods.numeric) {
            out.record.mean_photon = std::numeric_limits<double>::quiet_NaN();
            out.record.gamma_numeric = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return out;
}

} // namespace detail

// Grid points are independent; with threads > 1 they are distributed over
// workers, and records are always returned in grid order.
inline SweepOutcome run_sweep(const SweepConfig& c) {
    validate(c);
    const std::vector<double> grid = coupling_grid(c);
    std::vector<detail::PointResult> points(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());

    auto work = [&](std::size_t worker, std::size_t workers) {
        for (std::size_t i = worker; i < grid.size(); i += workers) {
            try {
                points[i] = detail::sweep_point(c, grid[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min(c.threads, grid.size());
    if (workers <= 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work, w, workers);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    SweepOutcome out;
    for (auto& p : points) {
        if (!p.record.converged) ++out.unconverged;
        if (p.oracle_deviation)
            out.oracle_max_deviation = std::max(out.oracle_max_deviation.value_or(0.0), *p.oracle_deviation);
        out.records.push_back(p.record);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view csv_header = "g,gamma_numeric,gamma_variational,mean_photon,n_max,converged";

inline std::string to_csv(const std::vector<SweepRecord>& records) {
    std::string out(csv_header);
    out += '\n';
    for (const auto& r : records) {
        out += format_number(r.g) + ',' + format_number(r.gamma_numeric) + ',' +
               format_number(r.gamma_variational) + ',' + format_number(r.mean_photon) + ',' +
               std::to_string(r.n_max) + ',' + (r.converged ? "true" : "false") + '\n';
    }
    return out;
}

inline std::vector<SweepRecord> parse_csv(std::string_view text) {
    std::vector<SweepRecord> records;
    bool header = true;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (header) {
            if (line != csv_header)
                throw InputError("csv: unexpected header '" + std::string(line) + "'");
            header = false;
            continue;
        }
        if (line.empty())
            continue;

        std::vector<std::string_view> f;
        while (true) {
            const auto comma = line.find(',');
            f.push_back(line.substr(0, comma));
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        if (f.size() != 6)
            throw InputError("csv line " + std::to_string(line_no) + ": expected 6 fields");
        SweepRecord r;
        r.g = parse_number(f[0], "g");
        r.gamma_numeric = parse_number(f[1], "gamma_numeric");
        r.gamma_variational = parse_number(f[2], "gamma_variational");
        r.mean_photon = parse_number(f[3], "mean_photon");
        r.n_max = parse_count(f[4], "n_max");
        r.converged = parse_bool(f[5], "converged");
        records.push_back(r);
    }
    if (header)
        throw InputError("csv: missing header");
    return records;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace rabibp
