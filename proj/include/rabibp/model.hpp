// model.hpp - truncated Fock-space matrices for the generalized Rabi model
// and the Lambda-type three-level atom in a single cavity mode.
//
// Units: hbar = 1, all frequencies share one energy unit.
// Basis ordering is photon-major: index = photon_n * levels + atomic_level.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rabibp/error.hpp"

namespace rabibp {

// H = omega a^+a + (nu/2) sz + lambda (s+ a + s- a^+) + lambda_nr (s+ a^+ + s- a)
struct TwoLevelParams {
    double omega{1.0};
    double nu{1.0};
    double lambda{0.0};
    double lambda_nr{0.0};

    bool is_jc() const noexcept { return lambda_nr == 0.0; }
    bool is_standard_rabi() const noexcept { return lambda_nr == lambda; }
};

// H = omega0 b^+b + sum_l omega_l |l><l| + eta (b + b^+)(|1><3| + |2><3| + h.c.)
struct LambdaParams {
    double omega0{1.0};
    double omega1{-0.25};
    double omega2{-0.25};
    double omega3{0.25};
    double eta{0.0};
};

struct FockTruncation {
    std::size_t n_max{1};

    std::size_t dim(std::size_t levels) const noexcept { return levels * (n_max + 1); }
};

enum class ModelKind { two_level, lambda_three_level };

inline std::size_t level_count(ModelKind kind) noexcept {
    return kind == ModelKind::two_level ? 2 : 3;
}

// atomic_level: two-level uses 0 = g, 1 = e; Lambda uses 0, 1, 2 for |1>, |2>, |3>.
struct BasisLabel {
    std::size_t photon_n{0};
    int atomic_level{0};

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

inline std::string to_string(const BasisLabel& b, ModelKind kind) {
    std::string level;
    if (kind == ModelKind::two_level)
        level = b.atomic_level == 0 ? "g" : "e";
    else
        level = std::to_string(b.atomic_level + 1);
    return "|" + std::to_string(b.photon_n) + "," + level + ">";
}

// Dense real symmetric matrix. Both triangles are stored and always written
// together, so (i,j) and (j,i) are bitwise equal. `basis` is empty for
// matrices that are not tied to a Fock-space model.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}

    std::size_t dim() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * dim_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        if (!std::isfinite(v))
            throw InputError("SymmetricMatrix: non-finite entry");
        entries_[i * dim_ + j] = v;
        entries_[j * dim_ + i] = v;
    }

    // Row-major, full storage.
    const std::vector<double>& data() const noexcept { return entries_; }

    // Max-row-sum norm.
    double inf_norm() const noexcept {
        double best = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < dim_; ++j)
                row += std::abs(entries_[i * dim_ + j]);
            best = std::max(best, row);
        }
        return best;
    }

    std::vector<BasisLabel> basis;

private:
    std::size_t dim_{0};
    std::vector<double> entries_;
};

namespace detail {

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw InputError(std::string("non-finite parameter: ") + name);
}

inline void require_truncation(const FockTruncation& trunc) {
    if (trunc.n_max < 1)
        throw InputError("FockTruncation: n_max must be >= 1");
}

} // namespace detail

inline void validate(const TwoLevelParams& p) {
    detail::require_finite(p.omega, "omega");
    detail::require_finite(p.nu, "nu");
    detail::require_finite(p.lambda, "lambda");
    detail::require_finite(p.lambda_nr, "lambda_nr");
    if (!(p.omega > 0.0)) throw InputError("TwoLevelParams: omega must be > 0");
    if (!(p.nu > 0.0)) throw InputError("TwoLevelParams: nu must be > 0");
    if (p.lambda < 0.0) throw InputError("TwoLevelParams: lambda must be >= 0");
    if (p.lambda_nr < 0.0) throw InputError("TwoLevelParams: lambda_nr must be >= 0");
}

inline void validate(const LambdaParams& p) {
    detail::require_finite(p.omega0, "omega0");
    detail::require_finite(p.omega1, "omega1");
    detail::require_finite(p.omega2, "omega2");
    detail::require_finite(p.omega3, "omega3");
    detail::require_finite(p.eta, "eta");
    if (!(p.omega0 > 0.0)) throw InputError("LambdaParams: omega0 must be > 0");
    if (p.eta < 0.0) throw InputError("LambdaParams: eta must be >= 0");
    if (!(p.omega3 > p.omega1 && p.omega3 > p.omega2))
        throw InputError("LambdaParams: |3> must lie above |1> and |2>");
}

inline std::vector<BasisLabel> make_basis(ModelKind kind, const FockTruncation& trunc) {
    const std::size_t levels = level_count(kind);
    std::vector<BasisLabel> basis;
    basis.reserve(trunc.dim(levels));
    for (std::size_t n = 0; n <= trunc.n_max; ++n)
        for (std::size_t l = 0; l < levels; ++l)
            basis.push_back({n, static_cast<int>(l)});
    return basis;
}

inline SymmetricMatrix build_rabi_matrix(const TwoLevelParams& p, const FockTruncation& trunc) {
    validate(p);
    detail::require_truncation(trunc);

    const auto g = [](std::size_t n) { return 2 * n; };
    const auto e = [](std::size_t n) { return 2 * n + 1; };

    SymmetricMatrix h(trunc.dim(2));
    h.basis = make_basis(ModelKind::two_level, trunc);
    for (std::size_t n = 0; n <= trunc.n_max; ++n) {
        const double field = static_cast<double>(n) * p.omega;
        h.set(g(n), g(n), field - 0.5 * p.nu);
        h.set(e(n), e(n), field + 0.5 * p.nu);
        if (n == trunc.n_max)
            continue;
        const double root = std::sqrt(static_cast<double>(n + 1));
        // s+ a : |n+1,g> -> |n,e>
        if (p.lambda != 0.0) h.set(e(n), g(n + 1), p.lambda * root);
        // s+ a^+ : |n,g> -> |n+1,e>
        if (p.lambda_nr != 0.0) h.set(e(n + 1), g(n), p.lambda_nr * root);
    }
    return h;
}

inline SymmetricMatrix build_lambda_matrix(const LambdaParams& p, const FockTruncation& trunc) {
    validate(p);
    detail::require_truncation(trunc);

    const auto idx = [](std::size_t n, std::size_t level) { return 3 * n + level; };
    const double level_energy[3] = {p.omega1, p.omega2, p.omega3};

    SymmetricMatrix h(trunc.dim(3));
    h.basis = make_basis(ModelKind::lambda_three_level, trunc);
    for (std::size_t n = 0; n <= trunc.n_max; ++n) {
        for (std::size_t l = 0; l < 3; ++l)
            h.set(idx(n, l), idx(n, l), static_cast<double>(n) * p.omega0 + level_energy[l]);
        if (n == trunc.n_max || p.eta == 0.0)
            continue;
        const double c = p.eta * std::sqrt(static_cast<double>(n + 1));
        for (std::size_t lower : {0u, 1u}) {
            h.set(idx(n, lower), idx(n + 1, 2), c);
            h.set(idx(n + 1, lower), idx(n, 2), c);
        }
    }
    return h;
}

// Diagonal of the Z2 parity operator in the model basis.
inline std::vector<int> parity_signs(ModelKind kind, const FockTruncation& trunc) {
    const std::size_t levels = level_count(kind);
    const int upper = static_cast<int>(levels) - 1;
    std::vector<int> signs;
    signs.reserve(trunc.dim(levels));
    for (std::size_t n = 0; n <= trunc.n_max; ++n) {
        const int photon_sign = n % 2 == 0 ? 1 : -1;
        for (std::size_t l = 0; l < levels; ++l)
            signs.push_back(static_cast<int>(l) == upper ? -photon_sign : photon_sign);
    }
    return signs;
}

// a^+a + s+s- for the two-level basis; conserved by the JC Hamiltonian.
inline SymmetricMatrix excitation_number_matrix(const FockTruncation& trunc) {
    detail::require_truncation(trunc);
    SymmetricMatrix m(trunc.dim(2));
    m.basis = make_basis(ModelKind::two_level, trunc);
    for (std::size_t n = 0; n <= trunc.n_max; ++n) {
        m.set(2 * n, 2 * n, static_cast<double>(n));
        m.set(2 * n + 1, 2 * n + 1, static_cast<double>(n + 1));
    }
    return m;
}

} // namespace rabibp
