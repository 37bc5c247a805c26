// spectra.hpp - dense symmetric eigensolver and truncation convergence control
//
// eigh() reduces to tridiagonal form with Householder reflections and then
// runs implicit-shift QL, accumulating the eigenvectors (the classic
// tred2/tql2 pair).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rabibp/error.hpp"
#include "rabibp/model.hpp"

namespace rabibp {

struct SpectralResult {
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> eigenvectors;  // column k occupies [k*dim, (k+1)*dim)
    std::vector<BasisLabel> basis;
    std::size_t n_max_used{0};
    bool converged{false};
    double residual{0.0};              // max_k ||H v_k - E_k v_k||_inf

    std::size_t dim() const noexcept { return eigenvalues.size(); }

    std::span<const double> eigenvector(std::size_t k) const {
        return {eigenvectors.data() + k * dim(), dim()};
    }
};

struct GroundState {
    double energy{0.0};
    std::vector<double> state;
};

namespace detail {

// Row-major n x n scratch matrix.
struct Dense {
    std::size_t n;
    std::vector<double> a;
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

inline void householder_tridiagonalize(Dense& v, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = v.n;
    for (std::size_t j = 0; j < n; ++j)
        d[j] = v(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k)
            scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j)
                e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (std::size_t k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j)
                e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k <= i - 1; ++k)
                    v(k, j) -= (f * e[k] + g * d[k]);
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate the transformations.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k)
                d[k] = v(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k)
                    g += v(k, i + 1) * v(k, j);
                for (std::size_t k = 0; k <= i; ++k)
                    v(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k)
            v(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e); rotations are applied to v.
inline void tridiagonal_ql(Dense& v, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = v.n;
    const std::size_t iteration_cap = 30 * n;
    std::size_t iterations = 0;

    for (std::size_t i = 1; i < n; ++i)
        e[i - 1] = e[i];
    e[n - 1] = 0.0;

    const double eps = std::numeric_limits<double>::epsilon();
    double f = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n - 1 && std::abs(e[m]) > eps * tst1)
            ++m;

        if (m > l) {
            do {
                if (++iterations > iteration_cap)
                    throw ConvergenceError("eigh: QL iteration did not converge", iterations - 1);

                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i)
                    d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (std::size_t k = 0; k < n; ++k) {
                        h = v(k, i + 1);
                        v(k, i + 1) = s * v(k, i) + c * h;
                        v(k, i) = c * v(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

} // namespace detail

// max_k ||H v_k - E_k v_k||_inf
inline double eigen_residual(const SymmetricMatrix& m, const SpectralResult& r) {
    const std::size_t n = m.dim();
    double worst = 0.0;
    for (std::size_t k = 0; k < r.dim(); ++k) {
        const auto v = r.eigenvector(k);
        for (std::size_t i = 0; i < n; ++i) {
            double hv = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                hv += m(i, j) * v[j];
            worst = std::max(worst, std::abs(hv - r.eigenvalues[k] * v[i]));
        }
    }
    return worst;
}

// Full eigendecomposition. `converged` is set when the residual is at most
// residual_tol, which defaults to 1e-9 * max(||H||_inf, 1).
inline SpectralResult eigh(const SymmetricMatrix& m, std::optional<double> residual_tol = std::nullopt) {
    const std::size_t n = m.dim();
    if (n == 0)
        throw InputError("eigh: empty matrix");
    for (double x : m.data())
        if (!std::isfinite(x))
            throw InputError("eigh: non-finite matrix entry");

    detail::Dense v{n, m.data()};
    std::vector<double> d(n), e(n);
    if (n == 1) {
        d[0] = v.a[0];
        v.a[0] = 1.0;
    } else {
        detail::householder_tridiagonalize(v, d, e);
        detail::tridiagonal_ql(v, d, e);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    SpectralResult r;
    r.eigenvalues.resize(n);
    r.eigenvectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        r.eigenvalues[k] = d[order[k]];
        for (std::size_t i = 0; i < n; ++i)
            r.eigenvectors[k * n + i] = v(i, order[k]);
    }
    r.basis = m.basis;
    for (const auto& b : r.basis)
        r.n_max_used = std::max(r.n_max_used, b.photon_n);

    r.residual = eigen_residual(m, r);
    const double tol = residual_tol.value_or(1e-9 * std::max(m.inf_norm(), 1.0));
    r.converged = r.residual <= tol;
    return r;
}

inline GroundState ground_state(const SpectralResult& r) {
    if (!r.converged)
        throw ConvergenceError("ground_state: spectral result is not converged", 0);
    if (r.dim() == 0)
        throw InputError("ground_state: empty spectrum");
    const auto v = r.eigenvector(0);
    return {r.eigenvalues[0], std::vector<double>(v.begin(), v.end())};
}

// Half-open index ranges of eigenvalues lying within rel_tol of their
// neighbours (relative to max(1, |E|)). Singletons are included.
inline std::vector<std::pair<std::size_t, std::size_t>>
degenerate_clusters(std::span<const double> eigenvalues, double rel_tol = 1e-9) {
    std::vector<std::pair<std::size_t, std::size_t>> clusters;
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= eigenvalues.size(); ++k) {
        const bool split = k == eigenvalues.size() ||
            std::abs(eigenvalues[k] - eigenvalues[k - 1]) >
                rel_tol * std::max({1.0, std::abs(eigenvalues[k]), std::abs(eigenvalues[k - 1])});
        if (split) {
            clusters.emplace_back(begin, k);
            begin = k;
        }
    }
    return clusters;
}

// How far the span of eigenvectors [begin, end) is from being invariant under
// the diagonal parity operator: max_k ||P v_k - Q P v_k||_inf, Q the projector
// onto the cluster. For a single vector this is zero iff v has definite parity.
inline double parity_defect(const SpectralResult& r, std::span<const int> signs,
                            std::size_t begin, std::size_t end) {
    const std::size_t n = r.dim();
    if (signs.size() != n)
        throw InputError("parity_defect: sign vector does not match the basis");
    double worst = 0.0;
    std::vector<double> pv(n), residual(n);
    for (std::size_t k = begin; k < end; ++k) {
        const auto v = r.eigenvector(k);
        for (std::size_t i = 0; i < n; ++i)
            pv[i] = signs[i] * v[i];
        residual = pv;
        for (std::size_t c = begin; c < end; ++c) {
            const auto u = r.eigenvector(c);
            const double proj = std::inner_product(u.begin(), u.end(), pv.begin(), 0.0);
            for (std::size_t i = 0; i < n; ++i)
                residual[i] -= proj * u[i];
        }
        for (double x : residual)
            worst = std::max(worst, std::abs(x));
    }
    return worst;
}

// Rotates every degenerate cluster onto eigenvectors of a diagonal symmetry
// operator that commutes with H (parity, excitation number), ordered by the
// symmetry eigenvalue. Non-degenerate vectors are left untouched.
inline void resolve_degeneracy(SpectralResult& r, std::span<const double> symmetry, double rel_tol = 1e-9) {
    const std::size_t n = r.dim();
    if (symmetry.size() != n)
        throw InputError("resolve_degeneracy: symmetry diagonal does not match the basis");
    for (const auto& [begin, end] : degenerate_clusters(r.eigenvalues, rel_tol)) {
        const std::size_t m = end - begin;
        if (m < 2)
            continue;
        SymmetricMatrix projected(m);
        for (std::size_t a = 0; a < m; ++a) {
            const auto va = r.eigenvector(begin + a);
            for (std::size_t b = a; b < m; ++b) {
                const auto vb = r.eigenvector(begin + b);
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    s += va[i] * symmetry[i] * vb[i];
                projected.set(a, b, s);
            }
        }
        const SpectralResult rotation = eigh(projected);
        std::vector<double> rotated(m * n, 0.0);
        for (std::size_t c = 0; c < m; ++c) {
            const auto u = rotation.eigenvector(c);
            for (std::size_t a = 0; a < m; ++a) {
                const auto va = r.eigenvector(begin + a);
                for (std::size_t i = 0; i < n; ++i)
                    rotated[c * n + i] += u[a] * va[i];
            }
        }
        std::copy(rotated.begin(), rotated.end(), r.eigenvectors.begin() + static_cast<std::ptrdiff_t>(begin * n));
    }
}

using MatrixBuilder = std::function<SymmetricMatrix(const FockTruncation&)>;
using StateObservable = std::function<double(std::span<const double>, const std::vector<BasisLabel>&)>;
// Diagonal of a conserved operator, used to split degenerate ground levels.
using SymmetryBuilder = std::function<std::vector<double>(const FockTruncation&)>;

struct TruncationPolicy {
    double tol{1e-8};
    std::size_t n_start{20};
    std::size_t n_step{20};
    std::size_t n_cap{400};
};

struct ConvergedSpectrum {
    SpectralResult result;
    double observable{0.0};
};

// Grows n_max until the ground-state observable changes by less than tol
// between consecutive truncations. The step doubles after every failed
// comparison. Hitting n_cap returns the last result with converged = false.
inline ConvergedSpectrum converge_truncation(const MatrixBuilder& builder, const StateObservable& observable,
                                             const TruncationPolicy& policy,
                                             const SymmetryBuilder& symmetry = {}) {
    if (!(policy.tol > 0.0))
        throw InputError("converge_truncation: tol must be > 0");
    if (policy.n_start < 1 || policy.n_step < 1)
        throw InputError("converge_truncation: n_start and n_step must be >= 1");

    auto evaluate = [&](std::size_t n_max) {
        ConvergedSpectrum out{eigh(builder(FockTruncation{n_max})), 0.0};
        out.result.n_max_used = n_max;
        if (symmetry)
            resolve_degeneracy(out.result, symmetry(FockTruncation{n_max}));
        out.observable = observable(out.result.eigenvector(0), out.result.basis);
        return out;
    };

    std::size_t n = std::min(policy.n_start, std::max(policy.n_cap, std::size_t{1}));
    std::size_t step = policy.n_step;
    ConvergedSpectrum previous = evaluate(n);
    while (n < policy.n_cap) {
        const std::size_t next = std::min(n + step, policy.n_cap);
        ConvergedSpectrum current = evaluate(next);
        if (std::abs(current.observable - previous.observable) < policy.tol) {
            // eigh already set converged from the residual check
            return current;
        }
        previous = std::move(current);
        n = next;
        step *= 2;
    }
    previous.result.converged = false;
    return previous;
}

} // namespace rabibp
