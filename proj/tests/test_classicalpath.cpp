#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rabibp/classicalpath.hpp"

using namespace rabibp;

namespace {

constexpr double pi = std::numbers::pi;

double jc_theta(const TwoLevelParams& p, double alpha) { return std::atan2(2.0 * alpha * p.lambda, p.nu); }

} // namespace

TEST(ClassicalHamiltonian, FieldComponents) {
    const auto h = classical_hamiltonian({1.0, 0.8, 1.0, 0.0}, {1.0, 0.0}, pi / 2);
    EXPECT_NEAR(h.b[0], 0.0, 1e-15);
    EXPECT_EQ(h.b[1], -1.0);
    EXPECT_EQ(h.b[2], 0.4);
    EXPECT_EQ(h.offset, 1.0);

    const auto x = classical_hamiltonian({1.0, 1.0, 0.3, 0.2}, {2.0, 0.0}, 0.0);
    EXPECT_EQ(x.b[0], 2.0 * 0.5);
    EXPECT_EQ(x.b[1], 0.0);
}

TEST(ClassicalHamiltonian, RabiHasNoSigmaY) {
    for (int k = 0; k < 50; ++k) {
        const auto h = classical_hamiltonian({1.0, 1.0, 0.7, 0.7}, {1.3, 0.4}, 0.1 * k);
        EXPECT_EQ(h.b[1], 0.0);
        const auto m = h.matrix();
        EXPECT_EQ(m[0][1].imag(), 0.0);
    }
}

TEST(ClassicalHamiltonian, RejectsBadField) {
    EXPECT_THROW(classical_hamiltonian({1.0, 1.0, 0.3, 0.0}, {-1.0, 0.0}, 0.0), InputError);
    EXPECT_THROW(classical_hamiltonian({1.0, 1.0, 0.3, 0.0}, {1.0, 0.0}, std::nan("")), InputError);
}

TEST(EigenPath, SamplesAreNormalizedEigenvectors) {
    const TwoLevelParams p{1.0, 0.9, 0.6, 0.0};
    const ClassicalField f{0.8, 0.0};
    const auto paths = eigenpath(p, f, 64);
    ASSERT_EQ(paths.lower.samples.size(), 64u);
    for (std::size_t k = 0; k < 64; ++k) {
        const auto m = classical_hamiltonian(p, f, paths.lower.phi[k]).matrix();
        for (const auto* path : {&paths.lower, &paths.upper}) {
            const auto& s = path->samples[k];
            EXPECT_NEAR(std::norm(s[0]) + std::norm(s[1]), 1.0, 1e-12);
            for (int r = 0; r < 2; ++r) {
                const auto hv = m[r][0] * s[0] + m[r][1] * s[1];
                EXPECT_NEAR(std::abs(hv - path->energies[k] * s[r]), 0.0, 1e-12);
            }
        }
        EXPECT_LT(paths.lower.energies[k], paths.upper.energies[k]);
    }
    EXPECT_TRUE(paths.lower.closed);
    EXPECT_TRUE(paths.upper.closed);
}

TEST(EigenPath, RabiSamplesAreReal) {
    const auto paths = eigenpath({1.0, 1.0, 0.5, 0.5}, {1.0, 0.0}, 128);
    for (const auto& s : paths.lower.samples) {
        EXPECT_EQ(s[0].imag(), 0.0);
        EXPECT_EQ(s[1].imag(), 0.0);
    }
}

TEST(EigenPath, DecoupledPathIsConstantGround) {
    const auto paths = eigenpath({1.0, 1.0, 0.0, 0.0}, {1.0, 0.0}, 16);
    for (const auto& s : paths.lower.samples) {
        EXPECT_EQ(s[0], std::complex<double>(0.0));
        EXPECT_EQ(s[1], std::complex<double>(1.0));
    }
    EXPECT_EQ(path_geometric_phase(paths.lower), 0.0);
}

TEST(EigenPath, DegeneracyIsReported) {
    // a vanishing nu with alpha = 0 closes the gap
    EXPECT_THROW(eigenpath({1.0, 1e-12, 0.5, 0.0}, {0.0, 0.0}, 16), NumericalError);
    EXPECT_THROW(eigenpath({1.0, 1.0, 0.5, 0.0}, {1.0, 0.0}, 4), InputError);
}

TEST(PathPhase, RabiArcHasZeroPhase) {
    for (std::size_t steps : {8u, 64u, 1024u}) {
        const auto paths = eigenpath({1.0, 1.0, 0.8, 0.8}, {1.2, 0.3}, steps);
        EXPECT_NEAR(path_geometric_phase(paths.lower), 0.0, 1e-10);
        EXPECT_NEAR(path_geometric_phase(paths.upper), 0.0, 1e-10);
    }
}

TEST(PathPhase, JcLoopConvergesQuadraticallyToHalfSolidAngle) {
    const TwoLevelParams p{1.0, 1.0, 0.5, 0.0};
    const ClassicalField f{1.0, 0.0};
    const double expected = -solid_angle_phase(jc_theta(p, f.alpha_mod));
    std::vector<double> errors;
    for (std::size_t steps : {64u, 256u, 1024u})
        errors.push_back(std::abs(path_geometric_phase(eigenpath(p, f, steps).lower) - expected));
    EXPECT_LT(errors[2], 2e-3);
    // quadrupling the samples divides the error by ~16
    EXPECT_NEAR(errors[0] / errors[1], 16.0, 1.0);
    EXPECT_NEAR(errors[1] / errors[2], 16.0, 1.0);
}

TEST(PathPhase, UpperAndLowerAreOpposite) {
    for (double alpha : {0.2, 0.9, 2.5}) {
        const auto paths = eigenpath({1.0, 1.3, 0.4, 0.0}, {alpha, 0.0}, 512);
        EXPECT_NEAR(path_geometric_phase(paths.lower) + path_geometric_phase(paths.upper), 0.0, 1e-8);
    }
}

TEST(PathPhase, InvariantUnderRegauging) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    auto paths = eigenpath({1.0, 1.0, 0.5, 0.0}, {1.0, 0.0}, 256);
    const double before = path_geometric_phase(paths.lower);
    for (auto& s : paths.lower.samples) {
        const auto u = std::polar(1.0, angle(rng));
        s[0] *= u;
        s[1] *= u;
    }
    EXPECT_NEAR(path_geometric_phase(paths.lower), before, 1e-12);
}

TEST(PathPhase, StartingPhaseDoesNotMatter) {
    const TwoLevelParams p{1.0, 1.0, 0.5, 0.0};
    const double a = path_geometric_phase(eigenpath(p, {1.0, 0.0}, 256).lower);
    const double b = path_geometric_phase(eigenpath(p, {1.0, 1.234}, 256).lower);
    EXPECT_NEAR(a, b, 1e-12);
}

TEST(PathPhase, RejectsBadSamples) {
    BlochPath path;
    path.samples.assign(8, Spinor{std::complex<double>(1.0), std::complex<double>(0.0)});
    EXPECT_EQ(path_geometric_phase(path), 0.0);
    path.samples[3][0] = 2.0;
    EXPECT_THROW(path_geometric_phase(path), InputError);
    path.samples.assign(8, Spinor{std::complex<double>(1.0), std::complex<double>(0.0)});
    path.samples[4] = Spinor{std::complex<double>(0.0), std::complex<double>(1.0)};
    EXPECT_THROW(path_geometric_phase(path), NumericalError);
    path.samples.resize(4);
    EXPECT_THROW(path_geometric_phase(path), InputError);
}

TEST(SolidAngle, ClosedForm) {
    EXPECT_EQ(solid_angle_phase(0.0), 0.0);
    EXPECT_NEAR(solid_angle_phase(pi / 2), pi, 1e-15);
    EXPECT_NEAR(solid_angle_phase(pi), 2.0 * pi, 1e-15);
    EXPECT_THROW(solid_angle_phase(-0.1), InputError);
    EXPECT_THROW(solid_angle_phase(4.0), InputError);
}

TEST(SpinHamiltonian, PolarAngleOfJcField) {
    const TwoLevelParams p{1.0, 0.7, 0.5, 0.0};
    const auto h = classical_hamiltonian(p, {1.5, 0.0}, 0.3);
    EXPECT_NEAR(std::tan(h.polar_angle()), 2.0 * 1.5 * 0.5 / 0.7, 1e-12);
}
