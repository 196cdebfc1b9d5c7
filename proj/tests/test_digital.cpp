#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qsearch/digital.hpp"
#include "qsearch/random.hpp"

using namespace qsearch;
using namespace qsearch::digital;

namespace {

StateVector random_state(std::size_t N, Rng& rng) {
    std::vector<cplx> a(N);
    for (auto& x : a) x = {rng.normal(), rng.normal()};
    const double n = std::sqrt(norm2(a));
    for (auto& x : a) x /= n;
    return StateVector(a);
}

double max_diff(const StateVector& a, const StateVector& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Dense 2|psi><psi| - I with psi uniform, applied by matrix multiplication.
StateVector dense_diffusion(const StateVector& s) {
    const std::size_t N = s.size();
    CMatrix D(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) D(i, j) = 2.0 / N - (i == j ? 1.0 : 0.0);
    return StateVector(D.apply(s.amps()));
}

}  // namespace

TEST(InitUniform, Examples) {
    StateVector s = init_uniform(4);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(s[i].real(), 0.5);
    EXPECT_EQ(init_uniform(1)[0], cplx(1.0, 0.0));
    for (std::size_t N : {3u, 7u, 100u, 1000u}) EXPECT_NEAR(init_uniform(N).norm2(), 1.0, 1e-14);
    EXPECT_THROW(init_uniform(0), std::invalid_argument);
}

TEST(Oracle, FlipsTargetOnly) {
    StateVector s = oracle_apply(init_uniform(4), 0);
    EXPECT_DOUBLE_EQ(s[0].real(), -0.5);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_DOUBLE_EQ(s[i].real(), 0.5);
    Rng rng(1);
    StateVector r = random_state(37, rng);
    EXPECT_EQ(max_diff(oracle_apply(oracle_apply(r, 5), 5), r), 0.0);
    EXPECT_NEAR(oracle_apply(r, 5).norm2(), 1.0, 1e-14);
    EXPECT_THROW(oracle_apply(r, 37), std::invalid_argument);
}

TEST(InversionAboutMean, Examples) {
    StateVector e0(std::vector<cplx>{1, 0, 0, 0});
    StateVector r = inversion_about_mean(e0);
    EXPECT_DOUBLE_EQ(r[0].real(), -0.5);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_DOUBLE_EQ(r[i].real(), 0.5);
    StateVector u = init_uniform(9);
    EXPECT_LT(max_diff(inversion_about_mean(u), u), 1e-15);
    StateVector back = inversion_about_mean(StateVector(std::vector<cplx>{-0.5, 0.5, 0.5, 0.5}));
    EXPECT_NEAR(back[0].real(), 1.0, 1e-15);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(back[i]), 0.0, 1e-15);
}

TEST(InversionAboutMean, MatchesDenseReflectionAndIsInvolution) {
    Rng rng(2);
    for (std::size_t N : {2u, 5u, 16u, 33u}) {
        StateVector s = random_state(N, rng);
        EXPECT_LT(max_diff(inversion_about_mean(s), dense_diffusion(s)), 1e-14);
        EXPECT_LT(max_diff(inversion_about_mean(inversion_about_mean(s)), s), 1e-14);
        EXPECT_NEAR(inversion_about_mean(s).norm2(), 1.0, 1e-12);
    }
}

TEST(GroverIterate, N4HitsTarget) {
    StateVector s = grover_iterate(init_uniform(4), 2);
    EXPECT_NEAR(std::abs(s[2]), 1.0, 1e-15);
    EXPECT_NEAR(std::norm(s[2]), 1.0, 1e-14);
}

TEST(GroverIterate, AmplitudesFollowClosedForm) {
    for (std::size_t N : {4u, 10u, 64u, 333u, 1024u}) {
        const double th = grover_theta(N);
        StateVector s = init_uniform(N);
        for (int k = 0; k <= 3 * optimal_iterations(N); ++k) {
            const double a = std::sin((2 * k + 1) * th);
            const double b = std::cos((2 * k + 1) * th) / std::sqrt(N - 1.0);
            EXPECT_NEAR(s[N / 3].real(), a, 1e-12);
            for (std::size_t x = 0; x < N; ++x) {
                if (x == N / 3) continue;
                // plane closure: every unmarked amplitude equal
                EXPECT_NEAR(s[x].real(), b, 1e-12);
            }
            EXPECT_NEAR(std::norm(s[N / 3]), success_probability(k, N), 1e-12);
            s = grover_iterate(s, N / 3);
        }
    }
}

TEST(SuccessProbability, Examples) {
    EXPECT_DOUBLE_EQ(success_probability(0, 4), 0.25);
    EXPECT_NEAR(success_probability(1, 4), 1.0, 1e-15);
    EXPECT_THROW(success_probability(-1, 4), std::invalid_argument);
}

TEST(SuccessProbability, PeriodicWhenPeriodIsInteger) {
    // theta = pi/(2m) gives T = m
    for (int m : {3, 5, 8, 12}) {
        const double N = 1.0 / std::pow(std::sin(std::numbers::pi / (2 * m)), 2);
        for (int k = 0; k < 20; ++k) EXPECT_NEAR(success_probability(k, N), success_probability(k + m, N), 1e-12);
    }
}

TEST(OptimalIterations, Examples) {
    EXPECT_EQ(optimal_iterations(4), 1);
    EXPECT_EQ(optimal_iterations(1e6), 785);
    EXPECT_GE(success_probability(785, 1e6), 1.0 - 1e-6);
    for (int n = 2; n <= 20; ++n) {
        const double N = std::ldexp(1.0, n);
        EXPECT_GE(success_probability(optimal_iterations(N), N), 1.0 - 1.0 / N) << "N=2^" << n;
    }
}

TEST(OptimalIterations, IsTheNearestPeak) {
    // brute force: k_opt maximizes the closed form among the first quarter period neighbours
    for (double N : {5.0, 17.0, 100.0, 4096.0, 50000.0}) {
        const auto k = optimal_iterations(N);
        EXPECT_GE(success_probability(k, N), success_probability(k + 1, N));
        if (k > 0) EXPECT_GE(success_probability(k, N), success_probability(k - 1, N));
    }
}

TEST(PlaneMatrices, Examples) {
    const double th = std::numbers::pi / 6;
    Mat2c G = matrix_G(th);
    EXPECT_NEAR(G(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(G(0, 1).real(), -std::sqrt(3.0) / 2, 1e-15);
    EXPECT_NEAR(G(1, 0).real(), std::sqrt(3.0) / 2, 1e-15);
    EXPECT_NEAR(G(1, 1).real(), 0.5, 1e-15);
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        const double a = rng.uniform(0, std::numbers::pi / 2);
        EXPECT_NEAR(matrix_inversion(a).det().real(), -1.0, 1e-14);
        EXPECT_NEAR(matrix_oracle().det().real(), -1.0, 0.0);
        EXPECT_LT(max_abs_diff(matrix_G(a).transpose() * matrix_G(a), Mat2c::identity()), 1e-15);
        EXPECT_LT(max_abs_diff(matrix_G(a), matrix_inversion(a) * matrix_oracle()), 1e-12);
        EXPECT_LT(max_abs_diff(matrix_inversion(a), matrix_inversion(a).transpose()), 0.0 + 1e-300);
    }
}

TEST(PlaneMatrices, ActOnPlaneCoordinatesLikeTheSimulator) {
    const std::size_t N = 50;
    const double th = grover_theta(N);
    StateVector s = init_uniform(N);
    std::array<cplx, 2> v{std::cos(th), std::sin(th)};  // (bad, target)
    for (int k = 0; k < 8; ++k) {
        s = grover_iterate(s, 7);
        v = matrix_G(th) * v;
        const SearchPlaneState p = plane_coordinates(s, 7);
        EXPECT_NEAR(p.a_bad, v[0].real(), 1e-12);
        EXPECT_NEAR(p.a_target, v[1].real(), 1e-12);
        EXPECT_NEAR(p.a_target * p.a_target + p.a_bad * p.a_bad, 1.0, 1e-12);
    }
}

TEST(GeneralizedIterate, ReducesAndIsUnitary) {
    Rng rng(6);
    for (int t = 0; t < 100; ++t) {
        const double th = rng.uniform(0, std::numbers::pi / 2);
        EXPECT_LT(max_abs_diff(generalized_iterate_matrix(std::numbers::pi, std::numbers::pi, th), matrix_G(th)),
                  1e-14);
        EXPECT_LT(max_abs_diff(generalized_iterate_matrix(0, 0, th), Mat2c::identity() * -1.0), 1e-15);
        const double a = rng.uniform(-7, 7), b = rng.uniform(-7, 7);
        const Mat2c g = generalized_iterate_matrix(a, b, th);
        EXPECT_LT(unitarity_defect(g), 1e-14);
        // -R_psi(alpha) R_target(beta) built from projectors on the (bad, target) plane
        const std::array<double, 2> psi{std::cos(th), std::sin(th)};
        Mat2c Rpsi = Mat2c::identity();
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) Rpsi(r, c) -= (1.0 - std::polar(1.0, a)) * psi[r] * psi[c];
        Mat2c Rt = Mat2c::from(1.0, 0.0, 0.0, std::polar(1.0, b));
        EXPECT_LT(max_abs_diff(g, (Rpsi * Rt) * -1.0), 1e-14);
    }
}

TEST(Unitarity, AllOperatorsPreserveNorm) {
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        StateVector s = random_state(64, rng);
        EXPECT_NEAR(grover_iterate(s, t).norm2(), 1.0, 1e-12);
        EXPECT_NEAR(inversion_about_mean(s).norm2(), 1.0, 1e-12);
    }
}
