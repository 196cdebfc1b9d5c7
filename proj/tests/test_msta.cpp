#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qsearch/digital.hpp"
#include "qsearch/msta.hpp"
#include "qsearch/random.hpp"

using namespace qsearch;
using namespace qsearch::msta;
using ga::max_abs_diff;

namespace {

std::pair<cplx, cplx> random_qubit(Rng& rng) {
    cplx a{rng.normal(), rng.normal()}, b{rng.normal(), rng.normal()};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

Multivector one() { return Multivector::scalar(cl3(), 1.0); }

Mat2c pauli(int k) {
    const cplx i{0, 1};
    switch (k) {
        case 1: return Mat2c::from(0, 1, 1, 0);
        case 2: return Mat2c::from(0, -i, i, 0);
        default: return Mat2c::from(1, 0, 0, -1);
    }
}

Multivector random_even(Rng& rng) {
    return one() * rng.normal() + ie(1) * rng.normal() + ie(2) * rng.normal() + ie(3) * rng.normal();
}

double close(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST(Qubit, Examples) {
    EXPECT_LT(max_abs_diff(qubit_to_mv(1.0, 0.0).mv, one()), 0.0 + 1e-300);
    const GaQubit p = qubit_to_mv(1.0, -1.0, true);
    EXPECT_LT(max_abs_diff(p.mv, one() + ie(2)), 1e-15);
    EXPECT_THROW(qubit_to_mv(1.0, -1.0), std::domain_error);
}

TEST(Qubit, RoundTripAndEvenness) {
    Rng rng(11);
    for (int t = 0; t < 10000; ++t) {
        const auto [a, b] = random_qubit(rng);
        const GaQubit q = qubit_to_mv(a, b);
        EXPECT_TRUE(q.mv.is_even());
        const auto [a2, b2] = mv_to_qubit(q);
        ASSERT_LT(close(a, a2), 1e-14);
        ASSERT_LT(close(b, b2), 1e-14);
        ASSERT_NEAR((reverse(q.mv) * q.mv).scalar_part(), 1.0, 1e-14);
    }
    GaQubit odd{e(1)};
    EXPECT_THROW(mv_to_qubit(odd), std::invalid_argument);
}

TEST(Pauli, Examples) {
    const GaQubit up = qubit_to_mv(1.0, 0.0);
    EXPECT_LT(max_abs_diff(pauli_action(3, up).mv, up.mv), 1e-15);
    EXPECT_LT(max_abs_diff(pauli_action(1, up).mv, qubit_to_mv(0.0, 1.0).mv), 1e-15);
    EXPECT_THROW(pauli_action(0, up), std::invalid_argument);
    EXPECT_THROW(pauli_action(4, up), std::invalid_argument);
}

TEST(Pauli, MatrixOracle) {
    Rng rng(12);
    for (int t = 0; t < 10000; ++t) {
        const auto [a, b] = random_qubit(rng);
        for (int k = 1; k <= 3; ++k) {
            const auto want = pauli(k) * std::array<cplx, 2>{a, b};
            const auto [ga_a, ga_b] = mv_to_qubit(pauli_action(k, qubit_to_mv(a, b)));
            ASSERT_LT(close(ga_a, want[0]), 1e-10);
            ASSERT_LT(close(ga_b, want[1]), 1e-10);
        }
    }
}

TEST(ComplexUnit, ExamplesAndOracle) {
    const GaQubit up = qubit_to_mv(1.0, 0.0);
    const auto [a, b] = mv_to_qubit(complex_unit_action(up));
    EXPECT_LT(close(a, cplx(0, 1)), 1e-15);
    EXPECT_LT(close(b, 0.0), 1e-15);
    Rng rng(13);
    for (int t = 0; t < 1000; ++t) {
        const auto [x, y] = random_qubit(rng);
        const GaQubit q = qubit_to_mv(x, y);
        EXPECT_LT(max_abs_diff(complex_unit_action(complex_unit_action(q)).mv, -q.mv), 1e-14);
        const auto [u, v] = mv_to_qubit(complex_unit_action(q));
        EXPECT_LT(close(u, cplx(0, 1) * x), 1e-14);
        EXPECT_LT(close(v, cplx(0, 1) * y), 1e-14);
    }
}

TEST(Inner, Examples) {
    const GaQubit psi = qubit_to_mv(1.0, cplx(0, 1), true);
    const GaQubit phi = qubit_to_mv(1.0, 1.0, true);
    const ComplexPair z = ga_inner(psi, phi);
    EXPECT_NEAR(z.re, 1.0, 1e-15);
    EXPECT_NEAR(z.im, -1.0, 1e-15);
    Rng rng(14);
    const auto [a, b] = random_qubit(rng);
    const GaQubit q = qubit_to_mv(a * 3.0, b * 3.0, true);
    const ComplexPair self = ga_inner(q, q);
    EXPECT_NEAR(self.im, 0.0, 1e-14);
    double sq = 0;
    for (double c : q.mv.coeffs()) sq += c * c;
    EXPECT_NEAR(self.re, sq, 1e-12);
}

TEST(Inner, MatrixOracle) {
    Rng rng(15);
    for (int t = 0; t < 2000; ++t) {
        const auto [a, b] = random_qubit(rng);
        const auto [c, d] = random_qubit(rng);
        const cplx want = std::conj(a) * c + std::conj(b) * d;
        const cplx got = ga_inner(qubit_to_mv(a, b), qubit_to_mv(c, d)).value();
        ASSERT_LT(close(want, got), 1e-14);
    }
}

TEST(Density, Examples) {
    const Multivector rho = density_pure(qubit_to_mv(1.0, -1.0, true));
    EXPECT_LT(max_abs_diff(rho, one() - e(1)), 1e-15);
    const Multivector mixed =
        density_mixed({0.25, 0.75}, {qubit_to_mv(1.0, 0.0), qubit_to_mv(0.0, 1.0)});
    EXPECT_LT(max_abs_diff(mixed, (one() - e(3) * 0.5) * 0.5), 1e-15);
    const Multivector flat = density_mixed({0.5, 0.5}, {qubit_to_mv(1.0, 0.0), qubit_to_mv(0.0, 1.0)});
    EXPECT_LT(max_abs_diff(flat, one() * 0.5), 1e-15);
    EXPECT_THROW(density_mixed({0.5, 0.6}, {qubit_to_mv(1.0, 0.0), qubit_to_mv(0.0, 1.0)}), std::domain_error);
    EXPECT_THROW(density_mixed({-0.5, 1.5}, {qubit_to_mv(1.0, 0.0), qubit_to_mv(0.0, 1.0)}), std::domain_error);
    EXPECT_THROW(density_mixed({1.0}, {}), std::invalid_argument);
}

TEST(Density, PureMatchesBlochVectorAndIsIdempotent) {
    Rng rng(16);
    for (int t = 0; t < 500; ++t) {
        const auto [a, b] = random_qubit(rng);
        const Multivector rho = density_pure(qubit_to_mv(a, b));
        EXPECT_NEAR(rho.scalar_part(), 0.5, 1e-14);
        EXPECT_LT(max_abs_diff(rho * rho, rho), 1e-14);
        // <sigma_k> = 2 * coefficient of e_k
        for (int k = 1; k <= 3; ++k) {
            const auto v = pauli(k) * std::array<cplx, 2>{a, b};
            const double expect = (std::conj(a) * v[0] + std::conj(b) * v[1]).real();
            EXPECT_NEAR(2.0 * rho[1u << (k - 1)], expect, 1e-13);
        }
        EXPECT_LT(grade_project(rho, 2).max_abs() + grade_project(rho, 3).max_abs(), 1e-14);
    }
}

TEST(Register, ProductMatchesClifford) {
    Rng rng(17);
    for (int n = 1; n <= 4; ++n)
        for (int t = 0; t < 50; ++t) {
            const Multivector x = random_even(rng), y = random_even(rng);
            const int a = 1 + static_cast<int>(rng.next() % n);
            const GaRegister lhs = GaRegister::embed(n, a, x) * GaRegister::embed(n, a, y);
            EXPECT_LT(max_abs_diff(lhs, GaRegister::embed(n, a, x * y)), 1e-12);
            if (n > 1) {
                const int b = a % n + 1;
                const GaRegister ab = GaRegister::embed(n, a, x) * GaRegister::embed(n, b, y);
                const GaRegister ba = GaRegister::embed(n, b, y) * GaRegister::embed(n, a, x);
                EXPECT_LT(max_abs_diff(ab, ba), 1e-13);
            }
        }
    EXPECT_THROW(GaRegister(0), std::invalid_argument);
    EXPECT_THROW(GaRegister(9), std::invalid_argument);
    EXPECT_THROW(GaRegister::embed(2, 1, e(1)), std::invalid_argument);
}

TEST(Correlator, N2Form) {
    GaRegister want = GaRegister::scalar(2, 0.5);
    want[(3u << 2) | 3u] = -0.5;
    const GaRegister E = correlator(2);
    EXPECT_LT(max_abs_diff(E, want), 1e-15);
    EXPECT_LT(max_abs_diff(E * E, E), 1e-15);
    EXPECT_THROW(correlator(1), std::invalid_argument);
    EXPECT_THROW(correlator(9), std::invalid_argument);
}

TEST(Correlator, ProjectorAlgebra) {
    for (int n = 2; n <= 6; ++n) {
        const GaRegister E = correlator(n), J = correlator_J(n);
        EXPECT_LT(max_abs_diff(E * E, E), 1e-14) << n;
        EXPECT_LT(max_abs_diff(J * J, E * -1.0), 1e-14) << n;
        for (int a = 1; a <= n; ++a) EXPECT_LT(max_abs_diff(right_ie3(E, a), J), 1e-14) << n << " " << a;
        EXPECT_EQ(projection_rank(n), std::size_t{1} << (n + 1));
    }
    for (int n = 2; n <= 4; ++n) EXPECT_EQ(projection_rank_numeric(n), std::size_t{1} << (n + 1));
}

TEST(Correlator, ProjectionIdempotentAndIe3Independent) {
    Rng rng(18);
    for (int n = 2; n <= 4; ++n) {
        GaRegister x(n);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.normal();
        const GaRegister p = apply_correlator(x);
        EXPECT_TRUE(p.correlated());
        EXPECT_LT(max_abs_diff(apply_correlator(p), p), 1e-13);
        for (int a = 2; a <= n; ++a) EXPECT_LT(max_abs_diff(right_ie3(p, a), right_ie3(p, 1)), 1e-13);
    }
}

TEST(Correlator, StateRoundTripAndComplexStructure) {
    Rng rng(19);
    for (int n = 2; n <= 5; ++n) {
        std::vector<cplx> amps(std::size_t{1} << n);
        for (auto& z : amps) z = {rng.normal(), rng.normal()};
        const double nm = std::sqrt(norm2(amps));
        for (auto& z : amps) z /= nm;
        const digital::StateVector s(amps);
        const GaRegister r = state_to_register(s, n);
        EXPECT_LT(max_abs_diff(apply_correlator(r), r), 1e-13);
        const digital::StateVector back = register_to_state(r);
        for (std::size_t x = 0; x < amps.size(); ++x) ASSERT_LT(close(back[x], amps[x]), tol_state);
        // i times the state equals right multiplication by ie3 on any particle
        std::vector<cplx> times_i = amps;
        for (auto& z : times_i) z *= cplx(0, 1);
        const GaRegister ri = state_to_register(digital::StateVector(times_i), n);
        for (int a = 1; a <= n; ++a) EXPECT_LT(max_abs_diff(right_ie3(r, a), ri), 1e-13);
    }
}

TEST(GroverRotor, Examples) {
    const Multivector g = ga_grover_rotor(4).mv();
    const Multivector B = e(3) * e(1);
    EXPECT_LT(max_abs_diff(g, one() * (std::sqrt(3.0) / 2) + B * 0.5), 1e-15);
    EXPECT_LT(max_abs_diff(ga_grover_rotor(1e12).mv(), one()), 2e-6);
    for (double N : {2.0, 3.0, 10.0, 1e3, 1e9}) {
        const Multivector h = ga_grover_rotor(N).mv();
        EXPECT_LT(max_abs_diff(h * reverse(h), one()), 1e-15) << N;
    }
    EXPECT_THROW(ga_grover_rotor(1), std::invalid_argument);
}

TEST(GroverMultivector, IsRotorSquared) {
    const Multivector B = e(3) * e(1);
    EXPECT_LT(max_abs_diff(ga_grover_multivector(4), one() * 0.5 + B * (std::sqrt(3.0) / 2)), 1e-15);
    for (double N = 2; N <= 2048; N *= 1.7) {
        const Multivector g = ga_grover_rotor(N).mv();
        const Multivector G = ga_grover_multivector(N);
        EXPECT_LT(max_abs_diff(G, g * g), 1e-14) << N;
        const double th = std::asin(1 / std::sqrt(N));
        EXPECT_NEAR(G.scalar_part(), std::cos(2 * th), 1e-14);
    }
}

TEST(GroverApply, ExamplesAndPlanarity) {
    const auto p0 = ga_grover_apply(0, 9);
    EXPECT_NEAR(p0.a_target, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(p0.a_bad, std::sqrt(8.0 / 9.0), 1e-15);
    const auto p1 = ga_grover_apply(1, 4);
    EXPECT_NEAR(p1.a_target, 1.0, 1e-15);
    EXPECT_NEAR(p1.a_bad, 0.0, 1e-15);
    EXPECT_THROW(ga_grover_apply(-1, 4), std::invalid_argument);
    for (int k = 0; k < 200; ++k) {
        const auto p = ga_grover_apply(k, 777);
        EXPECT_NEAR(std::hypot(p.a_target, p.a_bad), 1.0, tol_state);
    }
}

TEST(GroverApply, MatchesStateVectorSimulation) {
    for (std::size_t N : {4u, 16u, 64u, 256u}) {
        digital::StateVector s = digital::init_uniform(N);
        const auto kmax = 2 * digital::optimal_iterations(double(N));
        for (std::int64_t k = 0; k <= kmax; ++k) {
            const auto want = digital::plane_coordinates(s, 1);
            const auto got = ga_grover_apply(k, double(N));
            ASSERT_NEAR(got.a_target, want.a_target, 1e-10);
            ASSERT_NEAR(got.a_bad, want.a_bad, 1e-10);
            s = digital::grover_iterate(s, 1);
        }
    }
}

TEST(GroverApply, QuadraticSpeedup) {
    const double N = 1e6;
    const double ratio = ga_speedup_iterations(N) / (std::numbers::pi / 4 * std::sqrt(N));
    EXPECT_NEAR(ratio, 1.0, 2e-3);
}

TEST(FennerBasis, Properties) {
    for (int N = 2; N <= 1024; ++N) {
        const BasisChange bc = ga_fenner_basis_change(N);
        const auto& A = bc.A;
        EXPECT_NEAR(A[0][0] * A[1][1] - A[0][1] * A[1][0], 1.0, 1e-14);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                double aat = 0, ainv = 0;
                for (int k = 0; k < 2; ++k) {
                    aat += A[r][k] * A[c][k];
                    ainv += A[r][k] * bc.A_inv[k][c];
                }
                EXPECT_NEAR(aat, r == c, 1e-14);
                EXPECT_NEAR(ainv, r == c, 1e-14);
            }
        if (N % 97 == 0) {
            const auto [t, b] = fenner_frame(N);
            EXPECT_LT(max_abs_diff(t * b, e(3) * e(1)), 1e-14);
        }
    }
    const BasisChange big = ga_fenner_basis_change(1e12);
    EXPECT_NEAR(big.A[0][0], 1.0, 1e-12);
    EXPECT_NEAR(big.A[0][1], 0.0, 1e-6);
}

TEST(FixedPointSandwich, Reductions) {
    const Multivector v = initial_plane_vector(64);
    EXPECT_LT(max_abs_diff(ga_fixed_point_apply({}, v), v), 0.0 + 1e-300);
    const Multivector g = ga_grover_rotor(64).mv();
    const Multivector one_step = ga_fixed_point_apply({g}, v);
    const auto p = plane_of(one_step);
    const auto q = ga_grover_apply(1, 64);
    EXPECT_NEAR(p.a_target, q.a_target, 1e-14);
    EXPECT_NEAR(p.a_bad, q.a_bad, 1e-14);
    Multivector gk = one(), w = v;
    for (int k = 0; k < 7; ++k) gk = gk * g;
    w = gk * v * reverse(gk);
    EXPECT_LT(max_abs_diff(ga_fixed_point_apply(std::vector<Multivector>(7, g), v), w), 1e-13);
    EXPECT_THROW(ga_fixed_point_apply({g * 2.0}, v), std::domain_error);
    // mixed rotors preserve norm
    Rng rng(20);
    std::vector<Multivector> rs;
    for (int k = 0; k < 5; ++k) rs.push_back(ga::rotor_exp(e(1) * e(2), rng.uniform(-3, 3)));
    const Multivector out = ga_fixed_point_apply(rs, v);
    EXPECT_NEAR((out * out).scalar_part(), 1.0, 1e-13);
}
