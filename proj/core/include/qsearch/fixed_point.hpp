#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "qsearch/digital.hpp"
#include "qsearch/infogeom.hpp"
#include "qsearch/linalg.hpp"

namespace qsearch::fixedpoint {

inline constexpr int kMaxDepth = 5;

// s - (1 - e^{i phi}) <a|s> a
digital::StateVector selective_phase(const digital::StateVector& s, const digital::StateVector& anchor, double phi);

enum class Source { Zero, Uniform };

struct RecursionState {
    int k = 0;
    cplx c_closed;         // coefficient track
    double eps_closed = 0.0;
    cplx c_simulated;      // <target|U_k|source>
    double eps_simulated = 0.0;  // weight outside the target
    digital::StateVector state;  // U_k |source>
};

class FixedPointSearch {
public:
    FixedPointSearch(CMatrix U0, std::size_t target, Source source = Source::Zero);

    std::size_t N() const { return U0_.n(); }
    const digital::StateVector& source() const { return source_; }
    // 1 - |<target|U0|source>|^2
    double epsilon() const;

    std::vector<cplx> apply(int k, std::vector<cplx> v) const;
    std::vector<cplx> apply_adjoint(int k, std::vector<cplx> v) const;

    std::vector<RecursionState> run(int depth) const;

private:
    void phase_target(std::vector<cplx>& v, double phi) const;
    void phase_source(std::vector<cplx>& v, double phi) const;

    CMatrix U0_;
    std::size_t target_;
    digital::StateVector source_;
};

std::vector<RecursionState> fixed_point_run(const CMatrix& U0, std::size_t target, int depth,
                                            Source source = Source::Zero);

// Unitary on N states whose first column has |<0|U|0>|^2 = 1 - eps.
CMatrix epsilon_unitary(double eps, std::size_t N = 2);

// eps^(3^k)
double failure_closed(double eps, int k);

struct IdentityCheck {
    double lhs_modulus = 0.0;   // |e^{i pi/3} + eps|^2
    double rhs_modulus = 0.0;   // 1 + eps + eps^2
    double lhs_product = 0.0;   // |e^{i pi/3}(e^{i pi/3} + eps)|^2 (1 - eps)
    double rhs_product = 0.0;   // 1 - eps^3
    double deviation() const;
};
IdentityCheck coefficient_identity(double eps);
bool coefficient_identity_check(double eps, double tol = 1e-14);

// ---- damped family ----

struct DampedFamily {
    std::function<double(double)> xi;
    std::function<double(double)> dxi;  // empty -> finite difference
};

DampedFamily constant_xi(double c);
DampedFamily exponential_xi(double A);  // xi = A e^{-theta}

double damped_fisher(const DampedFamily& f, double theta);
double damped_kinetic(const DampedFamily& f, double theta);
infogeom::ParametricFamily as_parametric(const DampedFamily& f);

struct DampedParams {
    double L0 = 2.0;
    double gamma = 1.0;
    double A = 1.0;
    double B = 0.0;
};

// sqrt(L0/(2 gamma^2)) e^{-gamma theta/2} [A J1(z) + B Y1(z)], z = sqrt(2 L0/gamma^2) e^{-gamma theta/2}
double bessel_solution(double theta, const DampedParams& p);
double bessel_solution_derivative(double theta, const DampedParams& p);

// q'' + gamma q' + (L0/2) e^{-gamma theta} q, applied to a sampled function
// with fourth-order finite differences.
double damped_residual(const std::function<double(double)>& q, double theta, double L0, double gamma,
                       double h = 1e-3);

struct DampedSolution {
    std::vector<double> theta;
    std::vector<double> q;
    std::vector<double> dq;
};

DampedSolution damped_geodesic_solve(double L0, double gamma, double q0, double qdot0, double theta_end,
                                     double dtheta = 1e-3);

std::pair<double, double> asymptotic_probabilities(double A, double theta);

// Least-squares slope of log q^2 for the Bessel solution over [lo, hi].
double decay_exponent_fit(const DampedParams& p, double lo, double hi, int samples = 401);

}  // namespace qsearch::fixedpoint
