#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qsearch/linalg.hpp"

namespace qsearch::infogeom {

using ComponentFn = std::function<double(double theta, std::size_t l)>;

// One-parameter family of probabilities p_l(theta) and phases phi_l(theta).
// Missing derivative handles fall back to central finite differences.
struct ParametricFamily {
    std::size_t N = 0;
    ComponentFn p;
    ComponentFn phi;         // empty -> 0
    ComponentFn dp;          // d p_l / d theta
    ComponentFn dphi;        // d phi_l / d theta
    ComponentFn dsqrt_p;     // d sqrt(p_l) / d theta
    double lo = -1e300;
    double hi = 1e300;

    double phase(double theta, std::size_t l) const { return phi ? phi(theta, l) : 0.0; }
};

// Central difference step h = 1e-5 max(1, |theta|).
double fd_step(double theta);

double d_p(const ParametricFamily& f, double theta, std::size_t l);
double d_phi(const ParametricFamily& f, double theta, std::size_t l);
double d_sqrt_p(const ParametricFamily& f, double theta, std::size_t l);

// max |sum_l p_l - 1| over `samples` points of [lo, hi]
double normalization_defect(const ParametricFamily& f, double lo, double hi, int samples);

ParametricFamily grover_family(std::size_t N);

// 4 sum (d sqrt p)^2
double fisher_rao(const ParametricFamily& f, double theta);
double fisher_information(const ParametricFamily& f, double theta);
// sum pdot^2 / p over components with p > 1e-12
double fisher_rao_ratio_form(const ParametricFamily& f, double theta);
// -<d^2 log p> by finite differences
double fisher_score_form(const ParametricFamily& f, double theta);

double wigner_yanase_line_element(const ParametricFamily& f, double theta, double dtheta);
// 4 (1 - |<psi(theta)|psi(theta + dtheta)>|^2)
double overlap_line_element(const ParametricFamily& f, double theta, double dtheta);
std::vector<cplx> wavefunction(const ParametricFamily& f, double theta);

double current_density(const ParametricFamily& f, double theta, std::size_t l);
// F/4 + sum p J^2
double kinetic_energy(const ParametricFamily& f, double theta);
// <psi'|psi'> with psi' from finite differences of the wavefunction
double kinetic_energy_direct(const ParametricFamily& f, double theta);

struct PathPoint {
    std::vector<double> q, dq, ddq;
};

// q'' - (Ldot/L) q' + (lambda/2) L q, per component.
std::vector<double> geodesic_residual(const PathPoint& pt, double L, double Ldot, double lambda = 1.0);
// q_0 = sin(theta), q_l = cos(theta)/sqrt(N-1), analytic derivatives
PathPoint grover_geodesic(std::size_t N, double theta);

struct GeodesicSolution {
    std::vector<double> theta;
    std::vector<std::vector<double>> q;     // q[i][l]
    std::vector<std::vector<double>> dq;
    double residual_max = 0.0;              // finite-difference residual on the grid
    double norm_drift = 0.0;                // max |sum q^2 - 1|
};

// RK4 on q'' + q = 0 from theta = 0 to theta_end.
GeodesicSolution solve_geodesic(std::size_t N, const std::vector<double>& q0, const std::vector<double>& qdot0,
                                double theta_end, double dtheta);

// 1-D Christoffel symbol (1/2) g^-1 g'; dmetric empty -> finite difference.
double christoffel(const std::function<double(double)>& metric, double theta,
                   const std::function<double(double)>& dmetric = {});

double wy_step_length(double u);
double wy_total_length(double u);
double steps_estimate(double u);

struct StepGeometry {
    double u = 0.0;                 // |U_fi|
    cplx U_fi;
    std::vector<double> step_lengths;
    std::vector<double> norms;
    double step1_residual = 0.0;    // |G psi_i - ((1-4u^2) psi_i + 2 U_fi U^-1 psi_f)|
    Mat2c restricted;               // matrix elements on span{|i>, U^-1|f>}
    Mat2c restricted_expected;
    double det_restricted = 0.0;
};

// Iterates G = -I_i U^-1 I_f U from |i> for `steps` steps.
StepGeometry verify_step_geometry(const CMatrix& U, std::size_t i, std::size_t f, int steps);
std::vector<cplx> grover_step(const CMatrix& U, std::size_t i, std::size_t f, const std::vector<cplx>& psi);

// beta^2 Var_p(dE/dtheta) under Boltzmann weights at inverse temperature beta.
double thermal_fisher(const std::vector<double>& energy, const std::vector<double>& denergy, double beta);
// theta = beta: Fisher information of p(x|beta), computed from the score.
double thermal_fisher_beta(const std::vector<double>& energy, double beta);
std::vector<double> boltzmann_weights(const std::vector<double>& energy, double beta);

}  // namespace qsearch::infogeom
