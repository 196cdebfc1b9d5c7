#include "qsearch/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsearch/bessel.hpp"

namespace qsearch::fixedpoint {

namespace {

constexpr double kThird = std::numbers::pi / 3.0;

const cplx& omega() {
    static const cplx w = std::polar(1.0, kThird);
    return w;
}

}  // namespace

digital::StateVector selective_phase(const digital::StateVector& s, const digital::StateVector& anchor, double phi) {
    if (s.size() != anchor.size()) throw std::invalid_argument("state and anchor differ in size");
    const cplx f = (1.0 - std::polar(1.0, phi)) * inner(anchor.amps(), s.amps());
    digital::StateVector out = s;
    for (std::size_t x = 0; x < out.size(); ++x) out[x] -= f * anchor[x];
    return out;
}

FixedPointSearch::FixedPointSearch(CMatrix U0, std::size_t target, Source source)
    : U0_(std::move(U0)), target_(target) {
    const std::size_t n = U0_.n();
    if (n < 2) throw std::invalid_argument("fixed-point search needs N >= 2");
    if (target >= n) throw std::invalid_argument("target index out of range");
    if (unitarity_defect(U0_) > 1e-10) throw std::domain_error("U0 is not unitary");
    source_ = source == Source::Zero ? digital::StateVector(std::vector<cplx>(n)) : digital::init_uniform(n);
    if (source == Source::Zero) source_[0] = 1.0;
}

double FixedPointSearch::epsilon() const {
    const auto v = U0_.apply(source_.amps());
    double bad = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x)
        if (x != target_) bad += std::norm(v[x]);
    return bad;
}

void FixedPointSearch::phase_target(std::vector<cplx>& v, double phi) const { v[target_] *= std::polar(1.0, phi); }

void FixedPointSearch::phase_source(std::vector<cplx>& v, double phi) const {
    const cplx f = (1.0 - std::polar(1.0, phi)) * inner(source_.amps(), v);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] -= f * source_[x];
}

// U_{k} = U_{k-1} R_s U_{k-1}^dagger R_t U_{k-1}
std::vector<cplx> FixedPointSearch::apply(int k, std::vector<cplx> v) const {
    if (k == 0) return U0_.apply(v);
    v = apply(k - 1, std::move(v));
    phase_target(v, kThird);
    v = apply_adjoint(k - 1, std::move(v));
    phase_source(v, kThird);
    return apply(k - 1, std::move(v));
}

std::vector<cplx> FixedPointSearch::apply_adjoint(int k, std::vector<cplx> v) const {
    if (k == 0) return U0_.apply_adjoint(v);
    v = apply_adjoint(k - 1, std::move(v));
    phase_source(v, -kThird);
    v = apply(k - 1, std::move(v));
    phase_target(v, -kThird);
    return apply_adjoint(k - 1, std::move(v));
}

std::vector<RecursionState> FixedPointSearch::run(int depth) const {
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    if (depth > kMaxDepth) throw std::invalid_argument("depth > 5 exceeds the operator word-length bound");
    std::vector<RecursionState> out;
    for (int k = 0; k <= depth; ++k) {
        RecursionState st;
        st.k = k;
        st.state = digital::StateVector(apply(k, source_.amps()));
        st.c_simulated = st.state[target_];
        for (std::size_t x = 0; x < st.state.size(); ++x)
            if (x != target_) st.eps_simulated += std::norm(st.state[x]);
        if (k == 0) {
            st.c_closed = st.c_simulated;
            st.eps_closed = st.eps_simulated;
        } else {
            const RecursionState& prev = out.back();
            st.c_closed = omega() * (omega() + prev.eps_closed) * prev.c_closed;
            st.eps_closed = prev.eps_closed * prev.eps_closed * prev.eps_closed;
        }
        out.push_back(std::move(st));
    }
    return out;
}

std::vector<RecursionState> fixed_point_run(const CMatrix& U0, std::size_t target, int depth, Source source) {
    return FixedPointSearch(U0, target, source).run(depth);
}

CMatrix epsilon_unitary(double eps, std::size_t N) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    CMatrix U = CMatrix::identity(N);
    const double c = std::sqrt(1.0 - eps), s = std::sqrt(eps);
    U(0, 0) = c;
    U(0, 1) = -s;
    U(1, 0) = s;
    U(1, 1) = c;
    return U;
}

double failure_closed(double eps, int k) { return std::pow(eps, std::pow(3.0, k)); }

double IdentityCheck::deviation() const {
    return std::max(std::abs(lhs_modulus - rhs_modulus), std::abs(lhs_product - rhs_product));
}

IdentityCheck coefficient_identity(double eps) {
    IdentityCheck c;
    c.lhs_modulus = std::norm(omega() + eps);
    c.rhs_modulus = 1.0 + eps + eps * eps;
    c.lhs_product = std::norm(omega() * (omega() + eps)) * (1.0 - eps);
    c.rhs_product = 1.0 - eps * eps * eps;
    return c;
}

bool coefficient_identity_check(double eps, double tol) { return coefficient_identity(eps).deviation() <= tol; }

// ---- damped family ----

DampedFamily constant_xi(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
}

DampedFamily exponential_xi(double A) {
    return {[A](double t) { return A * std::exp(-t); }, [A](double t) { return -A * std::exp(-t); }};
}

namespace {

double xi_derivative(const DampedFamily& f, double theta) {
    if (f.dxi) return f.dxi(theta);
    const double h = infogeom::fd_step(theta);
    return (f.xi(theta + h) - f.xi(theta - h)) / (2.0 * h);
}

double checked_xi(const DampedFamily& f, double theta) {
    const double xi = f.xi(theta);
    if (!(xi > 0.0 && xi <= 1.0)) throw std::domain_error("xi(theta) must lie in (0, 1]");
    if (!(1.0 - xi * std::exp(-theta) > 0.0)) throw std::domain_error("1 - xi e^{-theta} must be > 0");
    return xi;
}

}  // namespace

double damped_fisher(const DampedFamily& f, double theta) {
    const double xi = checked_xi(f, theta);
    const double d = xi_derivative(f, theta) - xi;
    const double decay = std::exp(-theta);
    return d * d / (xi * (1.0 - xi * decay)) * decay;
}

double damped_kinetic(const DampedFamily& f, double theta) { return damped_fisher(f, theta) / 4.0; }

infogeom::ParametricFamily as_parametric(const DampedFamily& f) {
    infogeom::ParametricFamily pf;
    pf.N = 2;
    pf.p = [f](double t, std::size_t l) {
        const double p1 = f.xi(t) * std::exp(-t);
        return l == 1 ? p1 : 1.0 - p1;
    };
    pf.dp = [f](double t, std::size_t l) {
        const double d = (xi_derivative(f, t) - f.xi(t)) * std::exp(-t);
        return l == 1 ? d : -d;
    };
    return pf;
}

namespace {

struct BesselScales {
    double c_over_z0;
    double z;
};

BesselScales scales(double theta, const DampedParams& p) {
    if (!(p.L0 > 0.0) || !(p.gamma > 0.0)) throw std::invalid_argument("L0 and gamma must be > 0");
    const double C = std::sqrt(p.L0 / (2.0 * p.gamma * p.gamma));
    const double z0 = std::sqrt(2.0 * p.L0 / (p.gamma * p.gamma));
    return {C / z0, z0 * std::exp(-0.5 * p.gamma * theta)};
}

}  // namespace

// e^{-gamma theta/2} = z / z0, so q = (C/z0) [A z J1(z) + B z Y1(z)].
double bessel_solution(double theta, const DampedParams& p) {
    const auto s = scales(theta, p);
    double v = 0.0;
    if (p.A != 0.0) v += p.A * s.z * bessel::j1(s.z);
    if (p.B != 0.0) v += p.B * bessel::z_y1(s.z);
    return s.c_over_z0 * v;
}

// Uses (z Z1)' = z Z0 and dz/dtheta = -gamma z / 2.
double bessel_solution_derivative(double theta, const DampedParams& p) {
    const auto s = scales(theta, p);
    if (s.z == 0.0) return 0.0;
    double v = 0.0;
    if (p.A != 0.0) v += p.A * bessel::j0(s.z);
    if (p.B != 0.0) v += p.B * bessel::y0(s.z);
    return -0.5 * p.gamma * s.c_over_z0 * s.z * s.z * v;
}

double damped_residual(const std::function<double(double)>& q, double theta, double L0, double gamma, double h) {
    const double qp2 = q(theta + 2 * h), qp1 = q(theta + h), q0 = q(theta), qm1 = q(theta - h), qm2 = q(theta - 2 * h);
    const double d1 = (-qp2 + 8 * qp1 - 8 * qm1 + qm2) / (12 * h);
    const double d2 = (-qp2 + 16 * qp1 - 30 * q0 + 16 * qm1 - qm2) / (12 * h * h);
    return d2 + gamma * d1 + 0.5 * L0 * std::exp(-gamma * theta) * q0;
}

DampedSolution damped_geodesic_solve(double L0, double gamma, double q0, double qdot0, double theta_end,
                                     double dtheta) {
    if (!(L0 >= 0.0) || !(gamma >= 0.0)) throw std::invalid_argument("L0 and gamma must be >= 0");
    if (!(dtheta > 0.0) || !(theta_end >= 0.0)) throw std::invalid_argument("need dtheta > 0 and theta_end >= 0");
    const auto steps = static_cast<std::size_t>(std::ceil(theta_end / dtheta - 1e-9));
    const double h = steps ? theta_end / static_cast<double>(steps) : 0.0;
    auto accel = [&](double t, double q, double v) { return -gamma * v - 0.5 * L0 * std::exp(-gamma * t) * q; };
    DampedSolution sol;
    sol.theta.reserve(steps + 1);
    sol.q.reserve(steps + 1);
    sol.dq.reserve(steps + 1);
    double q = q0, v = qdot0;
    sol.theta.push_back(0.0);
    sol.q.push_back(q);
    sol.dq.push_back(v);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = h * static_cast<double>(i);
        const double k1q = v, k1v = accel(t, q, v);
        const double k2q = v + 0.5 * h * k1v, k2v = accel(t + 0.5 * h, q + 0.5 * h * k1q, k2q);
        const double k3q = v + 0.5 * h * k2v, k3v = accel(t + 0.5 * h, q + 0.5 * h * k2q, k3q);
        const double k4q = v + h * k3v, k4v = accel(t + h, q + h * k3q, k4q);
        q += h / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        sol.theta.push_back(h * static_cast<double>(i + 1));
        sol.q.push_back(q);
        sol.dq.push_back(v);
    }
    return sol;
}

std::pair<double, double> asymptotic_probabilities(double A, double theta) {
    if (!(A > 0.0 && A <= 1.0)) throw std::invalid_argument("A must lie in (0, 1]");
    const double p1 = A * std::exp(-2.0 * theta);
    if (p1 > 1.0) throw std::domain_error("asymptotic form invalid: p1 > 1 for theta < 0");
    return {1.0 - p1, p1};
}

double decay_exponent_fit(const DampedParams& p, double lo, double hi, int samples) {
    if (samples < 2 || !(hi > lo)) throw std::invalid_argument("fit needs hi > lo and >= 2 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < samples; ++i) {
        const double t = lo + (hi - lo) * i / (samples - 1);
        const double q = bessel_solution(t, p);
        const double y = std::log(q * q);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
    }
    const double n = samples;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qsearch::fixedpoint
