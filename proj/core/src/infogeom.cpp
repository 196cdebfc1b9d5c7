#include "qsearch/infogeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsearch::infogeom {

namespace {

void require_domain(const ParametricFamily& f, double theta) {
    if (!(theta >= f.lo && theta <= f.hi)) throw std::domain_error("theta outside the family's domain");
    if (f.N == 0 || !f.p) throw std::invalid_argument("family has no components");
}

double central(const std::function<double(double)>& g, double theta) {
    const double h = fd_step(theta);
    return (g(theta + h) - g(theta - h)) / (2.0 * h);
}

}  // namespace

double fd_step(double theta) { return 1e-5 * std::max(1.0, std::abs(theta)); }

double d_p(const ParametricFamily& f, double theta, std::size_t l) {
    if (f.dp) return f.dp(theta, l);
    return central([&](double t) { return f.p(t, l); }, theta);
}

double d_phi(const ParametricFamily& f, double theta, std::size_t l) {
    if (!f.phi) return 0.0;
    if (f.dphi) return f.dphi(theta, l);
    return central([&](double t) { return f.phi(t, l); }, theta);
}

double d_sqrt_p(const ParametricFamily& f, double theta, std::size_t l) {
    if (f.dsqrt_p) return f.dsqrt_p(theta, l);
    return central([&](double t) { return std::sqrt(std::max(0.0, f.p(t, l))); }, theta);
}

double normalization_defect(const ParametricFamily& f, double lo, double hi, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1);
        double s = 0.0;
        for (std::size_t l = 0; l < f.N; ++l) s += f.p(t, l);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

ParametricFamily grover_family(std::size_t N) {
    if (N < 2) throw std::invalid_argument("grover family needs N >= 2");
    const double m = static_cast<double>(N - 1);
    ParametricFamily f;
    f.N = N;
    f.p = [m](double t, std::size_t l) {
        const double s = std::sin(t), c = std::cos(t);
        return l == 0 ? s * s : c * c / m;
    };
    f.dp = [m](double t, std::size_t l) {
        const double s2 = std::sin(2 * t);
        return l == 0 ? s2 : -s2 / m;
    };
    f.dsqrt_p = [m](double t, std::size_t l) {
        const double s = std::sin(t), c = std::cos(t);
        if (l == 0) return s >= 0 ? c : -c;
        return (c >= 0 ? -s : s) / std::sqrt(m);
    };
    f.lo = 0.0;
    f.hi = std::numbers::pi / 2.0;
    return f;
}

double fisher_rao(const ParametricFamily& f, double theta) {
    require_domain(f, theta);
    double s = 0.0;
    for (std::size_t l = 0; l < f.N; ++l) {
        const double d = d_sqrt_p(f, theta, l);
        s += d * d;
    }
    return 4.0 * s;
}

double fisher_information(const ParametricFamily& f, double theta) { return fisher_rao(f, theta); }

double fisher_rao_ratio_form(const ParametricFamily& f, double theta) {
    require_domain(f, theta);
    double s = 0.0;
    for (std::size_t l = 0; l < f.N; ++l) {
        const double p = f.p(theta, l);
        if (p <= 1e-12) continue;
        const double d = d_p(f, theta, l);
        s += d * d / p;
    }
    return s;
}

double fisher_score_form(const ParametricFamily& f, double theta) {
    require_domain(f, theta);
    const double h = 1e-4 * std::max(1.0, std::abs(theta));
    double s = 0.0;
    for (std::size_t l = 0; l < f.N; ++l) {
        const double p = f.p(theta, l);
        if (p <= 1e-12) continue;
        const double lp = std::log(f.p(theta + h, l)), l0 = std::log(p), lm = std::log(f.p(theta - h, l));
        s -= p * (lp - 2.0 * l0 + lm) / (h * h);
    }
    return s;
}

double wigner_yanase_line_element(const ParametricFamily& f, double theta, double dtheta) {
    const double F = fisher_rao(f, theta);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t l = 0; l < f.N; ++l) {
        const double p = f.p(theta, l);
        const double w = d_phi(f, theta, l);
        m1 += p * w;
        m2 += p * w * w;
    }
    return (F + 4.0 * std::max(0.0, m2 - m1 * m1)) * dtheta * dtheta;
}

std::vector<cplx> wavefunction(const ParametricFamily& f, double theta) {
    std::vector<cplx> psi(f.N);
    for (std::size_t l = 0; l < f.N; ++l)
        psi[l] = std::polar(std::sqrt(std::max(0.0, f.p(theta, l))), f.phase(theta, l));
    return psi;
}

double overlap_line_element(const ParametricFamily& f, double theta, double dtheta) {
    const cplx ov = inner(wavefunction(f, theta), wavefunction(f, theta + dtheta));
    return 4.0 * (1.0 - std::norm(ov));
}

double current_density(const ParametricFamily& f, double theta, std::size_t l) {
    require_domain(f, theta);
    if (l >= f.N) throw std::invalid_argument("component index out of range");
    return d_phi(f, theta, l);
}

double kinetic_energy(const ParametricFamily& f, double theta) {
    double s = fisher_rao(f, theta) / 4.0;
    for (std::size_t l = 0; l < f.N; ++l) {
        const double j = d_phi(f, theta, l);
        s += f.p(theta, l) * j * j;
    }
    return s;
}

double kinetic_energy_direct(const ParametricFamily& f, double theta) {
    require_domain(f, theta);
    const double h = fd_step(theta);
    const auto a = wavefunction(f, theta + h);
    const auto b = wavefunction(f, theta - h);
    double s = 0.0;
    for (std::size_t l = 0; l < f.N; ++l) s += std::norm((a[l] - b[l]) / (2.0 * h));
    return s;
}

std::vector<double> geodesic_residual(const PathPoint& pt, double L, double Ldot, double lambda) {
    if (!(L > 0.0)) throw std::domain_error("Lagrangian must be positive");
    if (pt.dq.size() != pt.q.size() || pt.ddq.size() != pt.q.size())
        throw std::invalid_argument("path point arrays differ in length");
    std::vector<double> r(pt.q.size());
    for (std::size_t l = 0; l < r.size(); ++l)
        r[l] = pt.ddq[l] - (Ldot / L) * pt.dq[l] + 0.5 * lambda * L * pt.q[l];
    return r;
}

PathPoint grover_geodesic(std::size_t N, double theta) {
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    const double k = 1.0 / std::sqrt(static_cast<double>(N - 1));
    const double s = std::sin(theta), c = std::cos(theta);
    PathPoint pt;
    pt.q.assign(N, c * k);
    pt.dq.assign(N, -s * k);
    pt.ddq.assign(N, -c * k);
    pt.q[0] = s;
    pt.dq[0] = c;
    pt.ddq[0] = -s;
    return pt;
}

GeodesicSolution solve_geodesic(std::size_t N, const std::vector<double>& q0, const std::vector<double>& qdot0,
                                double theta_end, double dtheta) {
    if (q0.size() != N || qdot0.size() != N) throw std::invalid_argument("initial data must have N components");
    if (!(dtheta > 0.0)) throw std::invalid_argument("dtheta must be > 0");
    if (!(theta_end >= 0.0)) throw std::invalid_argument("theta_end must be >= 0");
    double n0 = 0.0;
    for (double x : q0) n0 += x * x;
    if (std::abs(n0 - 1.0) > 1e-10) throw std::domain_error("initial amplitudes are not normalized");

    const auto steps = static_cast<std::size_t>(std::llround(std::ceil(theta_end / dtheta - 1e-9)));
    const double h = steps ? theta_end / static_cast<double>(steps) : 0.0;
    GeodesicSolution sol;
    sol.theta.reserve(steps + 1);
    sol.q.reserve(steps + 1);
    sol.dq.reserve(steps + 1);
    std::vector<double> q = q0, v = qdot0;
    sol.theta.push_back(0.0);
    sol.q.push_back(q);
    sol.dq.push_back(v);
    // Components decouple: q'' = -q for lambda = 1, L = 2.
    for (std::size_t i = 0; i < steps; ++i) {
        for (std::size_t l = 0; l < N; ++l) {
            const double y = q[l], w = v[l];
            const double k1q = w, k1v = -y;
            const double k2q = w + 0.5 * h * k1v, k2v = -(y + 0.5 * h * k1q);
            const double k3q = w + 0.5 * h * k2v, k3v = -(y + 0.5 * h * k2q);
            const double k4q = w + h * k3v, k4v = -(y + h * k3q);
            q[l] = y + h / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
            v[l] = w + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        }
        sol.theta.push_back(h * static_cast<double>(i + 1));
        sol.q.push_back(q);
        sol.dq.push_back(v);
    }
    for (std::size_t i = 0; i < sol.q.size(); ++i) {
        double s = 0.0;
        for (double x : sol.q[i]) s += x * x;
        sol.norm_drift = std::max(sol.norm_drift, std::abs(s - 1.0));
        if (i == 0 || i + 1 == sol.q.size()) continue;
        for (std::size_t l = 0; l < N; ++l) {
            const double qdd = (sol.q[i + 1][l] - 2.0 * sol.q[i][l] + sol.q[i - 1][l]) / (h * h);
            sol.residual_max = std::max(sol.residual_max, std::abs(qdd + sol.q[i][l]));
        }
    }
    return sol;
}

double christoffel(const std::function<double(double)>& metric, double theta,
                   const std::function<double(double)>& dmetric) {
    const double g = metric(theta);
    if (!(g > 0.0)) throw std::domain_error("metric must be positive");
    const double dg = dmetric ? dmetric(theta) : central(metric, theta);
    return 0.5 * dg / g;
}

static void require_overlap(double u) {
    if (!(u > 0.0) || u > 1.0) throw std::invalid_argument("|U_fi| must lie in (0, 1]");
}

double wy_step_length(double u) {
    require_overlap(u);
    return 16.0 * u * u * (1.0 - u * u);
}

double wy_total_length(double u) {
    require_overlap(u);
    return 4.0 * (1.0 - u * u);
}

double steps_estimate(double u) {
    require_overlap(u);
    if (u == 1.0) throw std::domain_error("|U_fi| = 1: zero step length, step count undefined");
    return std::sqrt(wy_total_length(u) / wy_step_length(u));
}

std::vector<cplx> grover_step(const CMatrix& U, std::size_t i, std::size_t f, const std::vector<cplx>& psi) {
    std::vector<cplx> v = U.apply(psi);
    v[f] = -v[f];
    v = U.apply_adjoint(v);
    v[i] = -v[i];
    for (auto& x : v) x = -x;
    return v;
}

StepGeometry verify_step_geometry(const CMatrix& U, std::size_t i, std::size_t f, int steps) {
    const std::size_t N = U.n();
    if (i >= N || f >= N) throw std::invalid_argument("basis index out of range");
    if (steps < 1) throw std::invalid_argument("need at least one step");
    if (unitarity_defect(U) > 1e-10) throw std::domain_error("U is not unitary");

    StepGeometry g;
    g.U_fi = U(f, i);
    g.u = std::abs(g.U_fi);
    const double u2 = g.u * g.u;

    std::vector<cplx> ket_i(N), ket_f(N);
    ket_i[i] = 1.0;
    ket_f[f] = 1.0;
    const std::vector<cplx> tilde_f = U.apply_adjoint(ket_f);

    std::vector<cplx> psi = ket_i;
    for (int s = 0; s < steps; ++s) {
        std::vector<cplx> next = grover_step(U, i, f, psi);
        g.step_lengths.push_back(4.0 * (1.0 - std::norm(inner(psi, next))));
        g.norms.push_back(std::sqrt(norm2(next)));
        if (s == 0) {
            double r = 0.0;
            for (std::size_t x = 0; x < N; ++x)
                r = std::max(r, std::abs(next[x] - ((1.0 - 4.0 * u2) * ket_i[x] + 2.0 * g.U_fi * tilde_f[x])));
            g.step1_residual = r;
        }
        psi = std::move(next);
    }

    const auto G_i = grover_step(U, i, f, ket_i);
    const auto G_tf = grover_step(U, i, f, tilde_f);
    g.restricted = Mat2c::from(inner(ket_i, G_i), inner(ket_i, G_tf), inner(tilde_f, G_i), inner(tilde_f, G_tf));
    g.restricted_expected = Mat2c::from(1.0 - 2.0 * u2, -std::conj(g.U_fi),
                                        g.U_fi * (1.0 - 4.0 * u2) + 2.0 * g.U_fi, 1.0 - 2.0 * u2);
    g.det_restricted = g.restricted.det().real();
    return g;
}

std::vector<double> boltzmann_weights(const std::vector<double>& energy, double beta) {
    if (energy.empty()) throw std::invalid_argument("empty energy table");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    const double e0 = *std::min_element(energy.begin(), energy.end());
    std::vector<double> w(energy.size());
    double z = 0.0;
    for (std::size_t x = 0; x < energy.size(); ++x) z += (w[x] = std::exp(-beta * (energy[x] - e0)));
    for (double& v : w) v /= z;
    return w;
}

double thermal_fisher(const std::vector<double>& energy, const std::vector<double>& denergy, double beta) {
    if (denergy.size() != energy.size()) throw std::invalid_argument("energy and derivative tables differ in size");
    const auto p = boltzmann_weights(energy, beta);
    double mean = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) mean += p[x] * denergy[x];
    double var = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) var += p[x] * (mean - denergy[x]) * (mean - denergy[x]);
    return beta * beta * var;
}

double thermal_fisher_beta(const std::vector<double>& energy, double beta) {
    const auto p = boltzmann_weights(energy, beta);
    double mean = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) mean += p[x] * energy[x];
    // score d log p / d beta = <E> - E
    double f = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        const double score = mean - energy[x];
        f += p[x] * score * score;
    }
    return f;
}

}  // namespace qsearch::infogeom
