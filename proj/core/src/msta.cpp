#include "qsearch/msta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsearch::msta {

Multivector e(int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("e_k needs k in {1,2,3}");
    return Multivector::basis(cl3(), k);
}

Multivector ie(int k) { return Multivector::pseudoscalar(cl3()) * e(k); }

namespace {

struct EvenUnits {
    std::array<Multivector, 4> u;
    std::array<std::uint32_t, 4> mask{};
    std::array<double, 4> sign{};
    // u[a] u[b] = prod_sign[a][b] * u[prod_digit[a][b]]
    std::array<std::array<int, 4>, 4> prod_digit{};
    std::array<std::array<double, 4>, 4> prod_sign{};

    EvenUnits() {
        u = {Multivector::scalar(cl3(), 1.0), ie(1), ie(2), ie(3)};
        for (int d = 0; d < 4; ++d)
            for (std::uint32_t m = 0; m < 8; ++m)
                if (u[d][m] != 0.0) {
                    mask[d] = m;
                    sign[d] = u[d][m];
                }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                Multivector p = u[a] * u[b];
                for (int d = 0; d < 4; ++d)
                    if (p[mask[d]] != 0.0) {
                        prod_digit[a][b] = d;
                        prod_sign[a][b] = p[mask[d]] * sign[d];
                    }
            }
    }

    std::array<double, 4> components(const Multivector& mv) const {
        std::array<double, 4> a{};
        for (int d = 0; d < 4; ++d) a[d] = mv[mask[d]] * sign[d];
        return a;
    }
};

const EvenUnits& units() {
    static const EvenUnits t;
    return t;
}

Multivector even_from(const std::array<double, 4>& a) {
    const auto& t = units();
    Multivector m(cl3());
    for (int d = 0; d < 4; ++d) m[t.mask[d]] = a[d] * t.sign[d];
    return m;
}

void require_even(const Multivector& mv) {
    if (!(mv.sig() == cl3())) throw std::invalid_argument("qubit multivector must live in Cl(3)");
    if (!mv.is_even(ga::tol_alg)) throw std::invalid_argument("qubit multivector has odd-grade part");
}

}  // namespace

GaQubit qubit_to_mv(cplx alpha, cplx beta, bool allow_unnormalized) {
    const double n = std::norm(alpha) + std::norm(beta);
    if (!allow_unnormalized && std::abs(n - 1.0) > tol_state)
        throw std::domain_error("qubit is not normalized");
    return {even_from({alpha.real(), beta.imag(), -beta.real(), alpha.imag()})};
}

std::pair<cplx, cplx> mv_to_qubit(const GaQubit& psi) {
    require_even(psi.mv);
    const auto a = units().components(psi.mv);
    return {cplx{a[0], a[3]}, cplx{-a[2], a[1]}};
}

GaQubit pauli_action(int k, const GaQubit& psi) {
    if (k < 1 || k > 3) throw std::invalid_argument("Pauli index must be 1, 2 or 3");
    return {e(k) * psi.mv * e(3)};
}

GaQubit complex_unit_action(const GaQubit& psi) { return {psi.mv * ie(3)}; }

ComplexPair ga_inner(const GaQubit& psi, const GaQubit& phi) {
    Multivector p = reverse(psi.mv) * phi.mv;
    return {p.scalar_part(), -(p * ie(3)).scalar_part()};
}

Multivector density_pure(const GaQubit& psi) {
    require_even(psi.mv);
    Multivector half_proj = (Multivector::scalar(cl3(), 1.0) + e(3)) * 0.5;
    return psi.mv * half_proj * reverse(psi.mv);
}

Multivector density_mixed(const std::vector<double>& weights, const std::vector<GaQubit>& states) {
    if (weights.size() != states.size() || weights.empty())
        throw std::invalid_argument("weights and states must be non-empty and of equal length");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::domain_error("mixture weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > tol_state) throw std::domain_error("mixture weights must sum to 1");
    Multivector rho(cl3());
    for (std::size_t i = 0; i < weights.size(); ++i) rho += density_pure(states[i]) * weights[i];
    return rho;
}

// ---- registers ----

GaRegister::GaRegister(int n) : n_(n) {
    if (n < 1 || n > 8) throw std::invalid_argument("register size must be 1..8 particles");
    c_.assign(std::size_t{1} << (2 * n), 0.0);
}

int GaRegister::digit(std::size_t index, int particle) const {
    return static_cast<int>((index >> (2 * (n_ - particle))) & 3u);
}

GaRegister GaRegister::scalar(int n, double s) {
    GaRegister r(n);
    r.c_[0] = s;
    return r;
}

GaRegister GaRegister::unit(int n, int particle, int digit, double value) {
    GaRegister r(n);
    if (particle < 1 || particle > n) throw std::invalid_argument("particle index out of range");
    r.c_[static_cast<std::size_t>(digit) << (2 * (n - particle))] = value;
    return r;
}

GaRegister GaRegister::embed(int n, int particle, const Multivector& even_mv) {
    require_even(even_mv);
    const auto a = units().components(even_mv);
    GaRegister r(n);
    for (int d = 0; d < 4; ++d) r += unit(n, particle, d, a[d]);
    return r;
}

GaRegister& GaRegister::operator+=(const GaRegister& o) {
    if (o.n_ != n_) throw std::invalid_argument("register size mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    correlated_ = correlated_ && o.correlated_;
    return *this;
}

GaRegister& GaRegister::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

GaRegister operator+(GaRegister a, const GaRegister& b) { return a += b; }
GaRegister operator-(GaRegister a, const GaRegister& b) {
    GaRegister nb = b;
    nb *= -1.0;
    return a += nb;
}
GaRegister operator*(GaRegister a, double s) { return a *= s; }

GaRegister operator*(const GaRegister& a, const GaRegister& b) {
    if (a.n() != b.n()) throw std::invalid_argument("register size mismatch");
    const int n = a.n();
    const auto& t = units();
    std::vector<std::size_t> nz_a, nz_b;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0.0) nz_a.push_back(i);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (b[j] != 0.0) nz_b.push_back(j);
    GaRegister out(n);
    for (std::size_t i : nz_a)
        for (std::size_t j : nz_b) {
            std::size_t idx = 0;
            double sign = 1.0;
            for (int s = 0; s < 2 * n; s += 2) {
                const int da = static_cast<int>((i >> s) & 3u);
                const int db = static_cast<int>((j >> s) & 3u);
                idx |= static_cast<std::size_t>(t.prod_digit[da][db]) << s;
                sign *= t.prod_sign[da][db];
            }
            out[idx] += sign * a[i] * b[j];
        }
    return out;
}

double max_abs_diff(const GaRegister& a, const GaRegister& b) {
    if (a.n() != b.n()) throw std::invalid_argument("register size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double dot(const GaRegister& a, const GaRegister& b) {
    if (a.n() != b.n()) throw std::invalid_argument("register size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

static void require_correlator_size(int n) {
    if (n < 2 || n > 8) throw std::invalid_argument("correlator needs 2 <= n <= 8");
}

GaRegister correlator(int n) {
    require_correlator_size(n);
    GaRegister E = GaRegister::scalar(n, 1.0);
    const GaRegister ie3_1 = GaRegister::unit(n, 1, 3);
    for (int b = 2; b <= n; ++b) {
        GaRegister factor = GaRegister::scalar(n, 0.5) - ie3_1 * GaRegister::unit(n, b, 3) * 0.5;
        E = E * factor;
    }
    E.set_correlated(true);
    return E;
}

GaRegister correlator_J(int n) {
    GaRegister J = correlator(n) * GaRegister::unit(n, 1, 3);
    J.set_correlated(true);
    return J;
}

GaRegister apply_correlator(const GaRegister& reg) {
    GaRegister r = reg * correlator(reg.n());
    r.set_correlated(true);
    return r;
}

GaRegister right_ie3(const GaRegister& reg, int particle) {
    GaRegister r = reg * GaRegister::unit(reg.n(), particle, 3);
    r.set_correlated(reg.correlated());
    return r;
}

std::size_t projection_rank(int n) {
    const GaRegister E = correlator(n);
    const double trace = static_cast<double>(E.size()) * E[0];
    return static_cast<std::size_t>(std::llround(trace));
}

std::size_t projection_rank_numeric(int n) {
    require_correlator_size(n);
    if (n > 5) throw std::invalid_argument("numeric rank limited to n <= 5");
    const GaRegister E = correlator(n);
    const std::size_t dim = E.size();
    // Column j holds the image of basis element j.
    std::vector<std::vector<double>> rows(dim, std::vector<double>(dim, 0.0));
    for (std::size_t j = 0; j < dim; ++j) {
        GaRegister basis(n);
        basis[j] = 1.0;
        GaRegister img = basis * E;
        for (std::size_t i = 0; i < dim; ++i) rows[i][j] = img[i];
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < dim; ++col) {
        std::size_t piv = rank;
        for (std::size_t r = rank + 1; r < dim; ++r)
            if (std::abs(rows[r][col]) > std::abs(rows[piv][col])) piv = r;
        if (std::abs(rows[piv][col]) < 1e-12) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = rank + 1; r < dim; ++r) {
            const double f = rows[r][col] / rows[rank][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

namespace {

// phi_x = prod_j psi_{x_j}, |0> -> 1, |1> -> -ie2; particle 1 is the top bit.
GaRegister basis_product(int n, std::size_t x) {
    GaRegister phi = GaRegister::scalar(n, 1.0);
    for (int a = 1; a <= n; ++a)
        if ((x >> (n - a)) & 1u) phi = phi * GaRegister::unit(n, a, 2, -1.0);
    return phi;
}

}  // namespace

GaRegister state_to_register(const digital::StateVector& s, int n) {
    if (s.size() != (std::size_t{1} << n)) throw std::invalid_argument("state size must be 2^n");
    const GaRegister E = correlator(n);
    const GaRegister J = correlator_J(n);
    GaRegister out(n);
    for (std::size_t x = 0; x < s.size(); ++x) {
        if (s[x] == cplx{}) continue;
        const GaRegister phi = basis_product(n, x);
        out += (phi * E) * s[x].real();
        out += (phi * J) * s[x].imag();
    }
    out.set_correlated(true);
    return out;
}

digital::StateVector register_to_state(const GaRegister& reg) {
    const int n = reg.n();
    const GaRegister E = correlator(n);
    const GaRegister J = correlator_J(n);
    const double norm = std::ldexp(1.0, -(n - 1));
    std::vector<cplx> amps(std::size_t{1} << n);
    for (std::size_t x = 0; x < amps.size(); ++x) {
        const GaRegister phi = basis_product(n, x);
        amps[x] = {dot(reg, phi * E) / norm, dot(reg, phi * J) / norm};
    }
    return digital::StateVector(std::move(amps));
}

// ---- search plane ----

static double plane_theta(double N) {
    if (!(N >= 2.0)) throw std::invalid_argument("N must be >= 2");
    return std::asin(1.0 / std::sqrt(N));
}

static Multivector plane_bivector() { return e(3) * e(1); }

Rotor ga_grover_rotor(double N) {
    const double t = plane_theta(N);
    return Rotor(plane_bivector() * std::sin(t) + std::cos(t));
}

Multivector ga_grover_multivector(double N) {
    plane_theta(N);
    return plane_bivector() * (2.0 * std::sqrt(N - 1.0) / N) + (N - 2.0) / N;
}

Multivector initial_plane_vector(double N) {
    const double t = plane_theta(N);
    return e(3) * std::sin(t) + e(1) * std::cos(t);
}

digital::SearchPlaneState plane_of(const Multivector& v) { return {v[0b100], v[0b001]}; }

digital::SearchPlaneState ga_grover_apply(std::int64_t k, double N) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    const Rotor g = ga_grover_rotor(N);
    Multivector v = initial_plane_vector(N);
    for (std::int64_t i = 0; i < k; ++i) v = g.apply(v);
    return plane_of(v);
}

std::int64_t ga_speedup_iterations(double N) {
    const Rotor g = ga_grover_rotor(N);
    const double goal = std::sqrt(1.0 - 1.0 / N);
    Multivector v = initial_plane_vector(N);
    // Stop one quarter period past the peak.
    const auto limit = static_cast<std::int64_t>(std::ceil(std::numbers::pi / (2.0 * plane_theta(N)))) + 1;
    for (std::int64_t k = 0; k <= limit; ++k) {
        if (plane_of(v).a_target >= goal * (1.0 - 1e-15)) return k;
        v = g.apply(v);
    }
    throw std::domain_error("target amplitude threshold never reached");
}

BasisChange ga_fenner_basis_change(double N) {
    plane_theta(N);
    const double a = 1.0 / std::sqrt(N);
    const double b = std::sqrt((N - 1.0) / N);
    return {Mat2r{{{b, a}, {-a, b}}}, Mat2r{{{b, -a}, {a, b}}}};
}

std::pair<Multivector, Multivector> fenner_frame(double N) {
    const BasisChange bc = ga_fenner_basis_change(N);
    Multivector t = e(3) * bc.A[0][0] + e(1) * bc.A[0][1];
    Multivector b = e(3) * bc.A[1][0] + e(1) * bc.A[1][1];
    return {t, b};
}

Multivector ga_fixed_point_apply(const std::vector<Multivector>& rotors, const Multivector& e_psi) {
    Multivector P = Multivector::scalar(e_psi.sig(), 1.0);
    for (const Multivector& g : rotors) P = Rotor(g).mv() * P;
    return P * e_psi * reverse(P);
}

}  // namespace qsearch::msta
