#include "qsearch/analog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qsearch::analog {

namespace {

constexpr cplx I{0.0, 1.0};

struct Amplitudes {
    double alpha;
    double beta;
};

Amplitudes amplitudes(double N) {
    if (!(N >= 2.0)) throw std::invalid_argument("N must be >= 2");
    return {1.0 / std::sqrt(N), std::sqrt((N - 1.0) / N)};
}

double p_of(const std::array<cplx, 2>& s) { return std::norm(s[0]); }

using State = std::array<cplx, 2>;

State rk4_step(const Mat2c& gen, const State& y, double dt) {
    auto f = [&](const State& v) { return gen * v; };
    auto axpy = [](const State& a, double h, const State& b) { return State{a[0] + h * b[0], a[1] + h * b[1]}; };
    const State k1 = f(y);
    const State k2 = f(axpy(y, dt / 2, k1));
    const State k3 = f(axpy(y, dt / 2, k2));
    const State k4 = f(axpy(y, dt, k3));
    return {y[0] + dt / 6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + dt / 6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

// -i (H - E I): the trace part only contributes a global phase.
Mat2c fg_generator(double N, double E) {
    Mat2c h = farhi_gutmann_matrix(N, E).h - Mat2c::identity() * E;
    return h * (-I);
}

State integrate(const Mat2c& gen, State y, double span, double dt_max) {
    if (span <= 0.0) return y;
    const auto steps = static_cast<long>(std::ceil(span / dt_max));
    const double dt = span / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) y = rk4_step(gen, y, dt);
    return y;
}

}  // namespace

std::string model_name(Model m) { return m == Model::Fenner ? "fenner" : "farhi-gutmann"; }

Model parse_model(const std::string& name) {
    if (name == "fenner") return Model::Fenner;
    if (name == "farhi-gutmann" || name == "fg") return Model::FarhiGutmann;
    throw std::invalid_argument("unknown model '" + name + "' (expected fenner or farhi-gutmann)");
}

std::array<cplx, 2> initial_plane_state(double N) {
    const auto [a, b] = amplitudes(N);
    return {cplx{a, 0.0}, cplx{b, 0.0}};
}

PlaneHamiltonian fenner_matrix(double N) {
    const auto [a, b] = amplitudes(N);
    const cplx c = 2.0 * I * b / std::sqrt(N);
    (void)a;
    return {Mat2c::from(0.0, c, -c, 0.0), Model::Fenner, N, 0.0};
}

Mat2c fenner_generator(double N) { return fenner_matrix(N).h * (-I); }

Mat2c fenner_evolve(double t, double N) {
    const auto [a, b] = amplitudes(N);
    (void)a;
    const double x = 2.0 * b * t / std::sqrt(N);
    const double c = std::cos(x), s = std::sin(x);
    // cos(x) I + sin(x) sigma_z sigma_x
    return Mat2c::from(c, s, -s, c);
}

EvolutionResult fenner_state(double t, double N) {
    const State s = fenner_evolve(t, N) * initial_plane_state(N);
    return {t, s, p_of(s)};
}

double fenner_time(double N) {
    if (!(N >= 2.0)) throw std::invalid_argument("N must be >= 2");
    return N / (2.0 * std::sqrt(N - 1.0)) * std::asin(std::sqrt((N - 1.0) / N));
}

double fenner_time_for_iterations(double k, double N) {
    const auto [a, b] = amplitudes(N);
    return k * std::asin(a) * std::sqrt(N) / b;
}

PlaneHamiltonian farhi_gutmann_matrix(double N, double E) {
    if (!(E > 0.0)) throw std::invalid_argument("energy scale E must be > 0");
    const auto [a, b] = amplitudes(N);
    return {Mat2c::from(E * (1.0 + a * a), E * a * b, E * a * b, E * b * b), Model::FarhiGutmann, N, E};
}

double farhi_gutmann_step(double N, double E) {
    if (!(E > 0.0)) throw std::invalid_argument("energy scale E must be > 0");
    const auto [a, b] = amplitudes(N);
    (void)a;
    return std::numbers::pi * std::sqrt(N) / (2.0 * b * E) / 1e4;
}

EvolutionResult farhi_gutmann_state(double t, double N, double E) {
    if (t < 0.0) throw std::invalid_argument("time must be >= 0");
    const State s = integrate(fg_generator(N, E), initial_plane_state(N), t, farhi_gutmann_step(N, E));
    return {t, s, p_of(s)};
}

double fg_first_peak(double N, double E) {
    const Mat2c gen = fg_generator(N, E);
    const double dt = farhi_gutmann_step(N, E);
    const double window = std::numbers::pi * std::sqrt(N) / E;
    constexpr int samples = 10000;
    const double h = window / samples;
    std::vector<State> states(samples + 1);
    std::vector<double> p(samples + 1);
    states[0] = initial_plane_state(N);
    p[0] = p_of(states[0]);
    for (int i = 1; i <= samples; ++i) {
        states[i] = integrate(gen, states[i - 1], h, dt);
        p[i] = p_of(states[i]);
    }
    int peak = -1;
    for (int i = 1; i < samples; ++i)
        if (p[i] >= p[i - 1] && p[i] >= p[i + 1]) {
            peak = i;
            break;
        }
    if (peak < 0) throw std::domain_error("no peak of the target probability inside the scan window");

    const double t0 = (peak - 1) * h;
    auto prob = [&](double t) { return p_of(integrate(gen, states[peak - 1], t - t0, dt)); };
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = t0, b = (peak + 1) * h;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double pc = prob(c), pd = prob(d);
    while (b - a > 1e-10) {
        if (pc > pd) {
            b = d;
            d = c;
            pd = pc;
            c = b - invphi * (b - a);
            pc = prob(c);
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + invphi * (b - a);
            pd = prob(d);
        }
    }
    return 0.5 * (a + b);
}

Mat2c unitary_series_exp(const Mat2c& m, double t) {
    Mat2c x = m * cplx{t, 0.0};
    const double norm = x.max_abs() * 2.0;
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    x = x * cplx{std::ldexp(1.0, -squarings), 0.0};
    Mat2c sum = Mat2c::identity();
    Mat2c term = Mat2c::identity();
    for (int k = 1; k < 40; ++k) {
        term = term * x * cplx{1.0 / k, 0.0};
        sum = sum + term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

}  // namespace qsearch::analog
