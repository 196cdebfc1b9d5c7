#include "qsearch/digital.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsearch::digital {

StateVector init_uniform(std::size_t N) {
    if (N == 0) throw std::invalid_argument("N must be positive");
    const double a = 1.0 / std::sqrt(static_cast<double>(N));
    return StateVector(std::vector<cplx>(N, cplx{a, 0.0}));
}

void oracle_inplace(StateVector& s, std::size_t target) {
    if (target >= s.size()) throw std::invalid_argument("target index out of range");
    s[target] = -s[target];
}

void inversion_inplace(StateVector& s) {
    cplx sum = 0.0;
    for (const auto& a : s.amps()) sum += a;
    const cplx two_mu = 2.0 * sum / static_cast<double>(s.size());
    for (auto& a : s.amps()) a = two_mu - a;
}

StateVector oracle_apply(StateVector s, std::size_t target) {
    oracle_inplace(s, target);
    return s;
}

StateVector inversion_about_mean(StateVector s) {
    inversion_inplace(s);
    return s;
}

StateVector grover_iterate(StateVector s, std::size_t target) {
    oracle_inplace(s, target);
    inversion_inplace(s);
    return s;
}

double grover_theta(double N) {
    if (!(N >= 1.0)) throw std::invalid_argument("N must be >= 1");
    return std::asin(1.0 / std::sqrt(N));
}

double success_probability(std::int64_t k, double N) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * grover_theta(N));
    return s * s;
}

std::int64_t optimal_iterations(double N) {
    const double k = std::round(std::numbers::pi / (4.0 * grover_theta(N)) - 0.5);
    return k < 0 ? 0 : static_cast<std::int64_t>(k);
}

SearchPlaneState plane_coordinates(const StateVector& s, std::size_t target) {
    if (target >= s.size()) throw std::invalid_argument("target index out of range");
    SearchPlaneState p;
    p.a_target = s[target].real();
    if (s.size() > 1) {
        double sum = 0.0;
        for (std::size_t x = 0; x < s.size(); ++x)
            if (x != target) sum += s[x].real();
        p.a_bad = sum / std::sqrt(static_cast<double>(s.size() - 1));
    }
    return p;
}

TwoByTwo matrix_G(double theta) {
    const double c = std::cos(2 * theta), s = std::sin(2 * theta);
    return Mat2c::from(c, -s, s, c);
}

TwoByTwo matrix_inversion(double theta) {
    const double c = std::cos(2 * theta), s = std::sin(2 * theta);
    return Mat2c::from(c, s, s, -c);
}

TwoByTwo matrix_oracle() { return Mat2c::from(1.0, 0.0, 0.0, -1.0); }

TwoByTwo generalized_iterate_matrix(double alpha, double beta, double theta) {
    const cplx one_minus = 1.0 - std::polar(1.0, alpha);
    const cplx eb = std::polar(1.0, beta);
    const double c = std::cos(theta), s = std::sin(theta);
    return Mat2c::from(one_minus * c * c - 1.0, eb * one_minus * s * c, one_minus * s * c,
                       eb * (one_minus * s * s - 1.0));
}

}  // namespace qsearch::digital
