#include "qsearch/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qsearch::bessel {

namespace {

constexpr double kSeriesMax = 12.0;
constexpr double kEuler = 0.57721566490153286061;

// sum_k (-1)^k (z/2)^(2k+n) / (k! (k+n)!)
double j_series(int n, double z) {
    const double h = 0.5 * z;
    const double q = -h * h;
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= h / i;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return sum;
}

// Hankel asymptotic expansion, returns (J_n, Y_n).
void hankel(int n, double z, double& j, double& y) {
    const double mu = 4.0 * n * n;
    double p = 0.0, q = 0.0;
    double a = 1.0;  // a_k / z^k
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            const double odd = 2.0 * k - 1.0;
            a *= (mu - odd * odd) / (k * 8.0 * z);
        }
        if (std::abs(a) > last) break;  // series has started to diverge
        last = std::abs(a);
        const int r = k % 4;
        // P takes even k with sign (-1)^(k/2), Q odd k with sign (-1)^((k-1)/2).
        if (r == 0) p += a;
        else if (r == 1) q += a;
        else if (r == 2) p -= a;
        else q -= a;
        if (last < 1e-17) break;
    }
    const double w = z - n * std::numbers::pi / 2.0 - std::numbers::pi / 4.0;
    const double amp = std::sqrt(2.0 / (std::numbers::pi * z));
    j = amp * (p * std::cos(w) - q * std::sin(w));
    y = amp * (p * std::sin(w) + q * std::cos(w));
}

void require_nonneg(double z) {
    if (!(z >= 0.0)) throw std::domain_error("Bessel argument must be >= 0");
}

}  // namespace

double j0(double z) {
    require_nonneg(z);
    if (z <= kSeriesMax) return j_series(0, z);
    double j, y;
    hankel(0, z, j, y);
    return j;
}

double j1(double z) {
    require_nonneg(z);
    if (z <= kSeriesMax) return j_series(1, z);
    double j, y;
    hankel(1, z, j, y);
    return j;
}

double y0(double z) {
    require_nonneg(z);
    if (z == 0.0) return -std::numeric_limits<double>::infinity();
    if (z > kSeriesMax) {
        double j, y;
        hankel(0, z, j, y);
        return y;
    }
    // (2/pi)(ln(z/2) + gamma) J0 + (2/pi) sum_{k>=1} (-1)^(k+1) H_k (z^2/4)^k / (k!)^2
    const double q = 0.25 * z * z;
    double term = 1.0, harmonic = 0.0, sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        const double add = -term * harmonic;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return 2.0 / std::numbers::pi * ((std::log(0.5 * z) + kEuler) * j_series(0, z) + sum);
}

double z_y1(double z) {
    require_nonneg(z);
    if (z > kSeriesMax) return z * y1(z);
    // Y1 = (2/pi) J1 ln(z/2) - 2/(pi z)
    //      - (1/pi) sum_k (psi(k+1) + psi(k+2)) (-z^2/4)^k (z/2) / (k! (k+1)!)
    const double h = 0.5 * z;
    const double q = -h * h;
    double term = h;  // (z/2)(-z^2/4)^k / (k!(k+1)!)
    double psi1 = -kEuler, psi2 = 1.0 - kEuler;
    double sum = term * (psi1 + psi2);
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        psi1 += 1.0 / k;
        psi2 += 1.0 / (k + 1);
        const double add = term * (psi1 + psi2);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    const double log_part = z > 0.0 ? z * j_series(1, z) * std::log(h) : 0.0;
    return 2.0 / std::numbers::pi * log_part - 2.0 / std::numbers::pi - z * sum / std::numbers::pi;
}

double y1(double z) {
    require_nonneg(z);
    if (z == 0.0) return -std::numeric_limits<double>::infinity();
    if (z > kSeriesMax) {
        double j, y;
        hankel(1, z, j, y);
        return y;
    }
    return z_y1(z) / z;
}

}  // namespace qsearch::bessel
