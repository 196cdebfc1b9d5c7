#include "qsearch/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsearch {

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

CMatrix haar_unitary(std::size_t N, Rng& rng) {
    if (N == 0) throw std::invalid_argument("unitary dimension must be positive");
    CMatrix U(N);
    for (std::size_t c = 0; c < N; ++c) {
        std::vector<cplx> v(N);
        for (auto& x : v) x = cplx{rng.normal(), rng.normal()};
        // Two passes of modified Gram-Schmidt keep the columns orthonormal to round-off.
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < c; ++k) {
                cplx proj = 0.0;
                for (std::size_t r = 0; r < N; ++r) proj += std::conj(U(r, k)) * v[r];
                for (std::size_t r = 0; r < N; ++r) v[r] -= proj * U(r, k);
            }
        const double n = std::sqrt(norm2(v));
        for (std::size_t r = 0; r < N; ++r) U(r, c) = v[r] / n;
    }
    return U;
}

CMatrix walsh_hadamard(std::size_t N) {
    if (N == 0 || (N & (N - 1)) != 0) throw std::invalid_argument("Walsh-Hadamard needs N = 2^n");
    CMatrix H(N);
    const double s = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) H(r, c) = (__builtin_popcountll(r & c) & 1) ? -s : s;
    return H;
}

}  // namespace qsearch
