#include "qsearch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsearch {

Mat2c Mat2c::identity() { return from(1.0, 0.0, 0.0, 1.0); }

Mat2c Mat2c::from(cplx a, cplx b, cplx c, cplx d) {
    Mat2c r;
    r.m = {a, b, c, d};
    return r;
}

Mat2c Mat2c::operator*(const Mat2c& o) const {
    const auto& a = m;
    const auto& b = o.m;
    return from(a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3]);
}

Mat2c Mat2c::operator+(const Mat2c& o) const {
    Mat2c r;
    for (int i = 0; i < 4; ++i) r.m[i] = m[i] + o.m[i];
    return r;
}

Mat2c Mat2c::operator-(const Mat2c& o) const {
    Mat2c r;
    for (int i = 0; i < 4; ++i) r.m[i] = m[i] - o.m[i];
    return r;
}

Mat2c Mat2c::operator*(cplx s) const {
    Mat2c r;
    for (int i = 0; i < 4; ++i) r.m[i] = m[i] * s;
    return r;
}

std::array<cplx, 2> Mat2c::operator*(const std::array<cplx, 2>& v) const {
    return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

Mat2c Mat2c::adjoint() const { return from(std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])); }

Mat2c Mat2c::transpose() const { return from(m[0], m[2], m[1], m[3]); }

cplx Mat2c::det() const { return m[0] * m[3] - m[1] * m[2]; }

double Mat2c::max_abs() const {
    double r = 0.0;
    for (const auto& x : m) r = std::max(r, std::abs(x));
    return r;
}

double max_abs_diff(const Mat2c& a, const Mat2c& b) { return (a - b).max_abs(); }

double unitarity_defect(const Mat2c& u) { return max_abs_diff(u.adjoint() * u, Mat2c::identity()); }

double hermiticity_defect(const Mat2c& h) { return max_abs_diff(h, h.adjoint()); }

std::array<double, 2> hermitian_eigenvalues(const Mat2c& h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double off = std::abs(h(0, 1));
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), off);
    return {mean - r, mean + r};
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
    CMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector size mismatch");
    std::vector<cplx> r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

std::vector<cplx> CMatrix::apply_adjoint(const std::vector<cplx>& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector size mismatch");
    std::vector<cplx> r(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        const cplx vj = v[j];
        for (std::size_t i = 0; i < n_; ++i) r[i] += std::conj((*this)(j, i)) * vj;
    }
    return r;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

double unitarity_defect(const CMatrix& u) {
    CMatrix p = u.adjoint() * u;
    double m = 0.0;
    for (std::size_t i = 0; i < u.n(); ++i)
        for (std::size_t j = 0; j < u.n(); ++j) m = std::max(m, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
    return m;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm2(const std::vector<cplx>& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return s;
}

}  // namespace qsearch
