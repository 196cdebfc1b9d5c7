#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qsearch {

using cplx = std::complex<double>;

inline constexpr double tol_state = 1e-10;

struct Mat2c {
    std::array<cplx, 4> m{};  // row-major: (0,0) (0,1) (1,0) (1,1)

    cplx& operator()(int r, int c) { return m[2 * r + c]; }
    const cplx& operator()(int r, int c) const { return m[2 * r + c]; }

    static Mat2c identity();
    static Mat2c zero() { return {}; }
    static Mat2c from(cplx a, cplx b, cplx c, cplx d);

    Mat2c operator*(const Mat2c& o) const;
    Mat2c operator+(const Mat2c& o) const;
    Mat2c operator-(const Mat2c& o) const;
    Mat2c operator*(cplx s) const;
    std::array<cplx, 2> operator*(const std::array<cplx, 2>& v) const;

    Mat2c adjoint() const;
    Mat2c transpose() const;
    cplx det() const;
    cplx trace() const { return m[0] + m[3]; }
    double max_abs() const;
};

double max_abs_diff(const Mat2c& a, const Mat2c& b);
// max |U^dagger U - I|
double unitarity_defect(const Mat2c& u);
// max |H - H^dagger|
double hermiticity_defect(const Mat2c& h);

// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Mat2c& h);

// Dense square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static CMatrix identity(std::size_t n);

    std::size_t n() const { return n_; }
    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    CMatrix operator*(const CMatrix& o) const;
    std::vector<cplx> apply(const std::vector<cplx>& v) const;
    std::vector<cplx> apply_adjoint(const std::vector<cplx>& v) const;
    CMatrix adjoint() const;

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

double unitarity_defect(const CMatrix& u);

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);  // <a|b>
double norm2(const std::vector<cplx>& a);

}  // namespace qsearch
