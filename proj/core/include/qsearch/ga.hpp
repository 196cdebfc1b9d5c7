#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <utility>
#include <vector>

namespace qsearch::ga {

inline constexpr double tol_alg = 1e-12;

struct Signature {
    int p = 0;
    int q = 0;

    Signature() = default;
    Signature(int p_, int q_);

    int dim() const { return p + q; }
    std::size_t blade_count() const { return std::size_t{1} << dim(); }
    // Square of basis vector e_{i+1}: +1 for i < p, -1 otherwise.
    int square(int i) const { return i < p ? 1 : -1; }

    bool operator==(const Signature&) const = default;

    static Signature euclidean(int n) { return {n, 0}; }
    static Signature spacetime() { return {1, 3}; }
};

// Sign of e_a * e_b for blade bitmasks a, b; the product blade is a ^ b.
int blade_sign(const Signature& sig, std::uint32_t a, std::uint32_t b);

inline int grade_of(std::uint32_t blade) { return __builtin_popcount(blade); }

class Multivector {
public:
    explicit Multivector(Signature sig = Signature::euclidean(3));
    Multivector(Signature sig, std::vector<double> coeffs);

    static Multivector scalar(Signature sig, double s);
    // 1-based basis vector index, e_1 .. e_n
    static Multivector basis(Signature sig, int i);
    static Multivector blade(Signature sig, std::uint32_t mask, double value = 1.0);
    static Multivector vector(Signature sig, const std::vector<double>& components);
    static Multivector pseudoscalar(Signature sig);

    const Signature& sig() const { return sig_; }
    std::size_t size() const { return c_.size(); }
    const std::vector<double>& coeffs() const { return c_; }

    double operator[](std::uint32_t blade) const { return c_[blade]; }
    double& operator[](std::uint32_t blade) { return c_[blade]; }
    double scalar_part() const { return c_[0]; }

    bool is_even(double tol = 0.0) const;
    // Largest |coefficient| among blades whose grade != g.
    double off_grade(int g) const;
    double max_abs() const;

    Multivector& operator+=(const Multivector& o);
    Multivector& operator-=(const Multivector& o);
    Multivector& operator*=(double s);

private:
    Signature sig_;
    std::vector<double> c_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);
Multivector operator+(Multivector a, double s);
Multivector operator+(double s, Multivector a);
Multivector operator-(Multivector a, double s);
Multivector operator-(double s, const Multivector& a);

Multivector geometric_product(const Multivector& a, const Multivector& b);
inline Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

Multivector grade_project(const Multivector& a, int g);
Multivector reverse(const Multivector& a);
Multivector inner_product(const Multivector& a, const Multivector& b);
Multivector outer_product(const Multivector& a, const Multivector& b);

double max_abs_diff(const Multivector& a, const Multivector& b);
// Euclidean norm of the coefficient array.
double coeff_norm(const Multivector& a);

// a v a for a unit vector a (mirror across the line of a).
Multivector reflect(const Multivector& v, const Multivector& a);
// -n v n: mirror in the hyperplane orthogonal to the unit vector n.
Multivector reflect_along(const Multivector& v, const Multivector& n);
// R v R~ with R = exp(-B theta/2), B a unit simple bivector (B^2 = -1).
Multivector rotate(const Multivector& v, const Multivector& plane, double theta);
// cos(phi) + B sin(phi) for B^2 = -1.
Multivector rotor_exp(const Multivector& plane, double phi);

class Rotor {
public:
    explicit Rotor(Multivector mv);
    const Multivector& mv() const { return mv_; }
    Multivector apply(const Multivector& v) const;
    Rotor operator*(const Rotor& o) const;

private:
    Multivector mv_;
};

using VectorMap = std::function<Multivector(const Multivector&)>;

// Sign of det(T) read off the outermorphism acting on the pseudoscalar.
int orientation_sign(const VectorMap& transform, Signature sig = Signature::euclidean(3));

}  // namespace qsearch::ga
