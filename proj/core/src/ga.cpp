#include "qsearch/ga.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace qsearch::ga {

Signature::Signature(int p_, int q_) : p(p_), q(q_) {
    if (p < 0 || q < 0 || p + q > 16)
        throw std::invalid_argument("signature (" + std::to_string(p) + "," + std::to_string(q) +
                                    ") outside 0 <= p+q <= 16");
}

namespace {

int compute_sign(const Signature& sig, std::uint32_t a, std::uint32_t b) {
    int swaps = 0;
    for (std::uint32_t s = a >> 1; s != 0; s >>= 1) swaps += __builtin_popcount(s & b);
    int sign = (swaps & 1) ? -1 : 1;
    std::uint32_t common = a & b;
    for (int i = 0; common != 0; ++i, common >>= 1)
        if ((common & 1u) && sig.square(i) < 0) sign = -sign;
    return sign;
}

constexpr int kTableMaxDim = 6;

using SignTable = std::vector<std::int8_t>;

const SignTable* sign_table(const Signature& sig) {
    if (sig.dim() > kTableMaxDim) return nullptr;
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<SignTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{sig.p, sig.q}];
    if (!slot) {
        const std::uint32_t n = static_cast<std::uint32_t>(sig.blade_count());
        auto t = std::make_unique<SignTable>(std::size_t{n} * n);
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                (*t)[std::size_t{a} * n + b] = static_cast<std::int8_t>(compute_sign(sig, a, b));
        slot = std::move(t);
    }
    return slot.get();
}

void require_same(const Multivector& a, const Multivector& b) {
    if (!(a.sig() == b.sig())) throw std::invalid_argument("multivector signature mismatch");
}

double reverse_sign(int g) { return ((g * (g - 1) / 2) & 1) ? -1.0 : 1.0; }

}  // namespace

int blade_sign(const Signature& sig, std::uint32_t a, std::uint32_t b) {
    if (const SignTable* t = sign_table(sig)) return (*t)[std::size_t{a} * sig.blade_count() + b];
    return compute_sign(sig, a, b);
}

Multivector::Multivector(Signature sig) : sig_(sig), c_(sig.blade_count(), 0.0) {}

Multivector::Multivector(Signature sig, std::vector<double> coeffs) : sig_(sig), c_(std::move(coeffs)) {
    if (c_.size() != sig_.blade_count()) throw std::invalid_argument("coefficient array length != 2^(p+q)");
}

Multivector Multivector::scalar(Signature sig, double s) {
    Multivector m(sig);
    m.c_[0] = s;
    return m;
}

Multivector Multivector::basis(Signature sig, int i) {
    if (i < 1 || i > sig.dim()) throw std::invalid_argument("basis index out of range");
    return blade(sig, 1u << (i - 1));
}

Multivector Multivector::blade(Signature sig, std::uint32_t mask, double value) {
    if (mask >= sig.blade_count()) throw std::invalid_argument("blade mask out of range");
    Multivector m(sig);
    m.c_[mask] = value;
    return m;
}

Multivector Multivector::vector(Signature sig, const std::vector<double>& components) {
    if (static_cast<int>(components.size()) != sig.dim())
        throw std::invalid_argument("vector component count != dimension");
    Multivector m(sig);
    for (int i = 0; i < sig.dim(); ++i) m.c_[1u << i] = components[i];
    return m;
}

Multivector Multivector::pseudoscalar(Signature sig) {
    return blade(sig, static_cast<std::uint32_t>(sig.blade_count() - 1));
}

bool Multivector::is_even(double tol) const {
    for (std::uint32_t k = 0; k < c_.size(); ++k)
        if ((grade_of(k) & 1) && std::abs(c_[k]) > tol) return false;
    return true;
}

double Multivector::off_grade(int g) const {
    double m = 0.0;
    for (std::uint32_t k = 0; k < c_.size(); ++k)
        if (grade_of(k) != g) m = std::max(m, std::abs(c_[k]));
    return m;
}

double Multivector::max_abs() const {
    double m = 0.0;
    for (double x : c_) m = std::max(m, std::abs(x));
    return m;
}

Multivector& Multivector::operator+=(const Multivector& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Multivector& Multivector::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }
Multivector operator+(Multivector a, double s) {
    a[0] += s;
    return a;
}
Multivector operator+(double s, Multivector a) { return std::move(a) + s; }
Multivector operator-(Multivector a, double s) {
    a[0] -= s;
    return a;
}
Multivector operator-(double s, const Multivector& a) { return (-a) + s; }

Multivector geometric_product(const Multivector& a, const Multivector& b) {
    require_same(a, b);
    const Signature& sig = a.sig();
    const std::uint32_t n = static_cast<std::uint32_t>(sig.blade_count());
    Multivector out(sig);
    const SignTable* table = sign_table(sig);
    for (std::uint32_t i = 0; i < n; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const std::int8_t* row = table ? table->data() + std::size_t{i} * n : nullptr;
        for (std::uint32_t j = 0; j < n; ++j) {
            const double bj = b[j];
            if (bj == 0.0) continue;
            const int s = row ? row[j] : compute_sign(sig, i, j);
            out[i ^ j] += s * ai * bj;
        }
    }
    return out;
}

Multivector grade_project(const Multivector& a, int g) {
    if (g < 0 || g > a.sig().dim()) throw std::invalid_argument("grade out of range");
    Multivector out(a.sig());
    for (std::uint32_t k = 0; k < a.size(); ++k)
        if (grade_of(k) == g) out[k] = a[k];
    return out;
}

Multivector reverse(const Multivector& a) {
    Multivector out(a.sig());
    for (std::uint32_t k = 0; k < a.size(); ++k) out[k] = reverse_sign(grade_of(k)) * a[k];
    return out;
}

// Both products are extended from homogeneous blades by bilinearity.
static Multivector blade_wise(const Multivector& a, const Multivector& b, bool inner) {
    require_same(a, b);
    const Signature& sig = a.sig();
    const std::uint32_t n = static_cast<std::uint32_t>(sig.blade_count());
    Multivector out(sig);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (a[i] == 0.0) continue;
        const int r = grade_of(i);
        for (std::uint32_t j = 0; j < n; ++j) {
            if (b[j] == 0.0) continue;
            const int s = grade_of(j);
            const int target = inner ? std::abs(r - s) : r + s;
            if (grade_of(i ^ j) != target) continue;
            out[i ^ j] += blade_sign(sig, i, j) * a[i] * b[j];
        }
    }
    return out;
}

Multivector inner_product(const Multivector& a, const Multivector& b) { return blade_wise(a, b, true); }
Multivector outer_product(const Multivector& a, const Multivector& b) { return blade_wise(a, b, false); }

double max_abs_diff(const Multivector& a, const Multivector& b) {
    require_same(a, b);
    double m = 0.0;
    for (std::uint32_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

double coeff_norm(const Multivector& a) {
    double s = 0.0;
    for (double x : a.coeffs()) s += x * x;
    return std::sqrt(s);
}

static void require_vector(const Multivector& v, const char* what) {
    if (v.off_grade(1) > tol_alg) throw std::invalid_argument(std::string(what) + " must be a grade-1 vector");
}

static void require_unit_vector(const Multivector& a) {
    require_vector(a, "mirror");
    Multivector sq = a * a;
    if (std::abs(sq[0] - 1.0) > tol_alg) throw std::domain_error("mirror vector is not unit (a.a != 1)");
}

Multivector reflect(const Multivector& v, const Multivector& a) {
    require_vector(v, "reflected element");
    require_unit_vector(a);
    return a * v * a;
}

Multivector reflect_along(const Multivector& v, const Multivector& n) {
    require_vector(v, "reflected element");
    require_unit_vector(n);
    return -(n * v * n);
}

static void require_unit_plane(const Multivector& plane) {
    if (plane.off_grade(2) > tol_alg) throw std::invalid_argument("rotation plane must be a bivector");
    Multivector sq = plane * plane;
    Multivector target = Multivector::scalar(plane.sig(), -1.0);
    if (max_abs_diff(sq, target) > 1e-10)
        throw std::domain_error("rotation plane is not a unit simple bivector (B^2 != -1)");
}

Multivector rotor_exp(const Multivector& plane, double phi) {
    require_unit_plane(plane);
    return plane * std::sin(phi) + std::cos(phi);
}

Multivector rotate(const Multivector& v, const Multivector& plane, double theta) {
    require_vector(v, "rotated element");
    Multivector r = rotor_exp(plane, -theta / 2.0);
    return r * v * reverse(r);
}

Rotor::Rotor(Multivector mv) : mv_(std::move(mv)) {
    if (!mv_.is_even(tol_alg)) throw std::domain_error("rotor has odd-grade components");
    Multivector n = mv_ * reverse(mv_);
    if (max_abs_diff(n, Multivector::scalar(n.sig(), 1.0)) > 1e-10)
        throw std::domain_error("rotor is not unit (R R~ != 1)");
}

Multivector Rotor::apply(const Multivector& v) const { return mv_ * v * reverse(mv_); }

Rotor Rotor::operator*(const Rotor& o) const { return Rotor(mv_ * o.mv_); }

int orientation_sign(const VectorMap& transform, Signature sig) {
    const int n = sig.dim();
    if (n == 0) throw std::invalid_argument("orientation of a zero-dimensional space");
    std::vector<Multivector> images;
    images.reserve(n);
    for (int i = 1; i <= n; ++i) {
        Multivector img = transform(Multivector::basis(sig, i));
        require_vector(img, "image of a basis vector");
        images.push_back(std::move(img));
    }
    // Linearity spot checks on fixed combinations of the basis.
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> w(n);
        for (int i = 0; i < n; ++i) w[i] = std::sin(1.3 * (i + 1) + 0.7 * trial) + 0.25 * trial;
        Multivector expect(sig);
        for (int i = 0; i < n; ++i) expect += images[i] * w[i];
        Multivector got = transform(Multivector::vector(sig, w));
        if (max_abs_diff(got, expect) > 1e-9 * std::max(1.0, expect.max_abs()))
            throw std::invalid_argument("transform is not linear on sampled vectors");
    }
    Multivector wedge = images[0];
    for (int i = 1; i < n; ++i) wedge = outer_product(wedge, images[i]);
    const double c = wedge[static_cast<std::uint32_t>(sig.blade_count() - 1)];
    if (std::abs(c) < 1e-12) throw std::domain_error("degenerate transform: wedge of images vanishes");
    return c > 0 ? 1 : -1;
}

}  // namespace qsearch::ga
