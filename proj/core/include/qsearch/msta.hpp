#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsearch/digital.hpp"
#include "qsearch/ga.hpp"
#include "qsearch/linalg.hpp"

namespace qsearch::msta {

using ga::Multivector;
using ga::Rotor;
using ga::Signature;

inline Signature cl3() { return Signature::euclidean(3); }

Multivector e(int k);   // e_k in Cl(3)
Multivector ie(int k);  // i e_k = e1e2e3 e_k

struct GaQubit {
    Multivector mv{cl3()};
};

struct ComplexPair {
    double re = 0.0;
    double im = 0.0;
    cplx value() const { return {re, im}; }
};

GaQubit qubit_to_mv(cplx alpha, cplx beta, bool allow_unnormalized = false);
std::pair<cplx, cplx> mv_to_qubit(const GaQubit& psi);

GaQubit pauli_action(int k, const GaQubit& psi);
GaQubit complex_unit_action(const GaQubit& psi);
ComplexPair ga_inner(const GaQubit& psi, const GaQubit& phi);

Multivector density_pure(const GaQubit& psi);
Multivector density_mixed(const std::vector<double>& weights, const std::vector<GaQubit>& states);

// Element of the n-fold tensor product of the even subalgebra of Cl(3).
// Index digits (base 4, particle 1 most significant):
//   0 -> 1, 1 -> ie1, 2 -> ie2, 3 -> ie3.
class GaRegister {
public:
    explicit GaRegister(int n);

    int n() const { return n_; }
    std::size_t size() const { return c_.size(); }
    bool correlated() const { return correlated_; }
    void set_correlated(bool v) { correlated_ = v; }

    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }
    const std::vector<double>& coeffs() const { return c_; }

    static GaRegister scalar(int n, double s);
    // Single-particle element embedded at particle a (1-based).
    static GaRegister embed(int n, int particle, const Multivector& even_mv);
    static GaRegister unit(int n, int particle, int digit, double value = 1.0);

    GaRegister& operator+=(const GaRegister& o);
    GaRegister& operator*=(double s);

    int digit(std::size_t index, int particle) const;

private:
    int n_;
    std::vector<double> c_;
    bool correlated_ = false;
};

GaRegister operator*(const GaRegister& a, const GaRegister& b);
GaRegister operator+(GaRegister a, const GaRegister& b);
GaRegister operator-(GaRegister a, const GaRegister& b);
GaRegister operator*(GaRegister a, double s);
double max_abs_diff(const GaRegister& a, const GaRegister& b);
double dot(const GaRegister& a, const GaRegister& b);

GaRegister correlator(int n);    // E_n
GaRegister correlator_J(int n);  // J_n = E_n ie3^1
GaRegister apply_correlator(const GaRegister& reg);
GaRegister right_ie3(const GaRegister& reg, int particle);

// Trace of X -> X E_n, which equals its rank since E_n is idempotent.
std::size_t projection_rank(int n);
// Rank by Gaussian elimination on the explicit 4^n x 4^n matrix (small n).
std::size_t projection_rank_numeric(int n);

GaRegister state_to_register(const digital::StateVector& s, int n);
digital::StateVector register_to_state(const GaRegister& reg);

// Search-plane dynamics with e_target = e3 and e_bad = e1.
Rotor ga_grover_rotor(double N);
Multivector ga_grover_multivector(double N);
Multivector initial_plane_vector(double N);
digital::SearchPlaneState plane_of(const Multivector& v);
digital::SearchPlaneState ga_grover_apply(std::int64_t k, double N);
// Smallest k whose target coordinate reaches sqrt(1 - 1/N).
std::int64_t ga_speedup_iterations(double N);

using Mat2r = std::array<std::array<double, 2>, 2>;
struct BasisChange {
    Mat2r A;
    Mat2r A_inv;
};
BasisChange ga_fenner_basis_change(double N);
// Rotated frame (e_target', e_bad') obtained by applying A to (e3, e1).
std::pair<Multivector, Multivector> fenner_frame(double N);

Multivector ga_fixed_point_apply(const std::vector<Multivector>& rotors, const Multivector& e_psi);

}  // namespace qsearch::msta
