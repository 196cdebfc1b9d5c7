#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qsearch/linalg.hpp"

namespace qsearch::digital {

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::vector<cplx> amps) : amps_(std::move(amps)) {}

    std::size_t size() const { return amps_.size(); }
    cplx& operator[](std::size_t i) { return amps_[i]; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }
    const std::vector<cplx>& amps() const { return amps_; }
    std::vector<cplx>& amps() { return amps_; }
    double norm2() const { return qsearch::norm2(amps_); }

private:
    std::vector<cplx> amps_;
};

struct SearchPlaneState {
    double a_target = 0.0;
    double a_bad = 0.0;
};

using TwoByTwo = Mat2c;

StateVector init_uniform(std::size_t N);
StateVector oracle_apply(StateVector s, std::size_t target);
StateVector inversion_about_mean(StateVector s);
StateVector grover_iterate(StateVector s, std::size_t target);

// In-place variants used by the longer runs.
void oracle_inplace(StateVector& s, std::size_t target);
void inversion_inplace(StateVector& s);

// sin(theta) = 1/sqrt(N)
double grover_theta(double N);
double success_probability(std::int64_t k, double N);
std::int64_t optimal_iterations(double N);

// Coordinates on (|target>, |bad>) with |bad> the normalized uniform
// superposition of the unmarked states.
SearchPlaneState plane_coordinates(const StateVector& s, std::size_t target);

// Matrices on the (|bad>, |target>) basis.
TwoByTwo matrix_G(double theta);
TwoByTwo matrix_inversion(double theta);
TwoByTwo matrix_oracle();
TwoByTwo generalized_iterate_matrix(double alpha, double beta, double theta);

}  // namespace qsearch::digital
