#pragma once

#include <array>
#include <string>

#include "qsearch/linalg.hpp"

namespace qsearch::analog {

enum class Model { Fenner, FarhiGutmann };

std::string model_name(Model m);
Model parse_model(const std::string& name);

// Matrices act on the (|target>, |bad>) basis.
struct PlaneHamiltonian {
    Mat2c h;
    Model model = Model::Fenner;
    double N = 0.0;
    double E = 0.0;
};

struct EvolutionResult {
    double t = 0.0;
    std::array<cplx, 2> state{};  // (target, bad)
    double p_target = 0.0;
};

PlaneHamiltonian fenner_matrix(double N);
Mat2c fenner_evolve(double t, double N);
EvolutionResult fenner_state(double t, double N);
double fenner_time(double N);
// t such that the Fenner rotation angle 2 beta t / sqrt(N) equals 2 k theta.
double fenner_time_for_iterations(double k, double N);

PlaneHamiltonian farhi_gutmann_matrix(double N, double E);
// Integration step used for the Farhi-Gutmann evolution.
double farhi_gutmann_step(double N, double E);
EvolutionResult farhi_gutmann_state(double t, double N, double E);
double fg_first_peak(double N, double E);

// exp(t m) for a 2x2 generator by scaling and squaring of the Taylor series.
Mat2c unitary_series_exp(const Mat2c& m, double t);
// -i H for the Fenner Hamiltonian.
Mat2c fenner_generator(double N);

// Initial state sin(theta)|target> + cos(theta)|bad>.
std::array<cplx, 2> initial_plane_state(double N);

}  // namespace qsearch::analog
