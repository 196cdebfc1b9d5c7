#pragma once

#include <cstdint>
#include <random>

#include "qsearch/linalg.hpp"

namespace qsearch {

// mt19937_64 with hand-rolled uniform/normal transforms so that streams are
// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    double normal();                        // Box-Muller

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-distributed unitary via Gram-Schmidt on complex Gaussian columns.
CMatrix haar_unitary(std::size_t N, Rng& rng);

// Walsh-Hadamard transform matrix; N must be a power of two.
CMatrix walsh_hadamard(std::size_t N);

}  // namespace qsearch
