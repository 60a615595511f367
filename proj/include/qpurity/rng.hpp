// Deterministic random sources. Streams are derived from a master seed with
// splitmix64 so restart k of a run always sees the same draws, independent of
// platform or evaluation order.

#ifndef QPURITY_RNG_HPP
#define QPURITY_RNG_HPP

#include <cstdint>

#include "qpurity/linalg.hpp"

namespace qpurity {

uint64_t splitmix64(uint64_t& state);

// Derive the seed for an indexed substream (restart, trial, ...).
uint64_t derive_seed(uint64_t master, uint64_t index);

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() { return splitmix64(state_); }
    double uniform();   // [0, 1)
    double gaussian();  // standard normal, Box-Muller
    cplx cgaussian();   // complex standard normal

    PureState haar_state(int dim);
    ComplexMatrix gaussian_matrix(int rows, int cols);
    // Haar-distributed unitary via QR of a Gaussian matrix with the R diagonal
    // phase fixed.
    ComplexMatrix haar_unitary(int dim);
    // Random full-rank density matrix (normalized Wishart).
    ComplexMatrix random_density(int dim);

private:
    uint64_t state_;
};

}  // namespace qpurity

#endif
