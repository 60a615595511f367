#include "qpurity/rng.hpp"

#include <cmath>

namespace qpurity {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (index + 1));
    return splitmix64(s);
}

double Rng::uniform() {
    // 53 mantissa bits, exact on every IEEE platform
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

cplx Rng::cgaussian() { return {gaussian(), gaussian()}; }

PureState Rng::haar_state(int dim) {
    std::vector<cplx> amps(dim);
    for (auto& a : amps) a = cgaussian();
    return PureState(std::move(amps));  // constructor normalizes
}

ComplexMatrix Rng::gaussian_matrix(int rows, int cols) {
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = cgaussian();
    return m;
}

ComplexMatrix Rng::haar_unitary(int dim) {
    ComplexMatrix g = gaussian_matrix(dim, dim);
    // Modified Gram-Schmidt on columns. This is the positive-diagonal QR of a
    // Ginibre matrix, which is Haar distributed.
    ComplexMatrix q(dim);
    for (int c = 0; c < dim; ++c) {
        std::vector<cplx> col(dim);
        for (int r = 0; r < dim; ++r) col[r] = g(r, c);
        for (int prev = 0; prev < c; ++prev) {
            cplx proj = 0.0;
            for (int r = 0; r < dim; ++r) proj += std::conj(q(r, prev)) * col[r];
            for (int r = 0; r < dim; ++r) col[r] -= proj * q(r, prev);
        }
        double n2 = 0.0;
        for (const auto& z : col) n2 += std::norm(z);
        const double inv = 1.0 / std::sqrt(n2);
        for (int r = 0; r < dim; ++r) q(r, c) = col[r] * inv;
    }
    return q;
}

ComplexMatrix Rng::random_density(int dim) {
    ComplexMatrix g = gaussian_matrix(dim, dim);
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= 1.0 / tr;
    return rho;
}

}  // namespace qpurity
