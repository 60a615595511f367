// Quantum channels in Kraus form: construction of the Werner-Holevo channel,
// application to states, channel tensor products, the Choi matrix, structural
// residual checks (covariance, Hilbert-Schmidt self-duality, trace
// preservation) and the flattening of a channel into a threefold tensor.

#ifndef QPURITY_CHANNEL_HPP
#define QPURITY_CHANNEL_HPP

#include <vector>

#include "qpurity/linalg.hpp"

namespace qpurity {

// Completely positive map held as a nonempty list of dim_out x dim_in Kraus
// operators. CP holds by construction; the regular constructor also enforces
// trace preservation sum_x A_x^dag A_x = 1 within tol_tp.
struct Channel {
    int dim_in = 0;
    int dim_out = 0;
    std::vector<ComplexMatrix> kraus;

    Channel(std::vector<ComplexMatrix> ops, double tol_tp = tol::trace_preserving);

    // Skips the trace-preservation gate. Meant for the verifier, which must be
    // able to load a broken channel and report its residuals.
    static Channel unchecked(std::vector<ComplexMatrix> ops);

    static Channel identity(int dim);

private:
    Channel() = default;
};

// ||sum_x A_x^dag A_x - 1||_F
double tp_residual(const Channel& ch);

// Vector in an N-fold tensor product. Amplitudes are stored row-major in the
// multi-index (last factor index fastest).
struct TensorVector {
    std::vector<int> dims;
    std::vector<cplx> amplitudes;

    TensorVector(std::vector<int> d, std::vector<cplx> amps);

    int order() const { return static_cast<int>(dims.size()); }
    size_t total_dim() const;
    double norm() const;
};

// The Werner-Holevo channel rho -> (tr(rho) 1 - rho^T)/(d-1) as the Kraus
// family (|i><j| - |j><i|)/sqrt(d-1) over unordered pairs i < j. Transposition
// is taken in the fixed computational basis. Requires d >= 3.
Channel wh_channel(int d);

// The same map in its linear form, usable as an independent cross-check.
ComplexMatrix wh_linear_form(const ComplexMatrix& rho);

// sum_x A_x rho A_x^dag
ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho);

// Kraus family {A_x kron B_y} over all pairs, x-major.
Channel tensor(const Channel& ch1, const Channel& ch2);

// (id kron ch) applied to the unnormalized maximally entangled matrix
// sum_{jk} |jj><kk|. PSD iff ch is CP; partial trace over the output slot is
// the identity iff ch is trace preserving.
ComplexMatrix choi(const Channel& ch);

// || S(u rho u^dag) - conj(u) S(rho) u^T ||_F. Zero for unitarily covariant
// channels such as Werner-Holevo. Throws NotUnitary when u is not unitary
// within tol_u.
double covariance_residual(const Channel& ch, const ComplexMatrix& u, const ComplexMatrix& rho,
                           double tol_u = tol::unitary);

// | tr(a^dag S(b)) - tr(S(a)^dag b) |, the self-duality defect in the
// Hilbert-Schmidt pairing.
double hs_hermiticity_residual(const Channel& ch, const ComplexMatrix& a, const ComplexMatrix& b);

// Flatten the Kraus family into a threefold tensor with dims
// (#kraus, dim_out, dim_in) and amplitude (x, j, k) = (A_x)_{jk}. Its squared
// norm equals dim_in for a trace-preserving channel.
TensorVector channel_to_vector(const Channel& ch);

}  // namespace qpurity

#endif
