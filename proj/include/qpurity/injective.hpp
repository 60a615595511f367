// Injective tensor norm mu_N: the largest overlap of an N-partite vector with
// a unit product vector, computed by multistart alternating maximization. Also
// the antisymmetric test vector on C^3 x C^3 x C^3, the bridge
// nu_inf(S) = mu_3(A~)^2, and the multiplicativity check for regrouped tensor
// products.

#ifndef QPURITY_INJECTIVE_HPP
#define QPURITY_INJECTIVE_HPP

#include <cstdint>

#include "qpurity/channel.hpp"
#include "qpurity/purity.hpp"

namespace qpurity {

struct RankOneFit {
    double value = 0.0;  // achieved |<Phi, phi_1 x ... x phi_N>|
    std::vector<PureState> factors;
    int restarts_used = 0;
    bool converged = false;
    std::vector<double> sweep_values;  // per-sweep values of the best restart
};

// Alternating maximization of |<Phi, phi_1 x ... x phi_N>| over unit factor
// tuples: the optimal free factor is the normalized conjugated partial
// contraction, swept cyclically until the gain per sweep drops below 1e-12.
// Default restart budget is min(2000, max(100, 10 * total_dim)); restart k
// draws its starting tuple from derive_seed(seed, k).
RankOneFit mu(const TensorVector& v, const OptConfig& cfg = {}, uint64_t seed = 0);

// mu with caller-supplied warm-start tuples polished before the random
// restarts; used by the multiplicativity check.
RankOneFit mu_with_starts(const TensorVector& v, const std::vector<std::vector<PureState>>& starts,
                          const OptConfig& cfg = {}, uint64_t seed = 0);

// nu_inf of a channel through the vector bridge: mu(channel_to_vector(ch))^2.
double mu_of_channel(const Channel& ch, const OptConfig& cfg = {}, uint64_t seed = 0);

// The normalized totally antisymmetric vector on C^3 x C^3 x C^3:
// sgn(pi)/sqrt(6) on permutation multi-indices, zero elsewhere. Only d = 3
// admits one of order 3.
TensorVector antisymmetric_vector(int d = 3);

// Phi x Psi regrouped so factor a of v pairs with factor a of w; the result
// has dims (v.dims[a] * w.dims[a]).
TensorVector regroup_product(const TensorVector& v, const TensorVector& w);

struct MultiplicativityCheck {
    RankOneFit vw;
    RankOneFit v;
    RankOneFit w;
    double ratio = 0.0;  // mu(v x w) / (mu(v) mu(w))
};

// Optimizes mu on v, w and on the regrouped product, seeding the product
// search with the product of the two optimal tuples and with maximally
// entangled regrouped factors. ratio > 1 certifies a multiplicativity
// violation.
MultiplicativityCheck check_mu_multiplicativity(const TensorVector& v, const TensorVector& w,
                                                const OptConfig& cfg = {}, uint64_t seed = 0);

}  // namespace qpurity

#endif
