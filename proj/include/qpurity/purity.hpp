// Maximal output purity nu_p and the additivity gap Delta: the closed forms
// for the Werner-Holevo channel, a multistart ascent that maximizes the output
// p-norm of an arbitrary channel over pure inputs, the structured spectrum of
// doubled-channel outputs over Schmidt coefficients, and the critical exponent
// where the gap at the maximally entangled input changes sign.

#ifndef QPURITY_PURITY_HPP
#define QPURITY_PURITY_HPP

#include <cstdint>
#include <vector>

#include "qpurity/channel.hpp"
#include "qpurity/linalg.hpp"

namespace qpurity {

// Bipartite pure state reduced to its Schmidt coefficients: d nonnegative
// reals with sum of squares 1, kept sorted descending.
struct SchmidtVector {
    int d = 0;
    std::vector<double> coeffs;

    explicit SchmidtVector(std::vector<double> c, double tol_sum = 1e-12);

    // Build from squared coefficients; clamps rounding-level negatives and
    // renormalizes exactly. Convenient for grid scans.
    static SchmidtVector from_squares(const std::vector<double>& sq);
    static SchmidtVector maximally_entangled(int d);

    // The state sum_a c_a |aa> as a vector on C^d (x) C^d.
    PureState to_state() const;
};

struct OptConfig {
    int restarts = 0;        // 0 = per-algorithm default
    int max_iterations = 500;
    double tolerance = 0.0;  // improvement threshold; 0 = per-algorithm default
};

struct PurityReport {
    Exponent p;
    double value = 0.0;  // achieved ||S(|phi><phi|)||_p, a certified lower bound
    PureState maximizer;
    int restarts_used = 0;
    bool converged = false;
    std::vector<double> restart_values;   // final value of every restart
    std::vector<double> iterate_values;   // per-iteration values of the best restart
};

// nu_p of the Werner-Holevo channel: (d-1)^{-(1-1/p)}.
double nu_p_wh_analytic(int d, Exponent p);

// Multistart conditional-gradient ascent of ||S(|phi><phi|)||_p over unit
// input vectors. Deterministic given the seed; restart k derives its stream
// from derive_seed(seed, k). Defaults: 50 restarts, 500 iterations,
// improvement tolerance 1e-10.
PurityReport nu_p_numeric(const Channel& ch, Exponent p, const OptConfig& cfg = {}, uint64_t seed = 0);

// Spectrum of (WH_d kron WH_d)(|Phi><Phi|) for the Schmidt-diagonal input
// Phi = sum_a c_a |aa>, via the structured block form: the off-pairing part is
// diagonal with entries (1 - c_a^2 - c_b^2), a != b, and the |aa> block is
// diag(1 - 2 c_a^2) + c c^T, everything scaled by 1/(d-1)^2.
Spectrum ss_output_spectrum(const SchmidtVector& c);

// Additivity gap log ||SxS(|Phi><Phi|)||_p - 2 log nu_p(S) at the given
// Schmidt profile (natural log).
double delta(Exponent p, const SchmidtVector& c);

// Closed form of the gap at the maximally entangled input, d = 3:
// log(4/3) + (1/p) log(1/4 + 2^{1-2p}); log(4/3) at p = inf.
double delta_max_entangled(Exponent p);

// Zero crossing of delta_max_entangled, located by bisection on [2, 10].
// Returns p0 with both the bracket width and |Delta(p0)| below tol.
double find_p0(double tol);

struct ScanPoint {
    double c1sq = 0.0;
    double c2sq = 0.0;
    double delta = 0.0;
};

struct ScanResult {
    std::vector<ScanPoint> points;  // row-major over the simplex grid
    int argmax = 0;                 // index into points; ties keep the lowest index
};

// Delta over the Schmidt simplex c1^2 + c2^2 <= 1 on a uniform grid with step
// 1/grid_n, for d = 3.
ScanResult schmidt_scan(Exponent p, int grid_n);

// Squared Schmidt coefficients of a bipartite pure state on C^d1 (x) C^d2,
// descending.
std::vector<double> schmidt_squares(const PureState& phi, int d1, int d2);

}  // namespace qpurity

#endif
