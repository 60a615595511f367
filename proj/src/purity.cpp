#include "qpurity/purity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpurity/rng.hpp"

namespace qpurity {

SchmidtVector::SchmidtVector(std::vector<double> c, double tol_sum) : d(static_cast<int>(c.size())), coeffs(std::move(c)) {
    if (d < 1) throw InvalidDimension("SchmidtVector: empty coefficient list");
    double s = 0.0;
    for (double x : coeffs) {
        if (x < 0.0 || !std::isfinite(x)) throw InvalidDimension("SchmidtVector: coefficients must be nonnegative");
        s += x * x;
    }
    if (std::abs(s - 1.0) > tol_sum)
        throw InvalidDimension("SchmidtVector: squared coefficients must sum to 1 (got " + std::to_string(s) + ")");
    std::sort(coeffs.begin(), coeffs.end(), std::greater<double>());
}

SchmidtVector SchmidtVector::from_squares(const std::vector<double>& sq) {
    double s = 0.0;
    for (double x : sq) s += std::max(x, 0.0);
    if (!(s > 0.0)) throw InvalidDimension("SchmidtVector: all squared coefficients vanish");
    std::vector<double> c(sq.size());
    for (size_t i = 0; i < sq.size(); ++i) c[i] = std::sqrt(std::max(sq[i], 0.0) / s);
    return SchmidtVector(std::move(c));
}

SchmidtVector SchmidtVector::maximally_entangled(int d) {
    if (d < 1) throw InvalidDimension("SchmidtVector: dimension must be positive");
    return SchmidtVector(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

PureState SchmidtVector::to_state() const {
    std::vector<cplx> amps(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a) amps[static_cast<size_t>(a) * d + a] = coeffs[a];
    return PureState(std::move(amps));
}

double nu_p_wh_analytic(int d, Exponent p) {
    if (d < 3) throw InvalidDimension("nu_p_wh_analytic: dimension must be >= 3");
    return std::pow(static_cast<double>(d - 1), -p.one_minus_inv());
}

namespace {

// Output of a channel on the pure state |phi><phi|, assembled from the
// transformed vectors A_x phi.
ComplexMatrix apply_pure(const Channel& ch, const std::vector<cplx>& phi) {
    const int dout = ch.dim_out, din = ch.dim_in;
    ComplexMatrix out(dout);
    std::vector<cplx> psi(dout);
    for (const auto& a : ch.kraus) {
        for (int r = 0; r < dout; ++r) {
            cplx s = 0.0;
            for (int c = 0; c < din; ++c) s += a(r, c) * phi[c];
            psi[r] = s;
        }
        for (int r = 0; r < dout; ++r)
            for (int c = 0; c < dout; ++c) out(r, c) += psi[r] * std::conj(psi[c]);
    }
    return out;
}

// Ascent direction: the channel adjoint applied to the derivative of the
// p-norm objective at the current output, W = sum_x A_x^dag G A_x with
// G = V diag(lambda^{p-1}) V^dag (top eigenprojector at p = inf). The next
// iterate is the top eigenvector of W; convexity of rho -> ||S(rho)||_p makes
// each step monotone nondecreasing.
std::vector<cplx> ascend_step(const Channel& ch, Exponent p, const EigResult& out_eig) {
    const int dout = ch.dim_out, din = ch.dim_in;
    ComplexMatrix g(dout);
    if (p.is_inf()) {
        for (int r = 0; r < dout; ++r)
            for (int c = 0; c < dout; ++c) g(r, c) = out_eig.vectors(r, 0) * std::conj(out_eig.vectors(c, 0));
    } else {
        const double pe = p.value();
        std::vector<double> w(dout);
        for (int k = 0; k < dout; ++k) w[k] = std::pow(std::max(out_eig.spectrum.values[k], 0.0), pe - 1.0);
        for (int r = 0; r < dout; ++r)
            for (int c = 0; c < dout; ++c) {
                cplx s = 0.0;
                for (int k = 0; k < dout; ++k) s += out_eig.vectors(r, k) * w[k] * std::conj(out_eig.vectors(c, k));
                g(r, c) = s;
            }
    }
    ComplexMatrix m(din);
    for (const auto& a : ch.kraus) m += a.adjoint() * g * a;
    const EigResult me = eig_hermitian_full(m);
    std::vector<cplx> next(din);
    for (int r = 0; r < din; ++r) next[r] = me.vectors(r, 0);
    return next;
}

}  // namespace

PurityReport nu_p_numeric(const Channel& ch, Exponent p, const OptConfig& cfg, uint64_t seed) {
    const int restarts = cfg.restarts > 0 ? cfg.restarts : 50;
    const int max_iter = cfg.max_iterations > 0 ? cfg.max_iterations : 500;
    const double tol_opt = cfg.tolerance > 0.0 ? cfg.tolerance : 1e-10;

    PurityReport best{p, -1.0, PureState({1.0}), 0, false, {}, {}};
    best.restart_values.reserve(restarts);

    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(r)));
        PureState phi = rng.haar_state(ch.dim_in);
        std::vector<cplx> x = phi.amplitudes;

        std::vector<double> history;
        double value = -1.0;
        bool converged = false;
        for (int it = 0; it < max_iter; ++it) {
            const EigResult out_eig = eig_hermitian_full(apply_pure(ch, x));
            const double v = schatten_norm(out_eig.spectrum, p);
            history.push_back(v);
            if (value >= 0.0 && v - value < tol_opt) {
                value = v;
                converged = true;
                break;
            }
            value = v;
            if (it + 1 < max_iter) x = ascend_step(ch, p, out_eig);  // keep x paired with value
        }

        best.restart_values.push_back(value);
        if (value > best.value) {
            best.value = value;
            best.maximizer = PureState(x);
            best.converged = converged;
            best.iterate_values = std::move(history);
        }
    }
    best.restarts_used = restarts;
    return best;
}

Spectrum ss_output_spectrum(const SchmidtVector& c) {
    const int d = c.d;
    const double scale = 1.0 / ((d - 1.0) * (d - 1.0));
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (a != b) vals.push_back(scale * (1.0 - c.coeffs[a] * c.coeffs[a] - c.coeffs[b] * c.coeffs[b]));
    // the d x d block on span{|aa>}: diag(1 - 2 c_a^2) + c c^T
    ComplexMatrix block(d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) block(a, b) = c.coeffs[a] * c.coeffs[b];
        block(a, a) += 1.0 - 2.0 * c.coeffs[a] * c.coeffs[a];
    }
    for (double v : eig_hermitian(block).values) vals.push_back(scale * v);
    return Spectrum(std::move(vals));
}

double delta(Exponent p, const SchmidtVector& c) {
    const double norm = schatten_norm(ss_output_spectrum(c), p);
    return std::log(norm) - 2.0 * std::log(nu_p_wh_analytic(c.d, p));
}

double delta_max_entangled(Exponent p) {
    const double log43 = std::log(4.0 / 3.0);
    if (p.is_inf()) return log43;
    const double pe = p.value();
    return log43 + std::log(0.25 + std::pow(2.0, 1.0 - 2.0 * pe)) / pe;
}

double find_p0(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_p0: tolerance must be positive");
    double lo = 2.0, hi = 10.0;
    const double flo = delta_max_entangled(lo);
    const double fhi = delta_max_entangled(hi);
    if (!(flo < 0.0 && fhi > 0.0))
        throw BracketFailure("find_p0: endpoints do not bracket a sign change");
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double f = delta_max_entangled(mid);
        if (hi - lo <= tol && std::abs(f) <= tol) break;
        if (f < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

ScanResult schmidt_scan(Exponent p, int grid_n) {
    if (grid_n < 1) throw InvalidDimension("schmidt_scan: grid_n must be >= 1");
    ScanResult res;
    int idx = 0;
    for (int i = 0; i <= grid_n; ++i) {
        for (int j = 0; j + i <= grid_n; ++j) {
            const double c1 = static_cast<double>(i) / grid_n;
            const double c2 = static_cast<double>(j) / grid_n;
            const double c3 = 1.0 - c1 - c2;
            const SchmidtVector sv = SchmidtVector::from_squares({c1, c2, c3});
            const double dl = delta(p, sv);
            res.points.push_back({c1, c2, dl});
            if (dl > res.points[res.argmax].delta) res.argmax = idx;
            ++idx;
        }
    }
    return res;
}

std::vector<double> schmidt_squares(const PureState& phi, int d1, int d2) {
    if (phi.dim() != d1 * d2) throw DimensionMismatch("schmidt_squares: state dimension is not d1*d2");
    ComplexMatrix m(d1, d2);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j) m(i, j) = phi.amplitudes[static_cast<size_t>(i) * d2 + j];
    Spectrum s = eig_hermitian(m * m.adjoint());
    std::vector<double> out(s.values.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = std::max(s.values[i], 0.0);
    return out;
}

}  // namespace qpurity
