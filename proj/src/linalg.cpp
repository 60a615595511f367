#include "qpurity/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

namespace qpurity {

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m = *this;
    for (auto& z : m.a_) z = std::conj(z);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim(); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix addition: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix subtraction: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : a_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Spectrum::Spectrum(std::vector<double> v) : values(std::move(v)) {
    std::sort(values.begin(), values.end(), std::greater<double>());
}

double Spectrum::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double Spectrum::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

bool is_density_spectrum(const Spectrum& s, double tol_psd, double tol_sum) {
    for (double v : s.values)
        if (v < -tol_psd) return false;
    return std::abs(s.sum() - 1.0) <= tol_sum;
}

PureState::PureState(std::vector<cplx> amps) : amplitudes(std::move(amps)) {
    if (amplitudes.empty()) throw InvalidDimension("PureState: empty amplitude list");
    double n2 = 0.0;
    for (const auto& z : amplitudes) n2 += std::norm(z);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw InvalidDimension("PureState: vector is zero or non-finite");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : amplitudes) z *= inv;
}

double PureState::norm() const {
    double n2 = 0.0;
    for (const auto& z : amplitudes) n2 += std::norm(z);
    return std::sqrt(n2);
}

Exponent::Exponent(double p) : inf_(false), p_(p) {
    if (!std::isfinite(p) || p <= 1.0) throw InvalidExponent("exponent must be finite and > 1, or inf");
}

double Exponent::value() const {
    if (inf_) throw InvalidExponent("infinite exponent has no finite value");
    return p_;
}

double Exponent::one_minus_inv() const { return inf_ ? 1.0 : 1.0 - 1.0 / p_; }

Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return Exponent::inf();
    size_t pos = 0;
    double p = 0.0;
    try {
        p = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw InvalidExponent("cannot parse exponent '" + text + "'");
    }
    if (pos != text.size()) throw InvalidExponent("cannot parse exponent '" + text + "'");
    return Exponent(p);
}

std::string Exponent::str() const {
    if (inf_) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p_);
    return buf;
}

namespace {

double hermiticity_residual(const ComplexMatrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) s += std::norm(m(r, c) - std::conj(m(c, r)));
    return std::sqrt(s);
}

void require_hermitian(const ComplexMatrix& m, double tol_herm) {
    if (!m.is_square()) throw NotHermitian("matrix is not square");
    const double scale = std::max(1.0, m.frobenius_norm());
    if (hermiticity_residual(m) > tol_herm * scale) throw NotHermitian("matrix fails the Hermitian symmetry check");
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const int n = a.rows();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// One two-sided Jacobi rotation zeroing a(p,q). The 2x2 unitary is
//   [ c          -s e^{i phi} ]
//   [ s e^{-i phi}    c       ]     with e^{i phi} = a(p,q)/|a(p,q)|.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
    const cplx b = a(p, q);
    const double babs = std::abs(b);
    const cplx phase = b / babs;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    // small-magnitude root of t^2 - ((aqq-app)/|b|) t - 1 = 0
    const double theta = (app - aqq) / (2.0 * babs);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = a.rows();
    const cplx sp = s * phase;        // s e^{i phi}
    const cplx spc = std::conj(sp);   // s e^{-i phi}

    for (int k = 0; k < n; ++k) {  // columns: A <- A U
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp + spc * akq;
        a(k, q) = -sp * akp + c * akq;
    }
    for (int k = 0; k < n; ++k) {  // rows: A <- U^dag A
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk + sp * aqk;
        a(q, k) = -spc * apk + c * aqk;
    }
    // Closed forms for the 2x2 block keep the diagonal exactly real and the
    // pivot exactly zero.
    const double cross = 2.0 * babs * c * s;
    a(p, p) = app * c * c + cross + aqq * s * s;
    a(q, q) = app * s * s - cross + aqq * c * c;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (int k = 0; k < n; ++k) {  // accumulate V <- V U
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp + spc * vkq;
        v(k, q) = -sp * vkp + c * vkq;
    }
}

}  // namespace

EigResult eig_hermitian_full(const ComplexMatrix& m, double tol_herm, double off_tol, int max_sweeps) {
    require_hermitian(m, tol_herm);
    const int n = m.dim();
    ComplexMatrix a = m;
    // Fold rounding-level asymmetry away so the iteration sees an exactly
    // Hermitian matrix.
    for (int r = 0; r < n; ++r) {
        a(r, r) = a(r, r).real();
        for (int c = r + 1; c < n; ++c) {
            const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = avg;
            a(c, r) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double norm_f = a.frobenius_norm();
    const double target = off_tol * norm_f;
    if (norm_f > 0.0) {
        bool converged = false;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            if (off_diagonal_norm(a) <= target) {
                converged = true;
                break;
            }
            int rotations = 0;
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const double apq = std::abs(a(p, q));
                    // Skip pivots at the rounding floor of their own diagonal.
                    const double pivot_floor = std::numeric_limits<double>::epsilon() *
                                               (std::abs(a(p, p).real()) + std::abs(a(q, q).real()));
                    if (apq == 0.0 || apq < pivot_floor) continue;
                    jacobi_rotate(a, v, p, q);
                    ++rotations;
                }
            }
            if (rotations == 0) {  // nothing left above the rounding floor
                converged = true;
                break;
            }
        }
        if (!converged && off_diagonal_norm(a) > target)
            throw NoConvergence("Jacobi eigensolver exhausted its sweep budget");
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    Spectrum spec;
    spec.values.resize(n);
    ComplexMatrix vec(n);
    for (int k = 0; k < n; ++k) {
        spec.values[k] = a(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) vec(r, k) = v(r, order[k]);
    }
    return {std::move(spec), std::move(vec)};
}

Spectrum eig_hermitian(const ComplexMatrix& m, double tol_herm, double off_tol, int max_sweeps) {
    return eig_hermitian_full(m, tol_herm, off_tol, max_sweeps).spectrum;
}

double schatten_norm(const Spectrum& s, Exponent p) {
    const double top = s.max_abs();
    if (top == 0.0) return 0.0;
    if (p.is_inf()) return top;
    const double pe = p.value();
    double acc = 0.0;
    for (double v : s.values) acc += std::pow(std::abs(v) / top, pe);
    return top * std::pow(acc, 1.0 / pe);
}

double schatten_norm(const ComplexMatrix& m, Exponent p, double tol_herm) {
    return schatten_norm(eig_hermitian(m, tol_herm), p);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

PureState kron_vec(const PureState& u, const PureState& v) {
    std::vector<cplx> w(static_cast<size_t>(u.dim()) * v.dim());
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) w[static_cast<size_t>(i) * v.dim() + j] = u.amplitudes[i] * v.amplitudes[j];
    return PureState(std::move(w));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2, int keep) {
    if (d1 < 1 || d2 < 1 || !m.is_square() || m.rows() != d1 * d2)
        throw DimensionMismatch("partial_trace: matrix dimension is not d1*d2");
    if (keep != 0 && keep != 1) throw DimensionMismatch("partial_trace: keep must be 0 or 1");
    if (keep == 0) {
        ComplexMatrix r(d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < d2; ++k) s += m(i * d2 + k, j * d2 + k);
                r(i, j) = s;
            }
        return r;
    }
    ComplexMatrix r(d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < d1; ++k) s += m(k * d2 + i, k * d2 + j);
            r(i, j) = s;
        }
    return r;
}

ComplexMatrix outer(const PureState& phi, const PureState& psi) {
    ComplexMatrix m(phi.dim(), psi.dim());
    for (int r = 0; r < phi.dim(); ++r)
        for (int c = 0; c < psi.dim(); ++c) m(r, c) = phi.amplitudes[r] * std::conj(psi.amplitudes[c]);
    return m;
}

double unitarity_residual(const ComplexMatrix& u) {
    if (!u.is_square()) return std::numeric_limits<double>::infinity();
    return (u.adjoint() * u - ComplexMatrix::identity(u.dim())).frobenius_norm();
}

}  // namespace qpurity
