// Dense complex linear algebra at small dimension: Hermitian eigendecomposition
// (cyclic complex Jacobi), Schatten p-norms, Kronecker products, partial traces.
// Everything is a pure function on immutable values; results never alias inputs.

#ifndef QPURITY_LINALG_HPP
#define QPURITY_LINALG_HPP

#include <complex>
#include <vector>

#include "qpurity/errors.hpp"

namespace qpurity {

using cplx = std::complex<double>;

// Default tolerances. Functions take these as defaulted parameters so callers
// can override per call.
namespace tol {
inline constexpr double hermitian = 1e-10;       // symmetry check in eig/schatten
inline constexpr double jacobi_off = 1e-14;      // off-diagonal Frobenius target, relative
inline constexpr int jacobi_max_sweeps = 100;    // sweep budget before NoConvergence
inline constexpr double trace_preserving = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double state_norm = 1e-12;
}  // namespace tol

// Dense complex matrix, row-major. Square in most of the library; rectangular
// is allowed so Kraus operators with dim_out != dim_in fit the same type.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 1 || cols < 1) throw InvalidDimension("ComplexMatrix: dimensions must be positive");
    }
    explicit ComplexMatrix(int dim) : ComplexMatrix(dim, dim) {}

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    // Side length of a square matrix.
    int dim() const {
        if (!is_square()) throw DimensionMismatch("ComplexMatrix::dim: matrix is not square");
        return rows_;
    }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return a_; }

    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    ComplexMatrix adjoint() const;

    cplx trace() const;
    double frobenius_norm() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

// Real eigenvalue list sorted descending.
struct Spectrum {
    std::vector<double> values;

    Spectrum() = default;
    explicit Spectrum(std::vector<double> v);

    int size() const { return static_cast<int>(values.size()); }
    double sum() const;
    double max_abs() const;
};

// True when the values could be the spectrum of a density matrix:
// all >= -tol_psd and summing to 1 within tol_sum.
bool is_density_spectrum(const Spectrum& s, double tol_psd = tol::psd, double tol_sum = 1e-10);

// Unit vector in a Hilbert space. The constructor normalizes, so the unit-norm
// invariant holds for every live instance.
struct PureState {
    std::vector<cplx> amplitudes;

    explicit PureState(std::vector<cplx> amps);

    int dim() const { return static_cast<int>(amplitudes.size()); }
    double norm() const;
};

// Schatten exponent p restricted to (1, inf]. Infinity is a distinct variant,
// not a large float.
class Exponent {
public:
    Exponent(double p);  // implicit on purpose: schatten_norm(m, 2.0)
    static Exponent inf() { return Exponent(inf_tag{}); }

    bool is_inf() const { return inf_; }
    double value() const;          // finite value; throws if infinite
    double one_minus_inv() const;  // 1 - 1/p, = 1 at p = inf

    // "inf" or a decimal > 1; used by the CLI and file readers.
    static Exponent parse(const std::string& text);
    std::string str() const;

private:
    struct inf_tag {};
    explicit Exponent(inf_tag) : inf_(true), p_(0.0) {}
    bool inf_ = false;
    double p_ = 0.0;
};

// All eigenvalues of a Hermitian matrix, descending. Throws NotHermitian if the
// symmetry check fails, NoConvergence if the Jacobi sweep budget is exhausted.
Spectrum eig_hermitian(const ComplexMatrix& m, double tol_herm = tol::hermitian,
                       double off_tol = tol::jacobi_off, int max_sweeps = tol::jacobi_max_sweeps);

// Eigendecomposition with eigenvectors: m = V diag(values) V^dag, column k of
// V paired with values[k].
struct EigResult {
    Spectrum spectrum;
    ComplexMatrix vectors;
};
EigResult eig_hermitian_full(const ComplexMatrix& m, double tol_herm = tol::hermitian,
                             double off_tol = tol::jacobi_off, int max_sweeps = tol::jacobi_max_sweeps);

// (sum_i |l_i|^p)^{1/p} over the Hermitian spectrum; p = inf gives max |l_i|.
double schatten_norm(const ComplexMatrix& m, Exponent p, double tol_herm = tol::hermitian);
double schatten_norm(const Spectrum& s, Exponent p);

// Kronecker product, row-major convention: (a kron b)(i*rb+k, j*cb+l) = a(i,j) b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
PureState kron_vec(const PureState& u, const PureState& v);

// Trace out one subsystem of a bipartite operator on C^d1 (x) C^d2.
// keep = 0 returns the d1 x d1 reduction, keep = 1 the d2 x d2 one.
ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2, int keep);

// |phi><psi|
ComplexMatrix outer(const PureState& phi, const PureState& psi);

double unitarity_residual(const ComplexMatrix& u);  // ||u^dag u - 1||_F

}  // namespace qpurity

#endif
