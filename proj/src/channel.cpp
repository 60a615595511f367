#include "qpurity/channel.hpp"

#include <cmath>
#include <string>

namespace qpurity {

namespace {

void check_kraus_shapes(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) throw InvalidDimension("Channel: Kraus list must be nonempty");
    for (const auto& k : ops)
        if (k.rows() != ops.front().rows() || k.cols() != ops.front().cols())
            throw DimensionMismatch("Channel: Kraus operators differ in shape");
}

ComplexMatrix kraus_gram(const std::vector<ComplexMatrix>& ops) {
    ComplexMatrix g(ops.front().cols());
    for (const auto& k : ops) g += k.adjoint() * k;
    return g;
}

}  // namespace

Channel::Channel(std::vector<ComplexMatrix> ops, double tol_tp) {
    check_kraus_shapes(ops);
    dim_out = ops.front().rows();
    dim_in = ops.front().cols();
    kraus = std::move(ops);
    const double res = (kraus_gram(kraus) - ComplexMatrix::identity(dim_in)).frobenius_norm();
    if (res > tol_tp)
        throw NotTracePreserving("Channel: Kraus family is not trace preserving (residual " +
                                 std::to_string(res) + ")");
}

Channel Channel::unchecked(std::vector<ComplexMatrix> ops) {
    check_kraus_shapes(ops);
    Channel ch;
    ch.dim_out = ops.front().rows();
    ch.dim_in = ops.front().cols();
    ch.kraus = std::move(ops);
    return ch;
}

Channel Channel::identity(int dim) {
    return Channel(std::vector<ComplexMatrix>{ComplexMatrix::identity(dim)});
}

double tp_residual(const Channel& ch) {
    return (kraus_gram(ch.kraus) - ComplexMatrix::identity(ch.dim_in)).frobenius_norm();
}

TensorVector::TensorVector(std::vector<int> d, std::vector<cplx> amps) : dims(std::move(d)), amplitudes(std::move(amps)) {
    if (dims.empty()) throw InvalidDimension("TensorVector: empty dimension list");
    size_t n = 1;
    for (int x : dims) {
        if (x < 1) throw InvalidDimension("TensorVector: dimensions must be positive");
        n *= static_cast<size_t>(x);
    }
    if (amplitudes.size() != n) throw ShapeMismatch("TensorVector: amplitude count does not match dims");
}

size_t TensorVector::total_dim() const {
    size_t n = 1;
    for (int x : dims) n *= static_cast<size_t>(x);
    return n;
}

double TensorVector::norm() const {
    double s = 0.0;
    for (const auto& z : amplitudes) s += std::norm(z);
    return std::sqrt(s);
}

Channel wh_channel(int d) {
    if (d < 3) throw InvalidDimension("wh_channel: dimension must be >= 3");
    std::vector<ComplexMatrix> ops;
    ops.reserve(static_cast<size_t>(d) * (d - 1) / 2);
    const double w = 1.0 / std::sqrt(static_cast<double>(d - 1));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            ComplexMatrix a(d);
            a(i, j) = w;
            a(j, i) = -w;
            ops.push_back(std::move(a));
        }
    return Channel(std::move(ops));
}

ComplexMatrix wh_linear_form(const ComplexMatrix& rho) {
    const int d = rho.dim();
    if (d < 3) throw InvalidDimension("wh_linear_form: dimension must be >= 3");
    ComplexMatrix out = ComplexMatrix::identity(d);
    out *= rho.trace();
    out -= rho.transpose();
    out *= 1.0 / (d - 1.0);
    return out;
}

ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho) {
    if (!rho.is_square() || rho.rows() != ch.dim_in)
        throw DimensionMismatch("apply: state dimension does not match channel input");
    ComplexMatrix out(ch.dim_out);
    for (const auto& k : ch.kraus) out += k * rho * k.adjoint();
    return out;
}

Channel tensor(const Channel& ch1, const Channel& ch2) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(ch1.kraus.size() * ch2.kraus.size());
    for (const auto& a : ch1.kraus)
        for (const auto& b : ch2.kraus) ops.push_back(kron(a, b));
    return Channel(std::move(ops));
}

ComplexMatrix choi(const Channel& ch) {
    const int din = ch.dim_in, dout = ch.dim_out;
    ComplexMatrix c(din * dout);
    // sum_x w_x w_x^dag with w_x = sum_j |j> kron A_x |j>
    for (const auto& a : ch.kraus) {
        std::vector<cplx> w(static_cast<size_t>(din) * dout);
        for (int j = 0; j < din; ++j)
            for (int m = 0; m < dout; ++m) w[static_cast<size_t>(j) * dout + m] = a(m, j);
        for (size_t r = 0; r < w.size(); ++r)
            for (size_t s = 0; s < w.size(); ++s)
                c(static_cast<int>(r), static_cast<int>(s)) += w[r] * std::conj(w[s]);
    }
    return c;
}

double covariance_residual(const Channel& ch, const ComplexMatrix& u, const ComplexMatrix& rho, double tol_u) {
    if (ch.dim_in != ch.dim_out) throw DimensionMismatch("covariance_residual: channel must be square");
    if (u.rows() != ch.dim_in || rho.rows() != ch.dim_in || !rho.is_square())
        throw DimensionMismatch("covariance_residual: dimension mismatch");
    if (unitarity_residual(u) > tol_u) throw NotUnitary("covariance_residual: u fails the unitarity check");
    const ComplexMatrix lhs = apply(ch, u * rho * u.adjoint());
    const ComplexMatrix rhs = u.conj() * apply(ch, rho) * u.transpose();
    return (lhs - rhs).frobenius_norm();
}

double hs_hermiticity_residual(const Channel& ch, const ComplexMatrix& a, const ComplexMatrix& b) {
    if (ch.dim_in != ch.dim_out) throw DimensionMismatch("hs_hermiticity_residual: channel must be square");
    if (a.rows() != ch.dim_in || b.rows() != ch.dim_in || !a.is_square() || !b.is_square())
        throw DimensionMismatch("hs_hermiticity_residual: dimension mismatch");
    const cplx lhs = (a.adjoint() * apply(ch, b)).trace();
    const cplx rhs = (apply(ch, a).adjoint() * b).trace();
    return std::abs(lhs - rhs);
}

TensorVector channel_to_vector(const Channel& ch) {
    const int nk = static_cast<int>(ch.kraus.size());
    std::vector<cplx> amps;
    amps.reserve(static_cast<size_t>(nk) * ch.dim_out * ch.dim_in);
    for (const auto& a : ch.kraus)
        for (int j = 0; j < ch.dim_out; ++j)
            for (int k = 0; k < ch.dim_in; ++k) amps.push_back(a(j, k));
    return TensorVector({nk, ch.dim_out, ch.dim_in}, std::move(amps));
}

}  // namespace qpurity
