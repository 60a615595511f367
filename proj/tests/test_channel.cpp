#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpurity/channel.hpp"
#include "qpurity/injective.hpp"
#include "qpurity/rng.hpp"

using namespace qpurity;

namespace {

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

// The non-covariant, non-self-dual channel X -> (X00 + X11)|0><0| with Kraus
// family {|0><0|, |0><1|}.
Channel collapse_channel() {
    ComplexMatrix k1(2), k2(2);
    k1(0, 0) = 1.0;
    k2(0, 1) = 1.0;
    return Channel({k1, k2});
}

}  // namespace

TEST_CASE("wh_channel: Kraus family at d = 3") {
    const Channel ch = wh_channel(3);
    CHECK(ch.kraus.size() == 3);
    for (const auto& a : ch.kraus) CHECK((a + a.transpose()).frobenius_norm() == 0.0);  // antisymmetric
    CHECK(tp_residual(ch) <= 1e-12);
}

TEST_CASE("wh_channel: pure output structure at d = 3") {
    const Channel ch = wh_channel(3);
    ComplexMatrix rho(3);
    rho(0, 0) = 1.0;
    const ComplexMatrix out = apply(ch, rho);
    ComplexMatrix expect = ComplexMatrix::identity(3);
    expect(0, 0) = 0.0;
    expect *= 0.5;
    CHECK(max_entry_diff(out, expect) <= 1e-15);
    const Spectrum s = eig_hermitian(out);
    CHECK(s.values[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.values[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(s.values[2]) <= 1e-14);
}

TEST_CASE("wh_channel: Kraus form equals the linear form") {
    Rng rng(11);
    for (int d : {3, 4, 5}) {
        const Channel ch = wh_channel(d);
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix rho = rng.random_density(d);
            CHECK(max_entry_diff(apply(ch, rho), wh_linear_form(rho)) <= 1e-12);
        }
    }
}

TEST_CASE("wh_channel: rejects d < 3") {
    CHECK_THROWS_AS(wh_channel(2), InvalidDimension);
    CHECK_THROWS_AS(wh_channel(0), InvalidDimension);
}

TEST_CASE("apply: identity channel, fixed point, conjugated pure output") {
    Rng rng(21);
    const Channel id3 = Channel::identity(3);
    const ComplexMatrix rho = rng.random_density(3);
    CHECK(max_entry_diff(apply(id3, rho), rho) <= 1e-15);

    const Channel wh3 = wh_channel(3);
    ComplexMatrix mixed = ComplexMatrix::identity(3);
    mixed *= 1.0 / 3.0;
    CHECK(max_entry_diff(apply(wh3, mixed), mixed) <= 1e-15);

    // complex pure input: output is (1 - |conj(phi)><conj(phi)|)/(d-1)
    const PureState phi = rng.haar_state(3);
    std::vector<cplx> conj_amps(3);
    for (int i = 0; i < 3; ++i) conj_amps[i] = std::conj(phi.amplitudes[i]);
    const PureState phibar(conj_amps);
    ComplexMatrix expect = ComplexMatrix::identity(3) - outer(phibar, phibar);
    expect *= 0.5;
    CHECK(max_entry_diff(apply(wh3, outer(phi, phi)), expect) <= 1e-14);

    CHECK_THROWS_AS(apply(wh3, ComplexMatrix::identity(4)), DimensionMismatch);
}

TEST_CASE("apply: linearity and positivity") {
    Rng rng(33);
    const Channel ch = wh_channel(4);
    const ComplexMatrix a = rng.random_density(4), b = rng.random_density(4);
    const cplx alpha(0.7, 0.1), beta(-0.2, 0.4);
    ComplexMatrix lin = alpha * apply(ch, a) + beta * apply(ch, b);
    ComplexMatrix mix = alpha * a;
    mix += beta * b;
    CHECK(max_entry_diff(apply(ch, mix), lin) <= 1e-12);

    const Spectrum s = eig_hermitian(apply(ch, a));
    CHECK(s.values.back() >= -1e-10);
    CHECK(std::abs(s.sum() - 1.0) <= 1e-10);
}

TEST_CASE("tensor: identity, entangled output spectrum, product factorization") {
    const Channel id6 = tensor(Channel::identity(2), Channel::identity(3));
    Rng rng(44);
    const ComplexMatrix rho6 = rng.random_density(6);
    CHECK(max_entry_diff(apply(id6, rho6), rho6) <= 1e-15);

    const Channel wh3 = wh_channel(3);
    const Channel ww = tensor(wh3, wh3);
    CHECK(tp_residual(ww) <= 1e-10);

    std::vector<cplx> phim(9, 0.0);
    for (int a = 0; a < 3; ++a) phim[a * 3 + a] = 1.0 / std::sqrt(3.0);
    const PureState phi(phim);
    const Spectrum s = eig_hermitian(apply(ww, outer(phi, phi)));
    CHECK(s.values[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    for (int i = 1; i < 9; ++i) CHECK(s.values[i] == doctest::Approx(1.0 / 12.0).epsilon(1e-11));

    // product pure input factorizes into the kron of single-channel outputs
    const PureState u = rng.haar_state(3), v = rng.haar_state(3);
    const ComplexMatrix got = apply(ww, outer(kron_vec(u, v), kron_vec(u, v)));
    const ComplexMatrix expect = kron(apply(wh3, outer(u, u)), apply(wh3, outer(v, v)));
    CHECK(max_entry_diff(got, expect) <= 1e-12);

    // and on product density matrices
    const ComplexMatrix ra = rng.random_density(3), rb = rng.random_density(3);
    CHECK(max_entry_diff(apply(ww, kron(ra, rb)), kron(apply(wh3, ra), apply(wh3, rb))) <= 1e-11);
}

TEST_CASE("choi: rank-one for the identity, antisymmetric support for Werner-Holevo") {
    const Spectrum id_spec = eig_hermitian(choi(Channel::identity(2)));
    CHECK(id_spec.values[0] == doctest::Approx(2.0).epsilon(1e-13));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(id_spec.values[i]) <= 1e-13);

    // (1 - SWAP)/(d-1): three equal nonzero eigenvalues at d = 3
    const Spectrum wh_spec = eig_hermitian(choi(wh_channel(3)));
    REQUIRE(wh_spec.size() == 9);
    for (int i = 0; i < 3; ++i) CHECK(wh_spec.values[i] == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 3; i < 9; ++i) CHECK(std::abs(wh_spec.values[i]) <= 1e-12);
    CHECK(wh_spec.values.back() >= -1e-10);

    // trace preservation shows up as the partial trace over the output slot
    const Channel wh4 = wh_channel(4);
    CHECK(max_entry_diff(partial_trace(choi(wh4), 4, 4, 0), ComplexMatrix::identity(4)) <= 1e-12);
}

TEST_CASE("Channel: trace-preservation gate on construction") {
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= 0.5;
    CHECK_THROWS_AS(Channel({half}), NotTracePreserving);
    const Channel broken = Channel::unchecked({half});
    CHECK(tp_residual(broken) > 0.5);
    CHECK_THROWS_AS(Channel(std::vector<ComplexMatrix>{}), InvalidDimension);
}

TEST_CASE("covariance_residual: exact for Werner-Holevo, positive for a non-covariant channel") {
    Rng rng(55);
    const Channel wh3 = wh_channel(3);
    const ComplexMatrix rho = rng.random_density(3);
    CHECK(covariance_residual(wh3, ComplexMatrix::identity(3), rho) <= 1e-14);
    for (int trial = 0; trial < 5; ++trial)
        CHECK(covariance_residual(wh3, rng.haar_unitary(3), rng.random_density(3)) <= 1e-10);

    // collapse channel with the basis swap: S(u rho u^dag) = tr(rho)|0><0| but
    // conj(u) S(rho) u^T = tr(rho)|1><1|
    ComplexMatrix swap(2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    Rng rng2(56);
    CHECK(covariance_residual(collapse_channel(), swap, rng2.random_density(2)) > 0.1);

    ComplexMatrix not_unitary = ComplexMatrix::identity(3);
    not_unitary(0, 0) = 2.0;
    CHECK_THROWS_AS(covariance_residual(wh3, not_unitary, rho), NotUnitary);
}

TEST_CASE("hs_hermiticity_residual: zero for Werner-Holevo, positive for a one-sided channel") {
    Rng rng(66);
    const Channel wh3 = wh_channel(3);
    CHECK(hs_hermiticity_residual(wh3, ComplexMatrix::identity(3), ComplexMatrix::identity(3)) <= 1e-15);
    for (int trial = 0; trial < 5; ++trial)
        CHECK(hs_hermiticity_residual(wh3, rng.gaussian_matrix(3, 3), rng.gaussian_matrix(3, 3)) <= 1e-10);

    ComplexMatrix a(2), b(2);
    a(0, 0) = 1.0;  // |0><0|
    b(1, 1) = 1.0;  // |1><1|
    CHECK(hs_hermiticity_residual(collapse_channel(), a, b) > 0.1);

    CHECK_THROWS_AS(hs_hermiticity_residual(wh3, ComplexMatrix::identity(4), ComplexMatrix::identity(3)),
                    DimensionMismatch);
}

TEST_CASE("channel_to_vector: identity channel flattens to vec(1)") {
    const TensorVector v = channel_to_vector(Channel::identity(2));
    REQUIRE(v.dims == std::vector<int>{1, 2, 2});
    CHECK(v.amplitudes[0] == cplx(1.0));
    CHECK(v.amplitudes[1] == cplx(0.0));
    CHECK(v.amplitudes[2] == cplx(0.0));
    CHECK(v.amplitudes[3] == cplx(1.0));
    CHECK(v.norm() * v.norm() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("channel_to_vector: Werner-Holevo at d = 3 is the epsilon tensor up to per-slice sign") {
    const Channel wh3 = wh_channel(3);
    const TensorVector v = channel_to_vector(wh3);
    REQUIRE(v.dims == std::vector<int>{3, 3, 3});
    CHECK(v.norm() * v.norm() == doctest::Approx(3.0).epsilon(1e-12));  // forced by trace preservation

    const TensorVector eps = antisymmetric_vector(3);
    const double scale = std::sqrt(3.0);       // ||v|| / ||eps||
    const int missing[3] = {2, 1, 0};          // pair (i,j) <-> the left-out basis index
    for (int x = 0; x < 3; ++x) {
        double sign = 0.0;
        for (int j = 0; j < 3 && sign == 0.0; ++j)
            for (int k = 0; k < 3 && sign == 0.0; ++k) {
                const double e = eps.amplitudes[missing[x] * 9 + j * 3 + k].real();
                const double a = v.amplitudes[x * 9 + j * 3 + k].real();
                if (e != 0.0) sign = a / (scale * e);
            }
        CHECK(std::abs(std::abs(sign) - 1.0) <= 1e-12);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double e = eps.amplitudes[missing[x] * 9 + j * 3 + k].real();
                const double a = v.amplitudes[x * 9 + j * 3 + k].real();
                CHECK(std::abs(a - sign * scale * e) <= 1e-12);
            }
    }
}

TEST_CASE("channel_to_vector: doubling the channel doubles the vector") {
    const Channel wh3 = wh_channel(3);
    const TensorVector va = channel_to_vector(wh3);
    const TensorVector vv = channel_to_vector(tensor(wh3, wh3));
    const TensorVector expect = regroup_product(va, va);
    REQUIRE(vv.dims == expect.dims);
    for (size_t i = 0; i < vv.amplitudes.size(); ++i) CHECK(vv.amplitudes[i] == expect.amplitudes[i]);
}

TEST_CASE("TensorVector: shape validation") {
    CHECK_THROWS_AS(TensorVector({2, 2}, std::vector<cplx>(3)), ShapeMismatch);
    CHECK_THROWS_AS(TensorVector({0, 2}, std::vector<cplx>(0)), InvalidDimension);
}
