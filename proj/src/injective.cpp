#include "qpurity/injective.hpp"

#include <algorithm>
#include <cmath>

#include "qpurity/rng.hpp"

namespace qpurity {

namespace {

// Partial contraction of conj(v) against all factors except `skip`:
// g_i = sum_{I : I_skip = i} conj(v_I) prod_{a != skip} phi_a[I_a].
// The optimal free factor is conj(g)/||g|| and the achieved overlap is ||g||.
std::vector<cplx> contract_all_but(const TensorVector& v, const std::vector<PureState>& factors, int skip) {
    const int n = v.order();
    std::vector<cplx> g(v.dims[skip], 0.0);
    std::vector<int> idx(n, 0);
    const size_t total = v.total_dim();
    for (size_t flat = 0; flat < total; ++flat) {
        cplx w = std::conj(v.amplitudes[flat]);
        if (w != cplx(0.0)) {
            for (int a = 0; a < n; ++a)
                if (a != skip) w *= factors[a].amplitudes[idx[a]];
            g[idx[skip]] += w;
        }
        for (int a = n - 1; a >= 0; --a) {  // odometer, last index fastest
            if (++idx[a] < v.dims[a]) break;
            idx[a] = 0;
        }
    }
    return g;
}

double vec_norm(const std::vector<cplx>& g) {
    double s = 0.0;
    for (const auto& z : g) s += std::norm(z);
    return std::sqrt(s);
}

struct SweepOutcome {
    double value = 0.0;
    std::vector<double> values;
    bool converged = false;
};

// Cyclic alternating sweeps from a given starting tuple. Mutates the tuple in
// place toward a stationary point.
SweepOutcome alternate(const TensorVector& v, std::vector<PureState>& factors, int max_sweeps, double tol_sweep) {
    SweepOutcome out;
    double prev = -1.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double value = prev;
        for (int b = 0; b < v.order(); ++b) {
            std::vector<cplx> g = contract_all_but(v, factors, b);
            const double gn = vec_norm(g);
            if (gn < 1e-300) continue;  // overlap vanishes for every choice of this factor
            for (auto& z : g) z = std::conj(z) / gn;
            factors[b] = PureState(std::move(g));
            value = gn;
        }
        out.values.push_back(value);
        if (prev >= 0.0 && value - prev < tol_sweep) {
            out.value = value;
            out.converged = true;
            return out;
        }
        prev = value;
    }
    out.value = std::max(prev, 0.0);
    return out;
}

int default_restarts(const TensorVector& v) {
    const double scaled = 10.0 * static_cast<double>(v.total_dim());
    return static_cast<int>(std::min(2000.0, std::max(100.0, scaled)));
}

}  // namespace

RankOneFit mu_with_starts(const TensorVector& v, const std::vector<std::vector<PureState>>& starts,
                          const OptConfig& cfg, uint64_t seed) {
    if (v.order() < 2) throw ShapeMismatch("mu: tensor must have at least two factors");
    if (v.norm() == 0.0) {  // every overlap vanishes
        RankOneFit zero;
        for (int a = 0; a < v.order(); ++a) {
            std::vector<cplx> e(v.dims[a], 0.0);
            e[0] = 1.0;
            zero.factors.push_back(PureState(std::move(e)));
        }
        zero.converged = true;
        return zero;
    }
    const int restarts = cfg.restarts > 0 ? cfg.restarts : default_restarts(v);
    const int max_sweeps = cfg.max_iterations > 0 ? cfg.max_iterations : 500;
    const double tol_sweep = cfg.tolerance > 0.0 ? cfg.tolerance : 1e-12;

    RankOneFit best;
    best.value = -1.0;
    auto consider = [&](std::vector<PureState> tuple) {
        SweepOutcome out = alternate(v, tuple, max_sweeps, tol_sweep);
        if (out.value > best.value) {
            best.value = out.value;
            best.factors = std::move(tuple);
            best.converged = out.converged;
            best.sweep_values = std::move(out.values);
        }
    };

    for (const auto& start : starts) {
        if (static_cast<int>(start.size()) != v.order()) throw ShapeMismatch("mu: warm start has wrong arity");
        consider(start);
    }
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(r)));
        std::vector<PureState> tuple;
        tuple.reserve(v.order());
        for (int a = 0; a < v.order(); ++a) tuple.push_back(rng.haar_state(v.dims[a]));
        consider(std::move(tuple));
    }
    best.restarts_used = restarts + static_cast<int>(starts.size());
    if (best.value < 0.0) best.value = 0.0;
    return best;
}

RankOneFit mu(const TensorVector& v, const OptConfig& cfg, uint64_t seed) {
    return mu_with_starts(v, {}, cfg, seed);
}

double mu_of_channel(const Channel& ch, const OptConfig& cfg, uint64_t seed) {
    const RankOneFit fit = mu(channel_to_vector(ch), cfg, seed);
    return fit.value * fit.value;
}

TensorVector antisymmetric_vector(int d) {
    if (d != 3) throw InvalidDimension("antisymmetric_vector: only d = 3 has one of order 3");
    std::vector<cplx> amps(27, 0.0);
    const double w = 1.0 / std::sqrt(6.0);
    const int perms[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                             {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
    for (const auto& p : perms) amps[p[0] * 9 + p[1] * 3 + p[2]] = p[3] * w;
    return TensorVector({3, 3, 3}, std::move(amps));
}

TensorVector regroup_product(const TensorVector& v, const TensorVector& w) {
    if (v.order() != w.order()) throw ShapeMismatch("regroup_product: tensors have different order");
    const int n = v.order();
    std::vector<int> dims(n);
    for (int a = 0; a < n; ++a) dims[a] = v.dims[a] * w.dims[a];

    std::vector<size_t> strides(n, 1);
    for (int a = n - 2; a >= 0; --a) strides[a] = strides[a + 1] * static_cast<size_t>(dims[a + 1]);

    std::vector<cplx> amps(v.total_dim() * w.total_dim(), 0.0);
    std::vector<int> vi(n, 0), wi(n, 0);
    for (size_t fv = 0; fv < v.total_dim(); ++fv) {
        std::fill(wi.begin(), wi.end(), 0);
        for (size_t fw = 0; fw < w.total_dim(); ++fw) {
            size_t flat = 0;
            for (int a = 0; a < n; ++a)
                flat += strides[a] * static_cast<size_t>(vi[a] * w.dims[a] + wi[a]);
            amps[flat] = v.amplitudes[fv] * w.amplitudes[fw];
            for (int a = n - 1; a >= 0; --a) {
                if (++wi[a] < w.dims[a]) break;
                wi[a] = 0;
            }
        }
        for (int a = n - 1; a >= 0; --a) {
            if (++vi[a] < v.dims[a]) break;
            vi[a] = 0;
        }
    }
    return TensorVector(std::move(dims), std::move(amps));
}

namespace {

// Maximally entangled unit vector on C^da (x) C^db, used as a structured warm
// start for regrouped products.
PureState max_entangled_factor(int da, int db) {
    const int m = std::min(da, db);
    std::vector<cplx> amps(static_cast<size_t>(da) * db, 0.0);
    const double w = 1.0 / std::sqrt(static_cast<double>(m));
    for (int i = 0; i < m; ++i) amps[static_cast<size_t>(i) * db + i] = w;
    return PureState(std::move(amps));
}

}  // namespace

MultiplicativityCheck check_mu_multiplicativity(const TensorVector& v, const TensorVector& w, const OptConfig& cfg,
                                                uint64_t seed) {
    if (v.order() != w.order()) throw ShapeMismatch("check_mu_multiplicativity: tensors have different order");
    MultiplicativityCheck out;
    out.v = mu(v, cfg, derive_seed(seed, 1));
    out.w = mu(w, cfg, derive_seed(seed, 2));

    const TensorVector vw = regroup_product(v, w);
    std::vector<std::vector<PureState>> starts;
    std::vector<PureState> product_start;
    std::vector<PureState> entangled_start;
    for (int a = 0; a < v.order(); ++a) {
        product_start.push_back(kron_vec(out.v.factors[a], out.w.factors[a]));
        entangled_start.push_back(max_entangled_factor(v.dims[a], w.dims[a]));
    }
    starts.push_back(std::move(product_start));
    starts.push_back(std::move(entangled_start));
    out.vw = mu_with_starts(vw, starts, cfg, derive_seed(seed, 3));

    out.ratio = out.vw.value / (out.v.value * out.w.value);
    return out;
}

}  // namespace qpurity
