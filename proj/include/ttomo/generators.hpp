#pragma once

#include <cstdint>
#include <cstdio>

#include "ttomo/analytic.hpp"
#include "ttomo/fft.hpp"

namespace ttomo {

/// Relative boundary magnitude above which periodization would corrupt spectra.
inline constexpr double decay_gate_threshold = 1e-12;

inline void check_decay_gate(const GridField& f) {
    double peak = f.max_abs();
    if (peak == 0.0) return;
    double ratio = f.boundary_ring_max() / peak;
    if (ratio >= decay_gate_threshold) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", ratio);
        throw decay_gate_error(
            "field violates the boundary-decay gate (boundary/peak ratio " + std::string(buf) +
                ")",
            ratio);
    }
}

/// Evaluate one analytic scalar per component on the grid nodes.
inline GridField eval_analytic(const Grid2& grid, FieldKind kind,
                               const std::vector<AnalyticScalar>& comps) {
    if (static_cast<int>(comps.size()) != component_count(kind))
        throw error("eval_analytic: component count mismatch");
    GridField out(grid, kind);
    for (int c = 0; c < out.components(); ++c) {
        if (comps[c].empty()) continue;
        for (int b = 0; b < grid.n; ++b)
            for (int a = 0; a < grid.n; ++a) out.at(c, a, b) = comps[c].eval(grid.point(a, b));
    }
    return out;
}

/// Gaussian bump field: weight_c * p_c(x) * exp(-|x-center|^2/width^2) per
/// component. mean_zero swaps in the prefactor (1 - r^2/width^2), whose
/// integral against the Gaussian vanishes exactly. Enforces the decay gate.
inline GridField gen_gaussian(const Grid2& grid, FieldKind kind, Vec2 center, double width,
                              const std::vector<double>& weights, bool mean_zero = false,
                              const std::vector<Poly2>& prefactors = {}) {
    if (static_cast<int>(weights.size()) != component_count(kind))
        throw error("gen_gaussian: weight count mismatch");
    if (width <= 0.0) throw error("gen_gaussian: width must be positive");
    std::vector<AnalyticScalar> comps;
    for (int c = 0; c < component_count(kind); ++c) {
        if (weights[c] == 0.0) {
            comps.emplace_back();
            continue;
        }
        Poly2 p = c < static_cast<int>(prefactors.size()) && !prefactors[c].empty()
                      ? prefactors[c]
                      : Poly2(1.0);
        if (mean_zero) {
            double s = 1.0 / (width * width);
            Poly2 laguerre = Poly2(1.0) + (-s) * (Poly2::monomial(2, 0) + Poly2::monomial(0, 2) +
                                                  (-2.0 * center[0]) * Poly2::monomial(1, 0) +
                                                  (-2.0 * center[1]) * Poly2::monomial(0, 1) +
                                                  Poly2(dot(center, center)));
            p = p * laguerre;
        }
        comps.push_back(AnalyticScalar::gaussian(center, width, weights[c] * p));
    }
    GridField out = eval_analytic(grid, kind, comps);
    check_decay_gate(out);
    return out;
}

/// f_ij = d_i d_j v, exact nodal values of the Hessian of an analytic scalar.
inline GridField gen_hessian_field(const Grid2& grid, const AnalyticScalar& v) {
    auto d1 = v.derivative(0);
    auto d2 = v.derivative(1);
    return eval_analytic(grid, FieldKind::sym2,
                         {d1.derivative(0), d1.derivative(1), d2.derivative(1)});
}

/// Perp-Hessian (d22 psi, -d12 psi, d11 psi): 2-solenoidal by construction,
/// since delta^2 applied to it telescopes to zero identically.
inline GridField gen_perp_hessian_field(const Grid2& grid, const AnalyticScalar& psi) {
    auto d1 = psi.derivative(0);
    auto d2 = psi.derivative(1);
    return eval_analytic(grid, FieldKind::sym2,
                         {d2.derivative(1), -1.0 * d1.derivative(1), d1.derivative(0)});
}

/// Exact nodal values of H v + K u for analytic v (sym2, components
/// v11,v12,v22) and u (vector, components u1,u2).
inline GridField gen_elastic_potential(const Grid2& grid, const std::vector<AnalyticScalar>& v,
                                       const std::vector<AnalyticScalar>& u) {
    if (v.size() != 3 || u.size() != 2) throw error("gen_elastic_potential: expected 3+2 components");
    // second derivatives of v components: D[pair(ij)][component q]
    const std::array<std::array<int, 2>, 3> pairs{{{0, 0}, {0, 1}, {1, 1}}};
    std::array<std::array<AnalyticScalar, 3>, 3> D;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            D[p][q] = v[q].derivative(pairs[p][0]).derivative(pairs[p][1]);
    // symmetrized gradient of u
    AnalyticScalar e11 = u[0].derivative(0);
    AnalyticScalar e12 = 0.5 * u[0].derivative(1);
    e12 += 0.5 * u[1].derivative(0);
    AnalyticScalar e22 = u[1].derivative(1);

    std::vector<AnalyticScalar> w(6);
    auto half = [](AnalyticScalar a, const AnalyticScalar& b) {
        a += b;
        return 0.5 * a;
    };
    // (Hv)_pq = 1/2 (D_p v_q + D_q v_p); K contributes via e and deltas.
    w[0] = half(D[0][0], D[0][0]);      // (11)(11)
    w[0] += e11;
    w[1] = half(D[0][1], D[1][0]);      // (11)(12)
    w[1] += 0.5 * e12;
    w[2] = half(D[0][2], D[2][0]);      // (11)(22)
    w[2] += half(e11, e22);
    w[3] = half(D[1][1], D[1][1]);      // (12)(12)
    w[4] = half(D[1][2], D[2][1]);      // (12)(22)
    w[4] += 0.5 * e12;
    w[5] = half(D[2][2], D[2][2]);      // (22)(22)
    w[5] += e22;
    return eval_analytic(grid, FieldKind::elastic2, w);
}

namespace detail {

// splitmix64: deterministic across platforms, unlike std distributions.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform01() {  // in (0, 1]
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }
};

}  // namespace detail

/// Seeded random field synthesized from a Hermitian spectrum supported on
/// |k| <= rho * N/2; DC bin zeroed when mean_zero. Peak normalized to 1.
inline GridField gen_random_bandlimited(const Grid2& grid, FieldKind kind, std::uint64_t seed,
                                        double rho = 0.25, bool mean_zero = true) {
    if (rho <= 0.0 || rho > 0.5) throw error("gen_random_bandlimited: rho must be in (0, 1/2]");
    const int n = grid.n;
    const double kmax = rho * (n / 2);
    SpectralField spec(grid, kind);
    for (int c = 0; c < spec.components(); ++c) {
        detail::SplitMix64 rng(seed * 0x9E3779B97F4A7C15ull + 0x1234ull * (c + 1));
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1) {
                int k1 = grid.signed_index(i1), k2 = grid.signed_index(i2);
                if (std::sqrt(double(k1) * k1 + double(k2) * k2) > kmax) continue;
                bool canonical = k2 > 0 || (k2 == 0 && k1 > 0);
                bool self_conj = k1 == 0 && k2 == 0;
                if (!canonical && !self_conj) continue;
                int j1 = (n - i1) % n, j2 = (n - i2) % n;
                if (self_conj) {
                    spec.at(c, i1, i2) = Complex(mean_zero ? 0.0 : rng.normal(), 0.0);
                } else {
                    Complex z(rng.normal(), rng.normal());
                    spec.at(c, i1, i2) = z;
                    spec.at(c, j1, j2) = std::conj(z);
                }
            }
    }
    GridField out = ifft_field(spec);
    double peak = out.max_abs();
    if (peak > 0.0) out *= 1.0 / peak;
    return out;
}

}  // namespace ttomo
