#pragma once

#include "ttomo/spectral.hpp"

namespace ttomo {

enum class Backend { spectral, finite_difference };

namespace detail {

/// 4th-order central first derivative, periodic wrap.
inline std::vector<double> fd_d1(const std::vector<double>& a, int n, double h, int axis) {
    std::vector<double> out(a.size());
    auto idx = [n](int x, int y) { return static_cast<std::size_t>(y) * n + x; };
    double c = 1.0 / (12.0 * h);
    for (int b = 0; b < n; ++b)
        for (int x = 0; x < n; ++x) {
            auto sh = [&](int o) {
                int xa = axis == 0 ? (x + o + 2 * n) % n : x;
                int xb = axis == 1 ? (b + o + 2 * n) % n : b;
                return a[idx(xa, xb)];
            };
            out[idx(x, b)] = c * (8.0 * (sh(1) - sh(-1)) - (sh(2) - sh(-2)));
        }
    return out;
}

/// 4th-order second derivative along one axis, periodic wrap.
inline std::vector<double> fd_d2(const std::vector<double>& a, int n, double h, int axis) {
    std::vector<double> out(a.size());
    auto idx = [n](int x, int y) { return static_cast<std::size_t>(y) * n + x; };
    double c = 1.0 / (12.0 * h * h);
    for (int b = 0; b < n; ++b)
        for (int x = 0; x < n; ++x) {
            auto sh = [&](int o) {
                int xa = axis == 0 ? (x + o + 2 * n) % n : x;
                int xb = axis == 1 ? (b + o + 2 * n) % n : b;
                return a[idx(xa, xb)];
            };
            out[idx(x, b)] = c * (-sh(-2) + 16.0 * sh(-1) - 30.0 * sh(0) + 16.0 * sh(1) - sh(2));
        }
    return out;
}

inline std::vector<double> spectral_component_multiplier(const Grid2& grid,
                                                         const std::vector<double>& data,
                                                         int ax1, int ax2) {
    // derivative of one scalar component: symbol (i y_ax1) [* (i y_ax2)]
    const int n = grid.n;
    std::vector<Complex> buf(data.size());
    for (std::size_t k = 0; k < data.size(); ++k) buf[k] = data[k];
    detail::fft2_inplace(buf, n, false);
    for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1) {
            std::size_t k = static_cast<std::size_t>(i2) * n + i1;
            if (i1 == n / 2 || i2 == n / 2) {
                buf[k] = 0.0;
                continue;
            }
            double y1 = grid.freq(grid.signed_index(i1));
            double y2 = grid.freq(grid.signed_index(i2));
            Complex m(0.0, ax1 == 0 ? y1 : y2);
            if (ax2 >= 0) m *= Complex(0.0, ax2 == 0 ? y1 : y2);
            buf[k] *= m;
        }
    detail::fft2_inplace(buf, n, true);
    std::vector<double> out(data.size());
    double inv = 1.0 / (static_cast<double>(n) * n);
    for (std::size_t k = 0; k < data.size(); ++k) out[k] = buf[k].real() * inv;
    return out;
}

}  // namespace detail

/// First derivative of one component along an axis.
inline std::vector<double> component_derivative(const Grid2& grid, const std::vector<double>& data,
                                                int axis, Backend backend = Backend::spectral) {
    if (backend == Backend::spectral)
        return detail::spectral_component_multiplier(grid, data, axis, -1);
    return detail::fd_d1(data, grid.n, grid.spacing(), axis);
}

/// Second derivative d_ax1 d_ax2 of one component.
inline std::vector<double> component_second(const Grid2& grid, const std::vector<double>& data,
                                            int ax1, int ax2, Backend backend = Backend::spectral) {
    if (backend == Backend::spectral)
        return detail::spectral_component_multiplier(grid, data, ax1, ax2);
    if (ax1 == ax2) return detail::fd_d2(data, grid.n, grid.spacing(), ax1);
    return detail::fd_d1(detail::fd_d1(data, grid.n, grid.spacing(), ax1), grid.n, grid.spacing(), ax2);
}

/// (H v)_ijkl = 1/2 (d_i d_j v_kl + d_k d_l v_ij), sym2 -> elastic2.
inline GridField apply_H(const GridField& v, Backend backend = Backend::spectral) {
    if (v.kind() != FieldKind::sym2) throw error("apply_H: expected sym2 field");
    const Grid2& g = v.grid();
    const std::array<std::array<int, 2>, 3> pairs{{{0, 0}, {0, 1}, {1, 1}}};
    std::array<std::array<std::vector<double>, 3>, 3> D;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            D[p][q] = component_second(g, v.component(q), pairs[p][0], pairs[p][1], backend);
    GridField out(g, FieldKind::elastic2);
    const std::array<std::array<int, 2>, 6> slots{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
    for (int s = 0; s < 6; ++s) {
        auto [p, q] = slots[s];
        auto& dst = out.component(s);
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = 0.5 * (D[p][q][k] + D[q][p][k]);
    }
    return out;
}

/// (H* w)_ij = sum_kl d_k d_l w_ijkl (adjoint of apply_H), elastic2 -> sym2.
inline GridField apply_Hstar(const GridField& w, Backend backend = Backend::spectral) {
    if (w.kind() != FieldKind::elastic2) throw error("apply_Hstar: expected elastic2 field");
    const Grid2& g = w.grid();
    GridField out(g, FieldKind::sym2);
    const std::array<std::array<int, 2>, 3> pairs{{{0, 0}, {0, 1}, {1, 1}}};
    const std::array<int, 3> pair_mult{1, 2, 1};
    auto slot = [](int p, int q) {
        if (p > q) std::swap(p, q);
        return p * 3 - p * (p - 1) / 2 + (q - p);
    };
    for (int p = 0; p < 3; ++p) {
        auto& dst = out.component(p);
        for (int q = 0; q < 3; ++q) {
            auto d = component_second(g, w.component(slot(p, q)), pairs[q][0], pairs[q][1], backend);
            for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += pair_mult[q] * d[k];
        }
    }
    return out;
}

/// (K u)_ijkl = 1/4 (d_i u_j + d_j u_i) delta_kl + 1/4 (d_k u_l + d_l u_k) delta_ij.
inline GridField apply_K(const GridField& u, Backend backend = Backend::spectral) {
    if (u.kind() != FieldKind::vector) throw error("apply_K: expected vector field");
    const Grid2& g = u.grid();
    auto d1u1 = component_derivative(g, u.component(0), 0, backend);
    auto d2u1 = component_derivative(g, u.component(0), 1, backend);
    auto d1u2 = component_derivative(g, u.component(1), 0, backend);
    auto d2u2 = component_derivative(g, u.component(1), 1, backend);
    GridField out(g, FieldKind::elastic2);
    for (std::size_t k = 0; k < d1u1.size(); ++k) {
        double e11 = d1u1[k];
        double e12 = 0.5 * (d1u2[k] + d2u1[k]);
        double e22 = d2u2[k];
        out.component(0)[k] = e11;                  // (11)(11)
        out.component(1)[k] = 0.5 * e12;            // (11)(12)
        out.component(2)[k] = 0.5 * (e11 + e22);    // (11)(22)
        out.component(3)[k] = 0.0;                  // (12)(12)
        out.component(4)[k] = 0.5 * e12;            // (12)(22)
        out.component(5)[k] = e22;                  // (22)(22)
    }
    return out;
}

/// (K* w)_i = -sum_j d_j (sum_k w_ijkk), elastic2 -> vector.
inline GridField apply_Kstar(const GridField& w, Backend backend = Backend::spectral) {
    if (w.kind() != FieldKind::elastic2) throw error("apply_Kstar: expected elastic2 field");
    const Grid2& g = w.grid();
    std::size_t sz = w.component(0).size();
    // trace over the last pair: T_pq with pq over stored sym2 pairs
    std::vector<double> t11(sz), t12(sz), t22(sz);
    for (std::size_t k = 0; k < sz; ++k) {
        t11[k] = w.component(0)[k] + w.component(2)[k];  // w1111 + w1122
        t12[k] = w.component(1)[k] + w.component(4)[k];  // w1211 + w1222
        t22[k] = w.component(2)[k] + w.component(5)[k];  // w2211 + w2222
    }
    auto a = component_derivative(g, t11, 0, backend);
    auto b = component_derivative(g, t12, 1, backend);
    auto c = component_derivative(g, t12, 0, backend);
    auto d = component_derivative(g, t22, 1, backend);
    GridField out(g, FieldKind::vector);
    for (std::size_t k = 0; k < sz; ++k) {
        out.component(0)[k] = -(a[k] + b[k]);
        out.component(1)[k] = -(c[k] + d[k]);
    }
    return out;
}

/// Unsymmetrized gradient of every stored component: d[c][axis].
struct ComponentGradient {
    Grid2 grid;
    FieldKind base_kind;
    std::vector<std::array<std::vector<double>, 2>> d;
};

inline ComponentGradient tilde_d(const GridField& f, Backend backend = Backend::spectral) {
    ComponentGradient out{f.grid(), f.kind(), {}};
    out.d.resize(f.components());
    for (int c = 0; c < f.components(); ++c)
        for (int axis = 0; axis < 2; ++axis)
            out.d[c][axis] = component_derivative(f.grid(), f.component(c), axis, backend);
    return out;
}

/// sigma applied to the full gradient of a vector field: recovers d u.
inline GridField symmetrized_gradient(const ComponentGradient& gr) {
    if (gr.base_kind != FieldKind::vector) throw error("symmetrized_gradient: expected vector base");
    GridField out(gr.grid, FieldKind::sym2);
    std::size_t sz = gr.d[0][0].size();
    for (std::size_t k = 0; k < sz; ++k) {
        out.component(0)[k] = gr.d[0][0][k];
        out.component(1)[k] = 0.5 * (gr.d[0][1][k] + gr.d[1][0][k]);
        out.component(2)[k] = gr.d[1][1][k];
    }
    return out;
}

/// Literal symmetrized compatibility formula sigma(j,k){d_k f_ij - d_j f_ik}.
/// The bracket is antisymmetric in (j, k), so the symmetrization annihilates
/// it identically; the operator is shipped for the algebraic identity checks.
/// Result components indexed (i, pair(jk)): (1,11),(1,12),(1,22),(2,11),(2,12),(2,22).
struct Order3Field {
    Grid2 grid;
    std::array<std::vector<double>, 6> comp;

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : comp)
            for (double v : c) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Pointwise literal formula on raw first-derivative values df[i][j][k] = d_k f_ij.
inline std::array<double, 6> saint_venant_pointwise(const std::array<std::array<std::array<double, 2>, 2>, 2>& df) {
    std::array<double, 6> out{};
    const std::array<std::array<int, 2>, 3> jk{{{0, 0}, {0, 1}, {1, 1}}};
    for (int i = 0; i < 2; ++i)
        for (int p = 0; p < 3; ++p) {
            int j = jk[p][0], k = jk[p][1];
            double t_jk = df[i][j][k] - df[i][k][j];  // d_k f_ij - d_j f_ik
            double t_kj = df[i][k][j] - df[i][j][k];
            out[i * 3 + p] = 0.5 * (t_jk + t_kj);
        }
    return out;
}

inline Order3Field saint_venant_literal(const GridField& f, Backend backend = Backend::spectral) {
    if (f.kind() != FieldKind::sym2) throw error("saint_venant_literal: expected sym2 field");
    auto gr = tilde_d(f, backend);
    auto pslot = [](int i, int j) {
        if (i > j) std::swap(i, j);
        return i == 0 ? (j == 0 ? 0 : 1) : 2;
    };
    Order3Field out{f.grid(), {}};
    std::size_t sz = f.component(0).size();
    const std::array<std::array<int, 2>, 3> jk{{{0, 0}, {0, 1}, {1, 1}}};
    for (auto& c : out.comp) c.assign(sz, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int p = 0; p < 3; ++p) {
            int j = jk[p][0], k = jk[p][1];
            auto& dst = out.comp[i * 3 + p];
            const auto& dk_fij = gr.d[pslot(i, j)][k];
            const auto& dj_fik = gr.d[pslot(i, k)][j];
            for (std::size_t s = 0; s < sz; ++s) {
                double t_jk = dk_fij[s] - dj_fik[s];
                double t_kj = dj_fik[s] - dk_fij[s];
                dst[s] = 0.5 * (t_jk + t_kj);
            }
        }
    return out;
}

/// Operative 2-D compatibility operator W f = d22 f11 + d11 f22 - 2 d12 f12;
/// vanishes exactly on Hessians and is the working kernel test in 2-D.
inline GridField compatibility_2d(const GridField& f, Backend backend = Backend::spectral) {
    if (f.kind() != FieldKind::sym2) throw error("compatibility_2d: expected sym2 field");
    const Grid2& g = f.grid();
    auto a = component_second(g, f.component(0), 1, 1, backend);
    auto b = component_second(g, f.component(2), 0, 0, backend);
    auto c = component_second(g, f.component(1), 0, 1, backend);
    GridField out(g, FieldKind::scalar);
    for (std::size_t k = 0; k < a.size(); ++k) out.component(0)[k] = a[k] + b[k] - 2.0 * c[k];
    return out;
}

}  // namespace ttomo
