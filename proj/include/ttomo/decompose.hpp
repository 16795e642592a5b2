#pragma once

#include "ttomo/diffops.hpp"

namespace ttomo {

inline constexpr double default_mean_tol = 1e-10;

/// Pointwise frequency split of a symmetric 2-tensor at y != 0:
///   v = y_i y_j f_ij / |y|^4,  g = f - (y (x) y) v,  so f = g + i_y^2 v
/// and j_y^2 g = 0.
struct Sym2PointSplit {
    SymTensor<Complex> g;
    Complex v;
};

inline Sym2PointSplit pointwise_split_sym2(const SymTensor<Complex>& f, Vec2 y) {
    if (f.order() != 2 || f.dim() != 2) throw error("pointwise_split_sym2: expected sym-2 in R^2");
    double y2 = dot(y, y);
    if (y2 == 0.0) throw error("pointwise_split_sym2: y must be nonzero");
    std::vector<double> yv{y[0], y[1]};
    Complex v = j_x_pow(yv, f, 2)[0] / (y2 * y2);
    SymTensor<Complex> g = f;
    g.set({0, 0}, f.get({0, 0}) - y[0] * y[0] * v);
    g.set({0, 1}, f.get({0, 1}) - y[0] * y[1] * v);
    g.set({1, 1}, f.get({1, 1}) - y[1] * y[1] * v);
    return {std::move(g), v};
}

struct Sym2Split {
    GridField g;  // 2-solenoidal part
    GridField v;  // scalar potential, f = g + d^2 v
    double recon_residual;       // ||f - g - d^2 v||inf / ||f||inf
    double solenoidal_residual;  // ||delta^2 g|| / || |y|^2 f || on the lattice
    std::vector<double> input_means;
    double mean_tol;
};

namespace detail {

inline void check_mean_zero(const GridField& f, double mean_tol) {
    auto means = f.mean_integral();
    double scale = f.l1_norm();
    for (double m : means)
        if (std::abs(m) > mean_tol * scale)
            throw mean_zero_error("decomposition requires componentwise mean zero", means);
}

/// || |y|^p fhat ||_2 over the lattice, used to scale divergence residuals.
inline double weighted_norm(const SpectralField& s, int p) {
    auto w = component_weights(s.kind());
    double acc = 0.0;
    int n = s.grid().n;
    for (int c = 0; c < s.components(); ++c)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1) {
                Vec2 y = s.freq(i1, i2);
                double yp = std::pow(dot(y, y), 0.5 * p);
                acc += w[c] * std::norm(s.at(c, i1, i2)) * yp * yp;
            }
    double dy = pi / s.grid().extent;
    return std::sqrt(acc) * dy;
}

}  // namespace detail

/// Full-field split f = g + d^2 v with delta^2 g = 0 (unique under the
/// mean-zero hypothesis). The frequency-domain v from the pointwise split
/// carries the symbol sign: FT(d^2 v) = -(y (x) y) FT(v), so the space-domain
/// potential is minus the inverse transform of the per-bin v.
inline Sym2Split decompose_sym2(const GridField& f, double mean_tol = default_mean_tol) {
    if (f.kind() != FieldKind::sym2) throw error("decompose_sym2: expected sym2 field");
    detail::check_mean_zero(f, mean_tol);

    SpectralField fhat = fft_field(f);
    SpectralField ghat(f.grid(), FieldKind::sym2);
    SpectralField vhat(f.grid(), FieldKind::scalar);
    const int n = f.grid().n;
    for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1) {
            bool dc = i1 == 0 && i2 == 0;
            if (dc || fhat.is_nyquist(i1, i2)) {
                for (int c = 0; c < 3; ++c) ghat.at(c, i1, i2) = dc ? 0.0 : fhat.at(c, i1, i2);
                continue;
            }
            SymTensor<Complex> fb(2, 2);
            for (int c = 0; c < 3; ++c) fb[c] = fhat.at(c, i1, i2);
            auto split = pointwise_split_sym2(fb, fhat.freq(i1, i2));
            for (int c = 0; c < 3; ++c) ghat.at(c, i1, i2) = split.g[c];
            vhat.at(0, i1, i2) = split.v;
        }

    GridField g = ifft_field(ghat);
    GridField v = ifft_field(vhat);
    v *= -1.0;

    GridField recon = g + ifft_field(spectral_d(fft_field(v), 2));
    recon -= f;
    double fmax = f.max_abs();
    double recon_res = fmax > 0.0 ? recon.max_abs() / fmax : recon.max_abs();

    double denom = detail::weighted_norm(fhat, 2);
    double sol = spectral_norm2(spectral_div(ghat, 2));
    double sol_res = denom > 0.0 ? sol / denom : sol;

    return {std::move(g), std::move(v), recon_res, sol_res, f.mean_integral(), mean_tol};
}

/// Probe for the mean-zero necessity: a nonzero mean produces a |y|^(-2)
/// singular term in vhat with angular coefficient omega.fhat(0).omega. The
/// probe extrapolates |vhat(r omega)| r^2 to r -> 0 along lattice directions;
/// |vhat| r^2 is even in r for real fields, so the fit is quadratic in r^2.
struct ProbeDirection {
    Vec2 omega;
    double model_coeff;          // |omega . fhat(0) . omega| from the DC bin
    double intercept;            // r -> 0 extrapolation of |vhat(r omega)| r^2
    double ratio;                // intercept / model_coeff (0 when model is 0)
    std::array<double, 3> samples;
};

struct NecessityProbe {
    std::vector<ProbeDirection> directions;
};

inline NecessityProbe mean_zero_necessity_probe(const GridField& f) {
    if (f.kind() != FieldKind::sym2) throw error("mean_zero_necessity_probe: expected sym2 field");
    SpectralField fhat = fft_field(f);
    const int n = f.grid().n;
    auto vhat_at = [&](int i1, int i2) {
        SymTensor<Complex> fb(2, 2);
        for (int c = 0; c < 3; ++c) fb[c] = fhat.at(c, i1, i2);
        Vec2 y = fhat.freq(i1, i2);
        return std::make_pair(pointwise_split_sym2(fb, y).v, dot(y, y));
    };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    struct Dir {
        Vec2 omega;
        std::array<std::array<int, 2>, 3> bins;
    };
    std::vector<Dir> dirs{
        {{1.0, 0.0}, {{{1, 0}, {2, 0}, {3, 0}}}},
        {{0.0, 1.0}, {{{0, 1}, {0, 2}, {0, 3}}}},
        {{inv_sqrt2, inv_sqrt2}, {{{1, 1}, {2, 2}, {3, 3}}}},
        {{inv_sqrt2, -inv_sqrt2}, {{{1, n - 1}, {2, n - 2}, {3, n - 3}}}},
    };
    Complex f0_11 = fhat.at(0, 0, 0), f0_12 = fhat.at(1, 0, 0), f0_22 = fhat.at(2, 0, 0);

    NecessityProbe out;
    for (const auto& d : dirs) {
        ProbeDirection pd;
        pd.omega = d.omega;
        Complex mz = d.omega[0] * d.omega[0] * f0_11 + 2.0 * d.omega[0] * d.omega[1] * f0_12 +
                     d.omega[1] * d.omega[1] * f0_22;
        pd.model_coeff = std::abs(mz);
        for (int m = 0; m < 3; ++m) {
            auto [v, y2] = vhat_at(d.bins[m][0], d.bins[m][1]);
            pd.samples[m] = std::abs(v) * y2;
        }
        // Lagrange extrapolation to 0 in u = r^2 through u, 4u, 9u.
        pd.intercept = 1.5 * pd.samples[0] - 0.6 * pd.samples[1] + 0.1 * pd.samples[2];
        pd.ratio = pd.model_coeff > 1e-300 ? pd.intercept / pd.model_coeff : 0.0;
        out.directions.push_back(pd);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Elastic decomposition
// ---------------------------------------------------------------------------

/// Symbol operators of H and K at frequency y (no i factors).
inline ElasticTensor2<Complex> Hhat_y(Vec2 y, const SymTensor<Complex>& v) {
    ElasticTensor2<Complex> out(2);
    for (int k = 0; k < out.size(); ++k) {
        auto [p, q] = out.slot_pairs(k);
        auto [i, j] = out.pairs()[p];
        auto [a, b] = out.pairs()[q];
        out[k] = 0.5 * (y[i] * y[j] * v.get({a, b}) + y[a] * y[b] * v.get({i, j}));
    }
    return out;
}

inline ElasticTensor2<Complex> Khat_y(Vec2 y, const std::array<Complex, 2>& u) {
    ElasticTensor2<Complex> out(2);
    for (int k = 0; k < out.size(); ++k) {
        auto [p, q] = out.slot_pairs(k);
        auto [i, j] = out.pairs()[p];
        auto [a, b] = out.pairs()[q];
        Complex first = 0.25 * (y[i] * u[j] + y[j] * u[i]) * (a == b ? 1.0 : 0.0);
        Complex second = 0.25 * (y[a] * u[b] + y[b] * u[a]) * (i == j ? 1.0 : 0.0);
        out[k] = first + second;
    }
    return out;
}

/// (Hhat*_y w)_ij = sum_kl y_k y_l w_ijkl — the adjoint of Hhat_y.
inline SymTensor<Complex> Hstar_y(Vec2 y, const ElasticTensor2<Complex>& w) {
    SymTensor<Complex> out(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            Complex acc{};
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) acc += y[k] * y[l] * w.get(i, j, k, l);
            out.set({i, j}, acc);
        }
    return out;
}

/// (Khat*_y w)_i = sum_{k,j} y_j w_ijkk — the adjoint of Khat_y.
inline std::array<Complex, 2> Kstar_y(Vec2 y, const ElasticTensor2<Complex>& w) {
    std::array<Complex, 2> out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) out[i] += y[j] * w.get(i, j, k, k);
    return out;
}

struct ElasticPointSplit {
    SymTensor<Complex> v;
    std::array<Complex, 2> u;
    ElasticTensor2<Complex> g;
};

/// Pointwise split f = Hhat_y v + Khat_y u + g with u _|_ y and
/// Hhat*_y g = Khat*_y g = 0 (n = 2, so the 4/(n-1) prefactor is 4).
inline ElasticPointSplit pointwise_split_elastic(const ElasticTensor2<Complex>& f, Vec2 y) {
    double y2 = dot(y, y);
    if (y2 == 0.0) throw error("pointwise_split_elastic: y must be nonzero");
    auto Ks = Kstar_y(y, f);
    auto Hs = Hstar_y(y, f);
    Complex P = y[0] * y[0] * Hs.get({0, 0}) + 2.0 * y[0] * y[1] * Hs.get({0, 1}) +
                y[1] * y[1] * Hs.get({1, 1});

    std::array<Complex, 2> u{};
    for (int i = 0; i < 2; ++i) {
        Complex eps_K{};
        for (int j = 0; j < 2; ++j) {
            double eps_ij = (i == j ? 1.0 : 0.0) - y[i] * y[j] / y2;
            eps_K += eps_ij * Ks[j];
        }
        Complex Hy = y[0] * Hs.get({i, 0}) + y[1] * Hs.get({i, 1});
        u[i] = (4.0 / (y2 * y2)) * (y2 * eps_K - Hy + (y[i] / y2) * P);
    }

    SymTensor<Complex> v(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            Complex val = 2.0 * Hs.get({i, j}) / (y2 * y2) -
                          (y[i] * u[j] + y[j] * u[i]) / (2.0 * y2) -
                          y[i] * y[j] * P / (y2 * y2 * y2 * y2);
            v.set({i, j}, val);
        }

    ElasticTensor2<Complex> g = f - Hhat_y(y, v) - Khat_y(y, u);
    return {std::move(v), u, std::move(g)};
}

struct ElasticSplit {
    GridField v;  // sym2 potential (elastic 1-tensor)
    GridField u;  // vector potential
    GridField g;  // elastic solenoidal part, f = H v + K u + g
    double recon_residual;   // ||f - Hv - Ku - g||inf / ||f||inf
    double hstar_residual;   // ||Hhat* ghat|| / || |y|^2 fhat ||
    double kstar_residual;   // ||Khat* ghat|| / || |y| fhat ||
    double u_dot_y_residual; // ||<uhat, y>|| / || |y| uhat ||
    std::vector<double> input_means;
    double mean_tol;
};

/// Full-field split f = H v + K u + g. Sign bookkeeping: H is second order,
/// FT(H v) = -Hhat_y FT(v), so v = -invFT(v_bin); K is first order,
/// FT(K u) = i Khat_y FT(u), so u = invFT(u_bin / i).
inline ElasticSplit decompose_elastic(const GridField& f, double mean_tol = default_mean_tol) {
    if (f.kind() != FieldKind::elastic2) throw error("decompose_elastic: expected elastic2 field");
    detail::check_mean_zero(f, mean_tol);

    SpectralField fhat = fft_field(f);
    SpectralField ghat(f.grid(), FieldKind::elastic2);
    SpectralField vhat(f.grid(), FieldKind::sym2);
    SpectralField uhat(f.grid(), FieldKind::vector);
    const int n = f.grid().n;
    const Complex minus_i(0.0, -1.0);

    double udoty_num = 0.0, udoty_den = 0.0;
    for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1) {
            bool dc = i1 == 0 && i2 == 0;
            if (dc || fhat.is_nyquist(i1, i2)) {
                for (int c = 0; c < 6; ++c) ghat.at(c, i1, i2) = dc ? 0.0 : fhat.at(c, i1, i2);
                continue;
            }
            ElasticTensor2<Complex> fb(2);
            for (int c = 0; c < 6; ++c) fb[c] = fhat.at(c, i1, i2);
            Vec2 y = fhat.freq(i1, i2);
            auto split = pointwise_split_elastic(fb, y);
            for (int c = 0; c < 6; ++c) ghat.at(c, i1, i2) = split.g[c];
            for (int c = 0; c < 3; ++c) vhat.at(c, i1, i2) = split.v[c];
            uhat.at(0, i1, i2) = split.u[0] * minus_i;
            uhat.at(1, i1, i2) = split.u[1] * minus_i;
            udoty_num += std::norm(split.u[0] * y[0] + split.u[1] * y[1]);
            udoty_den += dot(y, y) * (std::norm(split.u[0]) + std::norm(split.u[1]));
        }

    GridField g = ifft_field(ghat);
    GridField v = ifft_field(vhat);
    v *= -1.0;
    GridField u = ifft_field(uhat);

    GridField recon = apply_H(v) + apply_K(u) + g - f;
    double fmax = f.max_abs();
    double recon_res = fmax > 0.0 ? recon.max_abs() / fmax : recon.max_abs();

    double den2 = detail::weighted_norm(fhat, 2);
    double den1 = detail::weighted_norm(fhat, 1);
    double hs = 0.0, ks = 0.0;
    for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1) {
            if ((i1 == 0 && i2 == 0) || ghat.is_nyquist(i1, i2)) continue;
            ElasticTensor2<Complex> gb(2);
            for (int c = 0; c < 6; ++c) gb[c] = ghat.at(c, i1, i2);
            Vec2 y = ghat.freq(i1, i2);
            auto H = Hstar_y(y, gb);
            auto K = Kstar_y(y, gb);
            for (int c = 0; c < 3; ++c) hs += (c == 1 ? 2.0 : 1.0) * std::norm(H[c]);
            ks += std::norm(K[0]) + std::norm(K[1]);
        }
    double dy = pi / f.grid().extent;
    hs = std::sqrt(hs) * dy;
    ks = std::sqrt(ks) * dy;

    return {std::move(v), std::move(u), std::move(g),
            recon_res,
            den2 > 0.0 ? hs / den2 : hs,
            den1 > 0.0 ? ks / den1 : ks,
            udoty_den > 0.0 ? std::sqrt(udoty_num / udoty_den) : 0.0,
            f.mean_integral(), mean_tol};
}

}  // namespace ttomo
