#pragma once

#include <functional>

#include "ttomo/generators.hpp"

namespace ttomo {

/// Off-grid field evaluation for line quadrature: the component spectra are
/// zero-padded onto a finer grid (trigonometric upsampling) and prefiltered
/// into cubic B-spline coefficients, so spline evaluation reproduces the
/// trigonometric interpolant at fine nodes and stays O(h_fine^4) between
/// them. Points outside [-L, L)^2 read as zero, which the boundary-decay
/// gate justifies.
class FieldSampler {
public:
    explicit FieldSampler(const GridField& f, int factor = 8, bool enforce_decay_gate = true)
        : grid_(f.grid()), kind_(f.kind()), factor_(factor), fine_n_(f.grid().n * factor) {
        if (factor < 1 || (factor & (factor - 1)) != 0)
            throw error("FieldSampler: factor must be a power of two");
        if (enforce_decay_gate) check_decay_gate(f);
        peak_ = f.max_abs();
        const int n = grid_.n;
        const int m = fine_n_;
        // frequency response of the sampled cubic B-spline kernel per axis
        std::vector<double> bresp(m);
        for (int k = 0; k < m; ++k)
            bresp[k] = (4.0 + 2.0 * std::cos(2.0 * pi * k / m)) / 6.0;
        fine_.resize(f.components());
        std::vector<Complex> buf;
        for (int c = 0; c < f.components(); ++c) {
            buf.assign(static_cast<std::size_t>(n) * n, Complex());
            const auto& src = f.component(c);
            for (std::size_t k = 0; k < src.size(); ++k) buf[k] = src[k];
            detail::fft2_inplace(buf, n, false);
            std::vector<Complex> big(static_cast<std::size_t>(m) * m, Complex());
            for (int i2 = 0; i2 < n; ++i2) {
                int k2 = grid_.signed_index(i2);
                if (k2 == -n / 2) continue;  // drop the partnerless Nyquist line
                int j2 = (k2 + m) % m;
                for (int i1 = 0; i1 < n; ++i1) {
                    int k1 = grid_.signed_index(i1);
                    if (k1 == -n / 2) continue;
                    int j1 = (k1 + m) % m;
                    big[static_cast<std::size_t>(j2) * m + j1] =
                        buf[static_cast<std::size_t>(i2) * n + i1] / (bresp[j1] * bresp[j2]);
                }
            }
            detail::fft2_inplace(big, m, true);
            fine_[c].resize(big.size());
            double inv = 1.0 / (static_cast<double>(n) * n);
            for (std::size_t k = 0; k < big.size(); ++k) fine_[c][k] = big[k].real() * inv;
        }
    }

    const Grid2& grid() const { return grid_; }
    FieldKind kind() const { return kind_; }
    int components() const { return static_cast<int>(fine_.size()); }
    double peak() const { return peak_; }

    double sample(int c, const Vec2& p) const {
        const double L = grid_.extent;
        if (p[0] < -L || p[0] >= L || p[1] < -L || p[1] >= L) return 0.0;
        const int m = fine_n_;
        const double hf = 2.0 * L / m;
        double gx = (p[0] + L) / hf;
        double gy = (p[1] + L) / hf;
        int ix = static_cast<int>(std::floor(gx));
        int iy = static_cast<int>(std::floor(gy));
        std::array<double, 4> wx = bspline_weights(gx - ix);
        std::array<double, 4> wy = bspline_weights(gy - iy);
        const auto& data = fine_[c];
        double acc = 0.0;
        for (int b = 0; b < 4; ++b) {
            int jb = (iy + b - 1 + m) % m;
            const double* row = data.data() + static_cast<std::size_t>(jb) * m;
            double r = 0.0;
            for (int a = 0; a < 4; ++a) {
                int ja = (ix + a - 1 + m) % m;
                r += wx[a] * row[ja];
            }
            acc += wy[b] * r;
        }
        return acc;
    }

    void sample_all(const Vec2& p, std::span<double> out) const {
        for (int c = 0; c < components(); ++c) out[c] = sample(c, p);
    }

private:
    static std::array<double, 4> bspline_weights(double t) {
        double t2 = t * t, t3 = t2 * t;
        double omt = 1.0 - t;
        return {omt * omt * omt / 6.0, (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0,
                (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0, t3 / 6.0};
    }

    Grid2 grid_;
    FieldKind kind_;
    int factor_;
    int fine_n_;
    double peak_;
    std::vector<std::vector<double>> fine_;
};

/// Parametrization of the line set: angles phi_a = a pi / A, offsets uniform
/// on [-L, L], line points x = s xi_perp + t xi with |t| <= t_max.
struct LineGrid {
    int n_angles;
    int n_offsets;
    double extent;
    double quad_step;
    double t_max;

    double angle(int a) const { return pi * a / n_angles; }
    double offset(int b) const {
        return n_offsets > 1 ? -extent + 2.0 * extent * b / (n_offsets - 1) : 0.0;
    }
};

inline LineGrid make_line_grid(const Grid2& g, int n_angles = 64, int n_offsets = -1) {
    if (n_offsets <= 0) n_offsets = g.n + 1;
    return {n_angles, n_offsets, g.extent, 0.5 * g.spacing(), g.extent * std::sqrt(2.0)};
}

inline Vec2 angle_dir(double phi) { return {std::cos(phi), std::sin(phi)}; }

struct Sinogram {
    LineGrid lines;
    std::vector<std::string> channels;
    // normalization shared by all channels: unit-speed arc-length measure in
    // t, unit polarization vectors zeta in {xi, xi-perp}
    std::string normalization = "unit-speed; unit polarization";
    std::vector<std::vector<double>> values;  // [channel][a * n_offsets + b]

    double at(int c, int a, int b) const {
        return values[c][static_cast<std::size_t>(a) * lines.n_offsets + b];
    }
    double max_abs(int c) const {
        double m = 0.0;
        for (double v : values[c]) m = std::max(m, std::abs(v));
        return m;
    }
};

namespace detail {

/// Per-component contraction weights of <f, xi (x) zeta> for sym2 fields.
inline std::vector<double> sym2_weights(const Vec2& xi, const Vec2& zeta) {
    return {xi[0] * zeta[0], xi[0] * zeta[1] + xi[1] * zeta[0], xi[1] * zeta[1]};
}

/// Per-component contraction weights of <f, (xi (x) zeta)^(x)2> for elastic2.
inline std::vector<double> elastic_weights(const Vec2& xi, const Vec2& zeta) {
    std::vector<double> w(6, 0.0);
    auto pslot = [](int i, int j) {
        if (i > j) std::swap(i, j);
        return i == 0 ? (j == 0 ? 0 : 1) : 2;
    };
    auto slot = [](int p, int q) {
        if (p > q) std::swap(p, q);
        return p * 3 - p * (p - 1) / 2 + (q - p);
    };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    w[slot(pslot(i, j), pslot(k, l))] +=
                        xi[i] * zeta[j] * xi[k] * zeta[l];
    return w;
}

struct ChannelSpec {
    std::string name;
    int t_power;
    std::function<std::vector<double>(const Vec2& xi)> weights;
};

inline Sinogram compute_sinogram(const FieldSampler& f, const LineGrid& lines,
                                 const std::vector<ChannelSpec>& specs) {
    Sinogram out;
    out.lines = lines;
    for (const auto& s : specs) {
        out.channels.push_back(s.name);
        out.values.emplace_back(static_cast<std::size_t>(lines.n_angles) * lines.n_offsets, 0.0);
    }
    const double tau = lines.quad_step;
    const int steps = static_cast<int>(std::ceil(2.0 * lines.t_max / tau));
    std::vector<double> vals(f.components());
    for (int a = 0; a < lines.n_angles; ++a) {
        Vec2 xi = angle_dir(lines.angle(a));
        Vec2 xp = perp(xi);
        std::vector<std::vector<double>> w;
        for (const auto& s : specs) w.push_back(s.weights(xi));
        for (int b = 0; b < lines.n_offsets; ++b) {
            Vec2 base = lines.offset(b) * xp;
            std::vector<double> acc(specs.size(), 0.0);
            for (int j = 0; j <= steps; ++j) {
                double t = -lines.t_max + j * tau;
                Vec2 p = base + t * xi;
                f.sample_all(p, vals);
                double endw = (j == 0 || j == steps) ? 0.5 : 1.0;
                for (std::size_t s = 0; s < specs.size(); ++s) {
                    double c = 0.0;
                    for (int cc = 0; cc < f.components(); ++cc) c += w[s][cc] * vals[cc];
                    double tp = 1.0;
                    for (int q = 0; q < specs[s].t_power; ++q) tp *= t;
                    acc[s] += endw * tp * c;
                }
            }
            for (std::size_t s = 0; s < specs.size(); ++s)
                out.values[s][static_cast<std::size_t>(a) * lines.n_offsets + b] = acc[s] * tau;
        }
    }
    return out;
}

/// Single-line quadrature of sum_c w_c f_c with a t^q moment factor,
/// arbitrary base point and (possibly non-unit) direction.
inline double line_moment(const FieldSampler& f, const std::vector<double>& w, int q,
                          const Vec2& x, const Vec2& xi, double spatial_step, double t_max) {
    double speed = norm(xi);
    if (speed == 0.0) throw error("line_moment: direction must be nonzero");
    double reach = (t_max + norm(x)) / speed;
    double tau = spatial_step / speed;
    int steps = static_cast<int>(std::ceil(2.0 * reach / tau));
    std::vector<double> vals(f.components());
    double acc = 0.0;
    for (int j = 0; j <= steps; ++j) {
        double t = -reach + j * tau;
        Vec2 p = x + t * xi;
        f.sample_all(p, vals);
        double c = 0.0;
        for (int cc = 0; cc < f.components(); ++cc) c += w[cc] * vals[cc];
        double tp = 1.0;
        for (int k = 0; k < q; ++k) tp *= t;
        acc += ((j == 0 || j == steps) ? 0.5 : 1.0) * tp * c;
    }
    return acc * tau;
}

}  // namespace detail

/// q-th integral moment transform of a sym-2 field over the line grid.
inline Sinogram momentum_I(const FieldSampler& f, int q, const LineGrid& lines) {
    if (f.kind() != FieldKind::sym2) throw error("momentum_I: expected sym2 field");
    if (q < 0 || q > 2) throw error("momentum_I: q must be 0, 1 or 2");
    return detail::compute_sinogram(
        f, lines,
        {{"i" + std::to_string(q), q,
          [](const Vec2& xi) { return detail::sym2_weights(xi, xi); }}});
}

/// All requested moments in one sweep (shared sampling).
inline Sinogram momentum_I_multi(const FieldSampler& f, const std::vector<int>& qs,
                                 const LineGrid& lines) {
    if (f.kind() != FieldKind::sym2) throw error("momentum_I_multi: expected sym2 field");
    std::vector<detail::ChannelSpec> specs;
    for (int q : qs)
        specs.push_back({"i" + std::to_string(q), q,
                         [](const Vec2& xi) { return detail::sym2_weights(xi, xi); }});
    return detail::compute_sinogram(f, lines, specs);
}

/// Point evaluation of I^q at (angle, offset) on the unit-speed line.
inline double momentum_I_value(const FieldSampler& f, int q, double phi, double s) {
    Vec2 xi = angle_dir(phi);
    double tau = 0.5 * f.grid().spacing();
    return detail::line_moment(f, detail::sym2_weights(xi, xi), q, s * perp(xi), xi, tau,
                               f.grid().extent * std::sqrt(2.0));
}

/// J^q: extension of I^q to arbitrary base points and non-unit directions.
inline double momentum_J_direct(const FieldSampler& f, int q, const Vec2& x, const Vec2& xi) {
    if (f.kind() != FieldKind::sym2) throw error("momentum_J_direct: expected sym2 field");
    double tau = 0.5 * f.grid().spacing();
    return detail::line_moment(f, detail::sym2_weights(xi, xi), q, x, xi, tau,
                               f.grid().extent * std::sqrt(2.0));
}

/// (J^0, J^1, J^2) from I-moment values at the projected line. The base point
/// projects to x - (<x, xi>/|xi|^2) xi and the direction normalizes.
inline std::array<double, 3> J_from_I(const FieldSampler& f, const Vec2& x, const Vec2& xi) {
    double speed = norm(xi);
    if (speed == 0.0) throw error("J_from_I: direction must be nonzero");
    Vec2 unit = (1.0 / speed) * xi;
    double xdotxi = dot(x, xi);
    Vec2 xproj = x - (xdotxi / (speed * speed)) * xi;
    double phi = std::atan2(unit[1], unit[0]);
    double s = dot(xproj, perp(unit));
    double i0 = momentum_I_value(f, 0, phi, s);
    double i1 = momentum_I_value(f, 1, phi, s);
    double i2 = momentum_I_value(f, 2, phi, s);
    double j0 = speed * i0;
    double j1 = -(xdotxi / speed) * i0 + i1;
    double j2 = (xdotxi * xdotxi / (speed * speed * speed)) * i0 -
                2.0 * (xdotxi / (speed * speed)) * i1 + i2 / speed;
    return {j0, j1, j2};
}

/// Elastic ray transform X^m with the two unit polarization channels
/// zeta = xi (longitudinal) and zeta = xi-perp (transverse).
inline Sinogram elastic_X(const FieldSampler& f, int m, const LineGrid& lines) {
    if (m == 1 && f.kind() != FieldKind::sym2)
        throw error("elastic_X: m = 1 expects a sym2 field");
    if (m == 2 && f.kind() != FieldKind::elastic2)
        throw error("elastic_X: m = 2 expects an elastic2 field");
    if (m != 1 && m != 2) throw error("elastic_X: m must be 1 or 2");
    auto wfn = [m](const Vec2& xi, const Vec2& zeta) {
        return m == 1 ? detail::sym2_weights(xi, zeta) : detail::elastic_weights(xi, zeta);
    };
    std::string base = "x" + std::to_string(m);
    return detail::compute_sinogram(
        f, lines,
        {{base + "_long", 0, [wfn](const Vec2& xi) { return wfn(xi, xi); }},
         {base + "_perp", 0, [wfn](const Vec2& xi) { return wfn(xi, perp(xi)); }}});
}

/// Mixed ray transform: transverse channel of X^1 on sym-2 fields.
inline Sinogram mixed_M(const FieldSampler& f, const LineGrid& lines) {
    if (f.kind() != FieldKind::sym2) throw error("mixed_M: expected sym2 field");
    return detail::compute_sinogram(
        f, lines,
        {{"mixed", 0, [](const Vec2& xi) { return detail::sym2_weights(xi, perp(xi)); }}});
}

inline double mixed_M_value(const FieldSampler& f, const Vec2& x, const Vec2& xi) {
    double tau = 0.5 * f.grid().spacing();
    return detail::line_moment(f, detail::sym2_weights(xi, perp(xi)), 0, x, xi, tau,
                               f.grid().extent * std::sqrt(2.0));
}

/// Vector transform (V f)_j = integral f_jk xi_k dt at the probe line.
inline Vec2 vector_transform_value(const FieldSampler& f, const Vec2& x, const Vec2& xi) {
    double tau = 0.5 * f.grid().spacing();
    double tmax = f.grid().extent * std::sqrt(2.0);
    Vec2 out;
    out[0] = detail::line_moment(f, {xi[0], xi[1], 0.0}, 0, x, xi, tau, tmax);
    out[1] = detail::line_moment(f, {0.0, xi[0], xi[1]}, 0, x, xi, tau, tmax);
    return out;
}

/// Fourier slice comparison for one angle: the 1-D transform in the offset of
/// the I^0 profile against sqrt(2 pi) fhat(sigma xi_perp) xi xi, with fhat
/// evaluated by a direct nonuniform transform of the grid samples.
struct SliceCheck {
    std::vector<double> sigma;
    std::vector<Complex> lhs;
    std::vector<Complex> rhs;
    double scaled_residual;   // max |lhs - rhs| / max |rhs|
    double dc_relative;       // |lhs - rhs| / |rhs| at sigma = 0
};

inline SliceCheck fourier_slice_check(const GridField& field, const FieldSampler& f, double phi,
                                      double sigma_max = 8.0) {
    const Grid2& g = field.grid();
    const int n = g.n;
    const double h = g.spacing();
    Vec2 xi = angle_dir(phi);
    Vec2 xp = perp(xi);

    std::vector<Complex> profile(n);
    for (int b = 0; b < n; ++b) profile[b] = momentum_I_value(f, 0, phi, -g.extent + b * h);
    detail::fft_radix2(profile, false);

    int mmax = static_cast<int>(std::floor(sigma_max * g.extent / pi));
    auto w = detail::sym2_weights(xi, xi);
    SliceCheck out;
    double worst = 0.0, scale = 0.0;
    for (int m = -mmax; m <= mmax; ++m) {
        double sigma = pi * m / g.extent;
        double sign = (m & 1) ? -1.0 : 1.0;
        Complex lhs = profile[(m % n + n) % n] * (h / std::sqrt(2.0 * pi)) * sign;

        Vec2 y = sigma * xp;
        Complex acc{};
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                double val = w[0] * field.at(0, a, b) + w[1] * field.at(1, a, b) +
                             w[2] * field.at(2, a, b);
                double ph = -(g.coord(a) * y[0] + g.coord(b) * y[1]);
                acc += val * Complex(std::cos(ph), std::sin(ph));
            }
        Complex rhs = acc * (h * h / (2.0 * pi)) * std::sqrt(2.0 * pi);

        out.sigma.push_back(sigma);
        out.lhs.push_back(lhs);
        out.rhs.push_back(rhs);
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
        if (m == 0) out.dc_relative = std::abs(rhs) > 0.0 ? std::abs(lhs - rhs) / std::abs(rhs) : 0.0;
    }
    out.scaled_residual = scale > 0.0 ? worst / scale : worst;
    return out;
}

/// Residuals of the two moment identities at random probe lines (unit xi,
/// base point x _|_ xi):
///   A: d_xi_j J0 - d_x_j J1 = 2 (V f)_j,
///   B: d_x_k J1 = d_xi_k J0 - 2 ((xi_perp)_k M_perp + xi_k J0).
/// Derivatives by central differences of the J_from_I route at the given
/// step, with a half-step Richardson cross-check.
struct MomentRelationReport {
    double max_residual_A;
    double max_residual_B;
    double max_residual_A_half;
    double max_residual_B_half;
    double scale;  // largest |J0| over the probes
    int n_probes;
};

inline MomentRelationReport moment_relation_residual(const FieldSampler& f, int n_probes,
                                                     std::uint64_t seed, double fd_step = 1e-3) {
    detail::SplitMix64 rng(seed);
    MomentRelationReport rep{0.0, 0.0, 0.0, 0.0, 0.0, n_probes};
    auto j0 = [&](const Vec2& x, const Vec2& xi) { return J_from_I(f, x, xi)[0]; };
    auto j1 = [&](const Vec2& x, const Vec2& xi) { return J_from_I(f, x, xi)[1]; };

    for (int p = 0; p < n_probes; ++p) {
        double phi = pi * rng.uniform01();
        double s = 3.0 * (2.0 * rng.uniform01() - 1.0);
        Vec2 xi = angle_dir(phi);
        Vec2 x = s * perp(xi);
        Vec2 V = vector_transform_value(f, x, xi);
        double mperp = mixed_M_value(f, x, xi);
        double J0 = j0(x, xi);
        rep.scale = std::max(rep.scale, std::abs(J0));

        for (int pass = 0; pass < 2; ++pass) {
            double step = pass == 0 ? fd_step : 0.5 * fd_step;
            for (int k = 0; k < 2; ++k) {
                Vec2 e{k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0};
                double dxi_j0 = (j0(x, xi + step * e) - j0(x, xi - step * e)) / (2.0 * step);
                double dx_j1 = (j1(x + step * e, xi) - j1(x - step * e, xi)) / (2.0 * step);
                double ra = std::abs(dxi_j0 - dx_j1 - 2.0 * V[k]);
                double rb = std::abs(dx_j1 - dxi_j0 + 2.0 * (perp(xi)[k] * mperp + xi[k] * J0));
                if (pass == 0) {
                    rep.max_residual_A = std::max(rep.max_residual_A, ra);
                    rep.max_residual_B = std::max(rep.max_residual_B, rb);
                } else {
                    rep.max_residual_A_half = std::max(rep.max_residual_A_half, ra);
                    rep.max_residual_B_half = std::max(rep.max_residual_B_half, rb);
                }
            }
        }
    }
    return rep;
}

}  // namespace ttomo
