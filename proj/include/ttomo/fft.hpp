#pragma once

#include <span>

#include "ttomo/grid.hpp"
#include "ttomo/tensor.hpp"

namespace ttomo {

namespace detail {

/// In-place radix-2 complex FFT (power-of-two length), no normalization.
inline void fft_radix2(std::span<Complex> a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw error("fft_radix2: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex u = a[i + k];
                Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/// 2-D transform of one component array laid out [k2*N + k1], k1 contiguous.
inline void fft2_inplace(std::vector<Complex>& a, int n, bool inverse) {
    for (int b = 0; b < n; ++b)
        fft_radix2(std::span<Complex>(a.data() + static_cast<std::size_t>(b) * n, n), inverse);
    std::vector<Complex> col(n);
    for (int k1 = 0; k1 < n; ++k1) {
        for (int b = 0; b < n; ++b) col[b] = a[static_cast<std::size_t>(b) * n + k1];
        fft_radix2(col, inverse);
        for (int b = 0; b < n; ++b) a[static_cast<std::size_t>(b) * n + k1] = col[b];
    }
}

}  // namespace detail

/// Component-wise spectrum of a GridField on the lattice y_k = (pi/L) k,
/// k in {-N/2, ..., N/2-1}^2, stored in FFT-natural index order.
/// Convention: fhat(y) = (2 pi)^(-1) integral f(x) e^(-i x.y) dx, so a grid
/// field and its spectrum satisfy the symmetric-normalization transform pair.
class SpectralField {
public:
    SpectralField(Grid2 grid, FieldKind kind)
        : grid_(grid), kind_(kind),
          comp_(component_count(kind), std::vector<Complex>(static_cast<std::size_t>(grid.n) * grid.n)) {}

    const Grid2& grid() const { return grid_; }
    FieldKind kind() const { return kind_; }
    int components() const { return static_cast<int>(comp_.size()); }

    Complex& at(int c, int i1, int i2) { return comp_[c][static_cast<std::size_t>(i2) * grid_.n + i1]; }
    Complex at(int c, int i1, int i2) const { return comp_[c][static_cast<std::size_t>(i2) * grid_.n + i1]; }

    std::vector<Complex>& component(int c) { return comp_[c]; }
    const std::vector<Complex>& component(int c) const { return comp_[c]; }

    /// Frequency vector of bin (i1, i2).
    Vec2 freq(int i1, int i2) const {
        return {grid_.freq(grid_.signed_index(i1)), grid_.freq(grid_.signed_index(i2))};
    }

    bool is_nyquist(int i1, int i2) const { return i1 == grid_.n / 2 || i2 == grid_.n / 2; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& comp : comp_)
            for (const auto& v : comp) m = std::max(m, std::abs(v));
        return m;
    }

    /// Deviation from Hermitian symmetry fhat(-k) = conj(fhat(k)).
    double hermitian_residual() const {
        int n = grid_.n;
        double m = 0.0;
        for (int c = 0; c < components(); ++c)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i1 = 0; i1 < n; ++i1) {
                    int j1 = (n - i1) % n, j2 = (n - i2) % n;
                    m = std::max(m, std::abs(at(c, i1, i2) - std::conj(at(c, j1, j2))));
                }
        return m;
    }

private:
    Grid2 grid_;
    FieldKind kind_;
    std::vector<std::vector<Complex>> comp_;
};

inline SpectralField fft_field(const GridField& f) {
    const Grid2& g = f.grid();
    const int n = g.n;
    const double scale = g.spacing() * g.spacing() / (2.0 * pi);
    SpectralField out(g, f.kind());
    std::vector<Complex> buf(static_cast<std::size_t>(n) * n);
    for (int c = 0; c < f.components(); ++c) {
        const auto& src = f.component(c);
        for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = src[k];
        detail::fft2_inplace(buf, n, false);
        auto& dst = out.component(c);
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1) {
                double sign = ((i1 + i2) & 1) ? -1.0 : 1.0;
                dst[static_cast<std::size_t>(i2) * n + i1] =
                    buf[static_cast<std::size_t>(i2) * n + i1] * (scale * sign);
            }
    }
    return out;
}

/// Inverse transform; the field is real by construction, so the imaginary
/// part is discarded (its max modulus is reported through imag_max).
inline GridField ifft_field(const SpectralField& s, double* imag_max = nullptr) {
    const Grid2& g = s.grid();
    const int n = g.n;
    const double scale = 2.0 * pi / (g.spacing() * g.spacing() * n * n);
    GridField out(g, s.kind());
    std::vector<Complex> buf(static_cast<std::size_t>(n) * n);
    double im = 0.0;
    for (int c = 0; c < s.components(); ++c) {
        const auto& src = s.component(c);
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1) {
                double sign = ((i1 + i2) & 1) ? -1.0 : 1.0;
                buf[static_cast<std::size_t>(i2) * n + i1] =
                    src[static_cast<std::size_t>(i2) * n + i1] * (scale * sign);
            }
        detail::fft2_inplace(buf, n, true);
        auto& dst = out.component(c);
        for (std::size_t k = 0; k < buf.size(); ++k) {
            dst[k] = buf[k].real();
            im = std::max(im, std::abs(buf[k].imag()));
        }
    }
    if (imag_max) *imag_max = im;
    return out;
}

/// l2 norm of the spectrum on the frequency lattice (multiplicity-weighted);
/// matches the grid-quadrature l2 norm exactly (discrete Parseval).
inline double spectral_norm2(const SpectralField& s) {
    auto w = component_weights(s.kind());
    double acc = 0.0;
    for (int c = 0; c < s.components(); ++c) {
        double cs = 0.0;
        for (const auto& v : s.component(c)) cs += std::norm(v);
        acc += w[c] * cs;
    }
    double dy = pi / s.grid().extent;
    return std::sqrt(acc) * dy;
}

inline double grid_norm2(const GridField& f) {
    auto w = component_weights(f.kind());
    double acc = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        double cs = 0.0;
        for (double v : f.component(c)) cs += v * v;
        acc += w[c] * cs;
    }
    return std::sqrt(acc) * f.grid().spacing();
}

}  // namespace ttomo
