#pragma once

#include "ttomo/fft.hpp"

namespace ttomo {

namespace detail {

inline FieldKind kind_of_order(int order) {
    switch (order) {
        case 0: return FieldKind::scalar;
        case 1: return FieldKind::vector;
        case 2: return FieldKind::sym2;
        case 3: return FieldKind::sym3;
    }
    throw error("kind_of_order: order out of range");
}

inline int order_of_kind(FieldKind k) {
    switch (k) {
        case FieldKind::scalar: return 0;
        case FieldKind::vector: return 1;
        case FieldKind::sym2: return 2;
        case FieldKind::sym3: return 3;
        case FieldKind::elastic2: throw error("order_of_kind: elastic2 is not a symmetric order");
    }
    throw error("order_of_kind: bad kind");
}

inline SymTensor<Complex> bin_tensor(const SpectralField& s, int i1, int i2) {
    int m = order_of_kind(s.kind());
    SymTensor<Complex> t(m, 2);
    for (int c = 0; c < t.size(); ++c) t[c] = s.at(c, i1, i2);
    return t;
}

inline void set_bin(SpectralField& s, int i1, int i2, const SymTensor<Complex>& t) {
    for (int c = 0; c < t.size(); ++c) s.at(c, i1, i2) = t[c];
}

}  // namespace detail

/// Zero the k = -N/2 row and column; odd symbols are not Hermitian there.
inline SpectralField zero_nyquist(SpectralField s) {
    int n = s.grid().n;
    for (int c = 0; c < s.components(); ++c)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1)
                if (s.is_nyquist(i1, i2)) s.at(c, i1, i2) = Complex(0.0, 0.0);
    return s;
}

/// Spectrum of the symmetrized derivative d^k: multiply by (i)^k i_y^k per bin.
inline SpectralField spectral_d(const SpectralField& f, int k = 1) {
    int m = detail::order_of_kind(f.kind());
    if (m + k > 3) throw error("spectral_d: output order exceeds 3");
    SpectralField out(f.grid(), detail::kind_of_order(m + k));
    Complex ik(1.0, 0.0);
    for (int i = 0; i < k; ++i) ik *= Complex(0.0, 1.0);
    int n = f.grid().n;
    for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1) {
            if (f.is_nyquist(i1, i2)) continue;
            Vec2 y = f.freq(i1, i2);
            std::vector<double> yv{y[0], y[1]};
            auto t = i_x_pow(yv, detail::bin_tensor(f, i1, i2), k);
            t *= ik;
            detail::set_bin(out, i1, i2, t);
        }
    return out;
}

/// Spectrum of the divergence delta^k: multiply by (i)^k j_y^k per bin.
inline SpectralField spectral_div(const SpectralField& f, int k = 1) {
    int m = detail::order_of_kind(f.kind());
    if (m - k < 0) throw error("spectral_div: order underflow");
    SpectralField out(f.grid(), detail::kind_of_order(m - k));
    Complex ik(1.0, 0.0);
    for (int i = 0; i < k; ++i) ik *= Complex(0.0, 1.0);
    int n = f.grid().n;
    for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1) {
            if (f.is_nyquist(i1, i2)) continue;
            Vec2 y = f.freq(i1, i2);
            std::vector<double> yv{y[0], y[1]};
            auto t = j_x_pow(yv, detail::bin_tensor(f, i1, i2), k);
            t *= ik;
            detail::set_bin(out, i1, i2, t);
        }
    return out;
}

}  // namespace ttomo
