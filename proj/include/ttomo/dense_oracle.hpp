#pragma once

#include "ttomo/decompose.hpp"

namespace ttomo {

/// Reference route for the pointwise elastic split: build explicit bases of
/// the three subspaces (K-image of y-perp, H-image, and the orthogonal
/// complement in the multiplicity inner product) and solve the dense 6x6
/// system. Independent of the closed-form projection formulas it checks.
namespace oracle {

namespace detail_o {

inline ElasticTensor2<double> real_part_basis(const ElasticTensor2<Complex>& w) {
    ElasticTensor2<double> out(2);
    for (int k = 0; k < w.size(); ++k) out[k] = w[k].real();
    return out;
}

inline double w_inner(const ElasticTensor2<double>& a, const ElasticTensor2<double>& b) {
    double acc = 0.0;
    for (int k = 0; k < a.size(); ++k) acc += a.slot_weight(k) * a[k] * b[k];
    return acc;
}

/// Solve M z = rhs (6x6, complex) by Gaussian elimination, partial pivoting.
inline std::array<Complex, 6> solve6(std::array<std::array<Complex, 6>, 6> M,
                                     std::array<Complex, 6> rhs) {
    for (int col = 0; col < 6; ++col) {
        int piv = col;
        for (int r = col + 1; r < 6; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        std::swap(M[col], M[piv]);
        std::swap(rhs[col], rhs[piv]);
        if (std::abs(M[col][col]) == 0.0) throw error("oracle: singular system");
        for (int r = col + 1; r < 6; ++r) {
            Complex fac = M[r][col] / M[col][col];
            for (int c = col; c < 6; ++c) M[r][c] -= fac * M[col][c];
            rhs[r] -= fac * rhs[col];
        }
    }
    std::array<Complex, 6> z{};
    for (int r = 5; r >= 0; --r) {
        Complex acc = rhs[r];
        for (int c = r + 1; c < 6; ++c) acc -= M[r][c] * z[c];
        z[r] = acc / M[r][r];
    }
    return z;
}

}  // namespace detail_o

inline ElasticPointSplit dense_split(const ElasticTensor2<Complex>& f, Vec2 y) {
    double y2 = dot(y, y);
    if (y2 == 0.0) throw error("oracle::dense_split: y must be nonzero");

    // columns 0..3: K_y(y_perp), H_y(b) for the three sym2 basis elements
    std::vector<ElasticTensor2<double>> cols;
    Vec2 yp = perp(y);
    {
        std::array<Complex, 2> u{yp[0], yp[1]};
        cols.push_back(detail_o::real_part_basis(Khat_y(y, u)));
    }
    std::vector<SymTensor<Complex>> sym_basis;
    for (int k = 0; k < 3; ++k) {
        SymTensor<Complex> b(2, 2);
        b[k] = 1.0;
        sym_basis.push_back(b);
        cols.push_back(detail_o::real_part_basis(Hhat_y(y, b)));
    }

    // columns 4..5: orthogonal complement of span(cols) in the multiplicity
    // inner product. Modified Gram-Schmidt with a reorthogonalization pass;
    // candidates drawn from the canonical elastic basis, best residual first.
    std::vector<ElasticTensor2<double>> ortho;
    auto project_out = [&](ElasticTensor2<double> v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : ortho) {
                double pr = detail_o::w_inner(v, e);
                for (int k = 0; k < v.size(); ++k) v[k] -= pr * e[k];
            }
        return v;
    };
    for (const auto& c : cols) {
        auto v = project_out(c);
        double nn = std::sqrt(detail_o::w_inner(v, v));
        if (nn < 1e-12) throw error("oracle: degenerate basis");
        for (int k = 0; k < v.size(); ++k) v[k] /= nn;
        ortho.push_back(v);
    }
    while (cols.size() < 6) {
        ElasticTensor2<double> best(2);
        double best_nn = -1.0;
        for (int k = 0; k < 6; ++k) {
            ElasticTensor2<double> cand(2);
            cand[k] = 1.0;
            auto v = project_out(cand);
            double nn = std::sqrt(detail_o::w_inner(v, v));
            if (nn > best_nn) {
                best_nn = nn;
                best = v;
            }
        }
        if (best_nn < 1e-8) throw error("oracle: failed to complete basis");
        for (int k = 0; k < best.size(); ++k) best[k] /= best_nn;
        ortho.push_back(best);
        cols.push_back(best);
    }

    // column equilibration keeps the solve well conditioned at small |y|
    std::array<double, 6> cnorm{};
    for (int c = 0; c < 6; ++c) {
        cnorm[c] = std::sqrt(detail_o::w_inner(cols[c], cols[c]));
        if (cnorm[c] == 0.0) throw error("oracle: zero column");
    }
    std::array<std::array<Complex, 6>, 6> M{};
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) M[r][c] = cols[c][r] / cnorm[c];
    std::array<Complex, 6> rhs{};
    for (int r = 0; r < 6; ++r) rhs[r] = f[r];
    auto z = detail_o::solve6(M, rhs);
    for (int c = 0; c < 6; ++c) z[c] /= cnorm[c];

    ElasticPointSplit out{SymTensor<Complex>(2, 2), {}, ElasticTensor2<Complex>(2)};
    out.u = {z[0] * yp[0], z[0] * yp[1]};
    for (int k = 0; k < 3; ++k) out.v[k] = z[1 + k];
    for (int c = 4; c < 6; ++c)
        for (int k = 0; k < 6; ++k) out.g[k] += z[c] * cols[c][k];
    return out;
}

}  // namespace oracle
}  // namespace ttomo
