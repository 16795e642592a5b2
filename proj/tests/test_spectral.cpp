#include <catch2/catch_amalgamated.hpp>

#include "ttomo/diffops.hpp"
#include "ttomo/generators.hpp"

using namespace ttomo;
using Catch::Approx;

TEST_CASE("gaussian spectrum matches the closed form") {
    Grid2 g(128, 6.0);
    GridField f = gen_gaussian(g, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
    SpectralField s = fft_field(f);
    // fhat(y) = 1/2 e^{-|y|^2/4} under the symmetric convention
    double worst = 0.0;
    for (int i2 = 0; i2 < g.n; ++i2)
        for (int i1 = 0; i1 < g.n; ++i1) {
            Vec2 y = s.freq(i1, i2);
            double want = 0.5 * std::exp(-dot(y, y) / 4.0);
            worst = std::max(worst, std::abs(s.at(0, i1, i2) - want));
        }
    CHECK(worst < 1e-9);
    CHECK(s.at(0, 0, 0).real() == Approx(0.5).margin(1e-10));
    CHECK(s.hermitian_residual() < 1e-12);
}

TEST_CASE("round trip and Parseval") {
    Grid2 g(64, 6.0);
    GridField f = gen_random_bandlimited(g, FieldKind::sym2, 3, 0.25, false);
    SpectralField s = fft_field(f);
    GridField back = ifft_field(s);
    GridField diff = back - f;
    CHECK(diff.max_abs() <= 1e-12 * f.max_abs());
    CHECK(spectral_norm2(s) == Approx(grid_norm2(f)).epsilon(1e-10));
}

TEST_CASE("constant shift moves only the DC bin") {
    Grid2 g(64, 6.0);
    GridField f = gen_random_bandlimited(g, FieldKind::scalar, 5, 0.25, true);
    GridField shifted = f;
    for (auto& v : shifted.component(0)) v += 3.7;
    SpectralField a = fft_field(f);
    SpectralField b = fft_field(shifted);
    double off_dc = 0.0;
    for (int i2 = 0; i2 < g.n; ++i2)
        for (int i1 = 0; i1 < g.n; ++i1)
            if (i1 || i2) off_dc = std::max(off_dc, std::abs(a.at(0, i1, i2) - b.at(0, i1, i2)));
    CHECK(off_dc < 1e-12);
    CHECK(std::abs(b.at(0, 0, 0) - a.at(0, 0, 0)) > 1.0);
}

TEST_CASE("spectral_d reproduces the analytic hessian") {
    Grid2 g(128, 6.0);
    AnalyticScalar v = AnalyticScalar::gaussian({0.0, 0.0}, 1.0);
    GridField vg = eval_analytic(g, FieldKind::scalar, {v});
    GridField hess = ifft_field(spectral_d(fft_field(vg), 2));
    GridField want = gen_hessian_field(g, v);
    GridField diff = hess - want;
    CHECK(diff.max_abs() <= 1e-9 * want.max_abs());
}

TEST_CASE("d2 of a scalar is the -y(x)y symbol") {
    Grid2 g(64, 6.0);
    GridField vg = gen_random_bandlimited(g, FieldKind::scalar, 11, 0.25, true);
    SpectralField vs = fft_field(vg);
    SpectralField d2 = spectral_d(vs, 2);
    double worst = 0.0;
    for (int i2 = 0; i2 < g.n; ++i2)
        for (int i1 = 0; i1 < g.n; ++i1) {
            if (vs.is_nyquist(i1, i2)) continue;
            Vec2 y = vs.freq(i1, i2);
            Complex v = vs.at(0, i1, i2);
            worst = std::max({worst, std::abs(d2.at(0, i1, i2) + y[0] * y[0] * v),
                              std::abs(d2.at(1, i1, i2) + y[0] * y[1] * v),
                              std::abs(d2.at(2, i1, i2) + y[1] * y[1] * v)});
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("delta^2 d^2 equals the biharmonic on a gaussian") {
    Grid2 g(128, 6.0);
    AnalyticScalar v = AnalyticScalar::gaussian({0.0, 0.0}, 1.0);
    GridField vg = eval_analytic(g, FieldKind::scalar, {v});
    GridField bih = ifft_field(spectral_div(spectral_d(fft_field(vg), 2), 2));
    // closed form: laplacian^2 of e^{-r^2} = (16 r^4 - 64 r^2 + 32) e^{-r^2} ... derive via
    // laplacian e^{-r^2} = (4 r^2 - 4) e^{-r^2}
    auto l1 = v.derivative(0).derivative(0);
    l1 += v.derivative(1).derivative(1);
    AnalyticScalar l2 = l1.derivative(0).derivative(0);
    l2 += l1.derivative(1).derivative(1);
    GridField want = eval_analytic(g, FieldKind::scalar, {l2});
    GridField diff = bih - want;
    CHECK(diff.max_abs() <= 1e-8 * want.max_abs());
}

TEST_CASE("spectral operations preserve Hermitian symmetry") {
    Grid2 g(64, 6.0);
    GridField f = gen_random_bandlimited(g, FieldKind::vector, 13, 0.25, true);
    SpectralField s = fft_field(f);
    CHECK(s.hermitian_residual() < 1e-12);
    CHECK(spectral_d(s, 1).hermitian_residual() < 1e-12);
    CHECK(spectral_d(s, 2).hermitian_residual() < 1e-12);
    CHECK(spectral_div(s, 1).hermitian_residual() < 1e-12);
    double im = 0.0;
    ifft_field(spectral_d(s, 1), &im);
    CHECK(im < 1e-12);
}

TEST_CASE("order guards") {
    Grid2 g(64, 6.0);
    GridField f(g, FieldKind::sym3);
    CHECK_THROWS_AS(spectral_d(fft_field(f), 1), error);
    GridField s(g, FieldKind::scalar);
    CHECK_THROWS_AS(spectral_div(fft_field(s), 1), error);
    CHECK_THROWS_AS(spectral_div(fft_field(s), 1), error);
}

TEST_CASE("spectral derivative matches 4th-order finite differences at O(h^4)") {
    // same continuum band-limited field sampled at N and 2N: the FD error
    // must drop by ~16 while the spectral route stays exact
    double errs[2];
    for (int pass = 0; pass < 2; ++pass) {
        Grid2 g(pass == 0 ? 64 : 128, 6.0);
        // synthesize on the coarse lattice of modes only
        GridField f = [&] {
            Grid2 coarse(64, 6.0);
            GridField cf = gen_random_bandlimited(coarse, FieldKind::scalar, 17, 0.25, true);
            if (pass == 0) return cf;
            SpectralField cs = fft_field(cf);
            SpectralField fine(g, FieldKind::scalar);
            for (int i2 = 0; i2 < coarse.n; ++i2)
                for (int i1 = 0; i1 < coarse.n; ++i1) {
                    int k1 = coarse.signed_index(i1), k2 = coarse.signed_index(i2);
                    if (k1 == -coarse.n / 2 || k2 == -coarse.n / 2) continue;
                    fine.at(0, (k1 + g.n) % g.n, (k2 + g.n) % g.n) = cs.at(0, i1, i2);
                }
            return ifft_field(fine);
        }();
        auto spec = component_derivative(f.grid(), f.component(0), 0, Backend::spectral);
        auto fd = component_derivative(f.grid(), f.component(0), 0, Backend::finite_difference);
        double worst = 0.0;
        for (std::size_t k = 0; k < spec.size(); ++k)
            worst = std::max(worst, std::abs(spec[k] - fd[k]));
        errs[pass] = worst;
    }
    double ratio = errs[0] / errs[1];
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("d and -delta are quadrature adjoints on decaying fields") {
    Grid2 g(128, 6.0);
    GridField u = gen_gaussian(g, FieldKind::vector, {0.2, -0.1}, 0.9, {0.7, -0.3});
    GridField w = gen_gaussian(g, FieldKind::sym2, {-0.2, 0.3}, 0.9, {0.4, 1.0, -0.6});
    GridField du = ifft_field(spectral_d(fft_field(u), 1));
    GridField divw = ifft_field(spectral_div(fft_field(w), 1));
    double lhs = field_inner(du, w);
    double rhs = -field_inner(u, divw);
    CHECK(lhs == Approx(rhs).epsilon(1e-9));
}
