#include <catch2/catch_amalgamated.hpp>

#include "ttomo/decompose.hpp"
#include "ttomo/dense_oracle.hpp"
#include "ttomo/generators.hpp"

using namespace ttomo;
using Catch::Approx;

TEST_CASE("pointwise sym2 split: worked example") {
    SymTensor<Complex> f(2, 2);
    f.set({0, 0}, 2.0);
    f.set({0, 1}, 3.0);
    f.set({1, 1}, 5.0);
    auto s = pointwise_split_sym2(f, {1.0, 0.0});
    CHECK(s.v.real() == Approx(2.0));
    CHECK(s.g.get({0, 0}).real() == Approx(0.0).margin(1e-15));
    CHECK(s.g.get({0, 1}).real() == Approx(3.0));
    CHECK(s.g.get({1, 1}).real() == Approx(5.0));

    // pure potential symbol: f = y (x) y
    Vec2 y{0.3, -1.1};
    SymTensor<Complex> yy(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) yy.set({i, j}, y[i] * y[j]);
    auto s2 = pointwise_split_sym2(yy, y);
    CHECK(s2.v.real() == Approx(1.0));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(s2.g[k]) < 1e-13);

    CHECK_THROWS_AS(pointwise_split_sym2(f, {0.0, 0.0}), error);
}

TEST_CASE("pointwise sym2 split: reconstruction and solenoidality on random input") {
    detail::SplitMix64 rng(321);
    for (int trial = 0; trial < 500; ++trial) {
        SymTensor<Complex> f(2, 2);
        for (int k = 0; k < 3; ++k) f[k] = Complex(rng.normal(), rng.normal());
        Vec2 y{rng.normal(), rng.normal()};
        if (dot(y, y) < 1e-4) continue;
        auto s = pointwise_split_sym2(f, y);
        std::vector<double> yv{y[0], y[1]};
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) {
                Complex recon = s.g.get({i, j}) + y[i] * y[j] * s.v;
                CHECK(std::abs(recon - f.get({i, j})) < 1e-13 * (1.0 + std::abs(f.get({i, j}))));
            }
        CHECK(std::abs(j_x_pow(yv, s.g, 2)[0]) < 1e-13 * (1.0 + dot(y, y) * dot(y, y)));
    }
}

TEST_CASE("decompose_sym2 recovers a hessian potential") {
    Grid2 g(128, 6.0);
    AnalyticScalar v0 = AnalyticScalar::gaussian({0.0, 0.0}, 1.0);
    GridField f = gen_hessian_field(g, v0);
    auto split = decompose_sym2(f);
    CHECK(split.g.max_abs() <= 1e-8 * f.max_abs());
    CHECK(split.recon_residual <= 1e-10);

    // v matches v0 after removing the (unobservable) constant mode
    GridField v0g = eval_analytic(g, FieldKind::scalar, {v0});
    double mean = 0.0;
    for (double x : v0g.component(0)) mean += x;
    mean /= static_cast<double>(v0g.component(0).size());
    double worst = 0.0;
    for (std::size_t k = 0; k < v0g.component(0).size(); ++k)
        worst = std::max(worst,
                         std::abs(split.v.component(0)[k] - (v0g.component(0)[k] - mean)));
    CHECK(worst <= 1e-8 * v0g.max_abs());
}

TEST_CASE("decompose_sym2: zero input, random residuals, idempotence, linearity") {
    Grid2 g(64, 6.0);
    GridField z(g, FieldKind::sym2);
    auto sz = decompose_sym2(z);
    CHECK(sz.g.max_abs() == 0.0);
    CHECK(sz.v.max_abs() == 0.0);

    GridField f1 = gen_random_bandlimited(g, FieldKind::sym2, 1, 0.25, true);
    GridField f2 = gen_random_bandlimited(g, FieldKind::sym2, 2, 0.25, true);
    auto s1 = decompose_sym2(f1);
    CHECK(s1.recon_residual <= 1e-10);
    CHECK(s1.solenoidal_residual <= 1e-10);

    // idempotence: decomposing g returns (g, 0)
    auto sg = decompose_sym2(s1.g);
    CHECK(sg.v.max_abs() <= 1e-9 * s1.g.max_abs());
    GridField gg = sg.g - s1.g;
    CHECK(gg.max_abs() <= 1e-9 * s1.g.max_abs());

    // linearity
    GridField combo = 2.0 * f1 - 0.5 * f2;
    auto s2 = decompose_sym2(f2);
    auto sc = decompose_sym2(combo);
    GridField dv = sc.v - (2.0 * s1.v - 0.5 * s2.v);
    GridField dg = sc.g - (2.0 * s1.g - 0.5 * s2.g);
    double scale = std::max(combo.max_abs(), 1e-300);
    CHECK(dv.max_abs() <= 1e-10 * scale);
    CHECK(dg.max_abs() <= 1e-10 * scale);
}

TEST_CASE("decompose_sym2 enforces the mean-zero gate with a structured error") {
    Grid2 g(64, 6.0);
    GridField f = gen_gaussian(g, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
    try {
        decompose_sym2(f);
        FAIL("expected mean_zero_error");
    } catch (const mean_zero_error& e) {
        REQUIRE(e.component_means.size() == 3);
        CHECK(e.component_means[0] == Approx(pi).margin(1e-9));
    }
}

TEST_CASE("necessity probe: gaussian coefficient, solenoidal control, f12 case") {
    Grid2 g(128, 6.0);
    GridField f = gen_gaussian(g, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
    auto probe = mean_zero_necessity_probe(f);
    // along e1 the model coefficient is fhat11(0) = 1/2 exactly
    CHECK(probe.directions[0].model_coeff == Approx(0.5).margin(1e-9));
    CHECK(std::abs(probe.directions[0].ratio - 1.0) < 0.10);
    // along the diagonal omega f(0) omega = 1/4 and the probe still agrees
    CHECK(probe.directions[2].model_coeff == Approx(0.25).margin(1e-9));
    CHECK(std::abs(probe.directions[2].ratio - 1.0) < 0.10);

    // mean-zero control: a 2-solenoidal field has vhat identically zero
    GridField ctrl = gen_perp_hessian_field(g, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
    auto pc = mean_zero_necessity_probe(ctrl);
    for (const auto& d : pc.directions) CHECK(std::abs(d.intercept) < 1e-6);

    // only f12 has nonzero mean: axis coefficient vanishes, diagonal sees fhat12(0)
    GridField f12 = gen_gaussian(g, FieldKind::sym2, {0.0, 0.0}, 1.0, {0.0, 1.0, 0.0});
    auto p12 = mean_zero_necessity_probe(f12);
    CHECK(p12.directions[0].model_coeff < 1e-12);
    CHECK(p12.directions[0].samples[0] < 1e-12);
    CHECK(p12.directions[2].model_coeff == Approx(0.5).margin(1e-9));
    CHECK(std::abs(p12.directions[2].ratio - 1.0) < 0.10);
}

TEST_CASE("pointwise elastic split: potentials round trip exactly") {
    detail::SplitMix64 rng(9);
    Vec2 y{0.0, 1.0};
    SymTensor<Complex> v0(2, 2);
    for (int k = 0; k < 3; ++k) v0[k] = Complex(rng.normal(), rng.normal());
    auto sH = pointwise_split_elastic(Hhat_y(y, v0), y);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(sH.v[k] - v0[k]) < 1e-13);
    CHECK(std::abs(sH.u[0]) < 1e-13);
    CHECK(std::abs(sH.u[1]) < 1e-13);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(sH.g[k]) < 1e-13);

    Vec2 y2{0.8, -0.6};
    std::array<Complex, 2> u0{Complex(1.37, -0.2) * perp(y2)[0], Complex(1.37, -0.2) * perp(y2)[1]};
    auto sK = pointwise_split_elastic(Khat_y(y2, u0), y2);
    CHECK(std::abs(sK.u[0] - u0[0]) < 1e-13);
    CHECK(std::abs(sK.u[1] - u0[1]) < 1e-13);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(sK.v[k]) < 1e-13);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(sK.g[k]) < 1e-13);

    ElasticTensor2<Complex> f(2);
    CHECK_THROWS_AS(pointwise_split_elastic(f, {0.0, 0.0}), error);
}

TEST_CASE("pointwise elastic split: residuals and dense oracle on random input") {
    detail::SplitMix64 rng(1234);
    double worst_recon = 0.0, worst_orth = 0.0, worst_oracle = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        ElasticTensor2<Complex> f(2);
        for (int k = 0; k < 6; ++k) f[k] = Complex(rng.normal(), rng.normal());
        Vec2 y{rng.normal(), rng.normal()};
        if (dot(y, y) < 1e-4) y = {1.0, 0.3};
        auto s = pointwise_split_elastic(f, y);
        auto recon = f - Hhat_y(y, s.v) - Khat_y(y, s.u) - s.g;
        for (int k = 0; k < 6; ++k) worst_recon = std::max(worst_recon, std::abs(recon[k]));
        auto hs = Hstar_y(y, s.g);
        auto ks = Kstar_y(y, s.g);
        double y2 = dot(y, y);
        for (int k = 0; k < 3; ++k) worst_orth = std::max(worst_orth, std::abs(hs[k]) / y2);
        worst_orth = std::max({worst_orth, std::abs(ks[0]) / std::sqrt(y2),
                               std::abs(ks[1]) / std::sqrt(y2),
                               std::abs(s.u[0] * y[0] + s.u[1] * y[1]) / std::sqrt(y2)});
        auto od = oracle::dense_split(f, y);
        double mag = 1.0;
        for (int k = 0; k < 6; ++k) mag = std::max(mag, std::abs(s.g[k]));
        for (int k = 0; k < 3; ++k) mag = std::max(mag, std::abs(s.v[k]));
        for (int k = 0; k < 2; ++k) mag = std::max(mag, std::abs(s.u[k]));
        for (int k = 0; k < 6; ++k)
            worst_oracle = std::max(worst_oracle, std::abs(s.g[k] - od.g[k]) / mag);
        for (int k = 0; k < 3; ++k)
            worst_oracle = std::max(worst_oracle, std::abs(s.v[k] - od.v[k]) / mag);
        for (int k = 0; k < 2; ++k)
            worst_oracle = std::max(worst_oracle, std::abs(s.u[k] - od.u[k]) / mag);
    }
    CHECK(worst_recon < 1e-12);
    CHECK(worst_orth < 1e-12);
    CHECK(worst_oracle < 1e-12);
}

TEST_CASE("pointwise elastic split: 0-homogeneous projections") {
    detail::SplitMix64 rng(55);
    ElasticTensor2<Complex> f(2);
    for (int k = 0; k < 6; ++k) f[k] = Complex(rng.normal(), rng.normal());
    Vec2 y{0.7, -0.4};
    auto s1 = pointwise_split_elastic(f, y);
    auto s2 = pointwise_split_elastic(f, 2.0 * y);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(s1.g[k] - s2.g[k]) < 1e-13);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(s2.u[k] - 0.5 * s1.u[k]) < 1e-13);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(s2.v[k] - 0.25 * s1.v[k]) < 1e-13);
}

TEST_CASE("decompose_elastic: potential recovery and residuals") {
    Grid2 g(128, 6.0);
    std::vector<AnalyticScalar> v0{AnalyticScalar::gaussian({0.2, -0.1}, 0.9),
                                   AnalyticScalar::gaussian({-0.3, 0.2}, 0.95),
                                   AnalyticScalar::gaussian({0.1, 0.3}, 0.85)};
    // u0 must sit in the uniqueness class (divergence-free): the curl-free
    // part of K u0 is a H-potential in disguise
    AnalyticScalar stream = AnalyticScalar::gaussian({0.0, 0.1}, 0.9);
    std::vector<AnalyticScalar> u0{stream.derivative(1), -1.0 * stream.derivative(0)};
    GridField f = gen_elastic_potential(g, v0, u0);
    auto split = decompose_elastic(f);
    CHECK(split.recon_residual <= 1e-9);
    CHECK(split.g.max_abs() <= 1e-7 * f.max_abs());

    GridField v0g = eval_analytic(g, FieldKind::sym2, v0);
    GridField u0g = eval_analytic(g, FieldKind::vector, u0);
    auto mean_adjusted_err = [](const GridField& got, const GridField& want) {
        double worst = 0.0;
        for (int c = 0; c < want.components(); ++c) {
            double mw = 0.0, mg = 0.0;
            for (double x : want.component(c)) mw += x;
            for (double x : got.component(c)) mg += x;
            mw /= static_cast<double>(want.component(c).size());
            mg /= static_cast<double>(got.component(c).size());
            for (std::size_t k = 0; k < want.component(c).size(); ++k)
                worst = std::max(worst,
                                 std::abs((got.component(c)[k] - mg) - (want.component(c)[k] - mw)));
        }
        return worst;
    };
    CHECK(mean_adjusted_err(split.v, v0g) <= 1e-7 * v0g.max_abs());
    CHECK(mean_adjusted_err(split.u, u0g) <= 1e-7 * u0g.max_abs());
}

TEST_CASE("decompose_elastic: zero field and random residuals") {
    Grid2 g(64, 6.0);
    GridField z(g, FieldKind::elastic2);
    auto sz = decompose_elastic(z);
    CHECK(sz.g.max_abs() == 0.0);
    CHECK(sz.v.max_abs() == 0.0);
    CHECK(sz.u.max_abs() == 0.0);

    GridField f = gen_random_bandlimited(g, FieldKind::elastic2, 77, 0.25, true);
    auto s = decompose_elastic(f);
    CHECK(s.recon_residual <= 1e-9);
    CHECK(s.hstar_residual <= 1e-9);
    CHECK(s.kstar_residual <= 1e-9);
    CHECK(s.u_dot_y_residual <= 1e-9);

    // idempotence: decomposing g returns (0, 0, g)
    auto sg = decompose_elastic(s.g);
    CHECK(sg.v.max_abs() <= 1e-9 * std::max(1.0, s.g.max_abs()));
    CHECK(sg.u.max_abs() <= 1e-9 * std::max(1.0, s.g.max_abs()));
    GridField dg = sg.g - s.g;
    CHECK(dg.max_abs() <= 1e-9 * std::max(1.0, s.g.max_abs()));
}

TEST_CASE("decompose_elastic enforces the mean-zero gate") {
    Grid2 g(64, 6.0);
    GridField f = gen_gaussian(g, FieldKind::elastic2, {0.0, 0.0}, 1.0,
                               {1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(decompose_elastic(f), mean_zero_error);
}
