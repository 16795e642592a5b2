#include <catch2/catch_amalgamated.hpp>

#include "ttomo/generators.hpp"
#include "ttomo/io.hpp"

using namespace ttomo;
using Catch::Approx;

TEST_CASE("grid validation") {
    CHECK_NOTHROW(Grid2(128, 6.0));
    CHECK_THROWS_AS(Grid2(100, 6.0), error);  // not a power of two
    CHECK_THROWS_AS(Grid2(8, 6.0), error);    // too small
    CHECK_THROWS_AS(Grid2(128, -1.0), error);
    Grid2 g(128, 6.0);
    CHECK(g.spacing() == Approx(12.0 / 128));
    CHECK(g.coord(0) == Approx(-6.0));
    CHECK(g.coord(64) == Approx(0.0));
}

TEST_CASE("gaussian generator hits the requested peak and zero components") {
    Grid2 g(128, 6.0);
    GridField f = gen_gaussian(g, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
    int c = g.n / 2;
    CHECK(f.at(0, c, c) == Approx(1.0));
    for (std::size_t k = 0; k < f.component(1).size(); ++k) {
        CHECK(f.component(1)[k] == 0.0);
        CHECK(f.component(2)[k] == 0.0);
    }
}

TEST_CASE("decay gate: boundary ring of a unit-width gaussian at L=6") {
    Grid2 g(128, 6.0);
    GridField f = gen_gaussian(g, FieldKind::scalar, {0.0, 0.0}, 1.0, {1.0});
    CHECK(f.boundary_ring_max() < 1e-15);
    // extent 2 with width 1: e^{-4} ~ 0.018, far above the gate
    Grid2 tight(128, 2.0);
    CHECK_THROWS_AS(gen_gaussian(tight, FieldKind::scalar, {0.0, 0.0}, 1.0, {1.0}),
                    decay_gate_error);
}

TEST_CASE("mean-subtracted gaussian has vanishing mean") {
    Grid2 g(128, 6.0);
    GridField f = gen_gaussian(g, FieldKind::sym2, {0.1, -0.2}, 1.0, {1.0, 0.5, -0.7}, true);
    for (double m : f.mean_integral()) CHECK(std::abs(m) < 1e-12);
}

TEST_CASE("mean_integral reproduces the gaussian integral pi") {
    Grid2 g(128, 6.0);
    GridField f = gen_gaussian(g, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
    auto means = f.mean_integral();
    CHECK(means[0] == Approx(pi).margin(1e-10));
    CHECK(means[1] == 0.0);
    GridField z(g, FieldKind::scalar);
    CHECK(z.mean_integral()[0] == 0.0);
}

TEST_CASE("generators are linear in the weights") {
    Grid2 g(64, 6.0);
    GridField a = gen_gaussian(g, FieldKind::vector, {0.0, 0.0}, 1.0, {1.0, 0.0});
    GridField b = gen_gaussian(g, FieldKind::vector, {0.0, 0.0}, 1.0, {0.0, 1.0});
    GridField ab = gen_gaussian(g, FieldKind::vector, {0.0, 0.0}, 1.0, {2.0, -3.0});
    GridField combo = 2.0 * a - 3.0 * b;
    combo -= ab;
    CHECK(combo.max_abs() < 1e-14);
}

TEST_CASE("hessian generator hand values") {
    Grid2 g(128, 6.0);
    GridField f = gen_hessian_field(g, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
    int c = g.n / 2;
    CHECK(f.at(0, c, c) == Approx(-2.0));   // d11 e^{-|x|^2} at 0
    CHECK(f.at(1, c, c) == Approx(0.0).margin(1e-15));
    CHECK(f.at(2, c, c) == Approx(-2.0));
    // integral of a hessian of a decaying potential vanishes
    for (double m : f.mean_integral()) CHECK(std::abs(m) < 1e-10);
}

TEST_CASE("perp-hessian generator is 2-solenoidal pointwise at the center") {
    Grid2 g(128, 6.0);
    GridField f = gen_perp_hessian_field(g, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
    int c = g.n / 2;
    CHECK(f.at(0, c, c) == Approx(-2.0));  // d22 psi at 0
    CHECK(f.at(2, c, c) == Approx(-2.0));  // d11 psi at 0
    for (double m : f.mean_integral()) CHECK(std::abs(m) < 1e-10);
}

TEST_CASE("elastic potential generator hand values") {
    Grid2 g(128, 6.0);
    // v11 = x2^2 e^{-|x|^2}: (Hv)_(11)(22)(0) = 1/2 d22 v11(0) = 1
    std::vector<AnalyticScalar> v{
        AnalyticScalar::gaussian({0.0, 0.0}, 1.0, Poly2::monomial(0, 2)), {}, {}};
    std::vector<AnalyticScalar> u{{}, {}};
    GridField f = gen_elastic_potential(g, v, u);
    int c = g.n / 2;
    CHECK(f.at(2, c, c) == Approx(1.0));  // component w1122

    // u = (x2 e^{-|x|^2}, 0): (Ku)_(12)(11)(0) = 1/4
    std::vector<AnalyticScalar> v0{{}, {}, {}};
    std::vector<AnalyticScalar> u0{
        AnalyticScalar::gaussian({0.0, 0.0}, 1.0, Poly2::monomial(0, 1)), {}};
    GridField k = gen_elastic_potential(g, v0, u0);
    CHECK(k.at(1, c, c) == Approx(0.25));  // component w1112 = w_(11)(12) = w_(12)(11)

    GridField zero = gen_elastic_potential(g, v0, {{}, {}});
    CHECK(zero.max_abs() == 0.0);
}

TEST_CASE("random band-limited fields: determinism, mean, cutoff") {
    Grid2 g(64, 6.0);
    GridField a = gen_random_bandlimited(g, FieldKind::sym2, 7, 0.25, true);
    GridField b = gen_random_bandlimited(g, FieldKind::sym2, 7, 0.25, true);
    for (int c = 0; c < a.components(); ++c)
        for (std::size_t k = 0; k < a.component(c).size(); ++k)
            CHECK(a.component(c)[k] == b.component(c)[k]);  // bit identical

    for (double m : a.mean_integral()) CHECK(std::abs(m) < 1e-13);

    SpectralField sp = fft_field(a);
    double outside = 0.0;
    for (int c = 0; c < sp.components(); ++c)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                double k1 = g.signed_index(i1), k2 = g.signed_index(i2);
                if (std::sqrt(k1 * k1 + k2 * k2) > 0.25 * (g.n / 2) + 1e-9)
                    outside = std::max(outside, std::abs(sp.at(c, i1, i2)));
            }
    CHECK(outside < 1e-13);

    GridField c = gen_random_bandlimited(g, FieldKind::sym2, 8, 0.25, true);
    GridField diff = a - c;
    CHECK(diff.max_abs() > 1e-3);  // different seeds differ
}

TEST_CASE("grid-field directory round trip is bit exact") {
    Grid2 g(16, 3.0);
    GridField f(g, FieldKind::elastic2);
    detail::SplitMix64 rng(3);
    for (int c = 0; c < f.components(); ++c)
        for (auto& v : f.component(c)) v = rng.normal() * std::pow(10.0, rng.normal());
    auto dir = std::filesystem::temp_directory_path() / "ttomo_test_field";
    std::filesystem::remove_all(dir);
    save_grid_field(dir, f);
    GridField back = load_grid_field(dir);
    CHECK(back.kind() == f.kind());
    CHECK(back.grid().n == g.n);
    for (int c = 0; c < f.components(); ++c)
        for (std::size_t k = 0; k < f.component(c).size(); ++k)
            CHECK(back.component(c)[k] == f.component(c)[k]);
    std::filesystem::remove_all(dir);
}

TEST_CASE("field arithmetic and norms") {
    Grid2 g(32, 6.0);
    GridField f(g, FieldKind::scalar);
    f.at(0, 3, 4) = 2.0;
    f.at(0, 0, 0) = -5.0;
    CHECK(f.max_abs() == 5.0);
    CHECK(f.boundary_ring_max() == 5.0);
    GridField h = 2.0 * f;
    CHECK(h.max_abs() == 10.0);
    CHECK(f.l1_norm() == Approx(7.0 * g.spacing() * g.spacing()));
}
