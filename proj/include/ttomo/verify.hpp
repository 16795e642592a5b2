#pragma once

#include <chrono>

#include <json.hpp>

#include "ttomo/decompose.hpp"
#include "ttomo/dense_oracle.hpp"
#include "ttomo/ray.hpp"

namespace ttomo {

struct CheckResult {
    std::string name;
    std::string ref;       // the identity or property being checked
    double measured;
    double tolerance;
    bool pass;
    std::string note;
};

struct VerifyEnv {
    int grid_n = 128;
    double extent = 6.0;
    std::uint64_t seed = 1;
};

struct VerifyReport {
    std::string schema = "report/1";
    std::string suite;
    VerifyEnv env;
    std::vector<CheckResult> checks;
    double wall_time_s = 0.0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json jchecks = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json jc{{"name", c.name},     {"ref", c.ref},
                              {"measured", c.measured}, {"tolerance", c.tolerance},
                              {"pass", c.pass}};
            if (!c.note.empty()) jc["note"] = c.note;
            jchecks.push_back(jc);
        }
        return nlohmann::json{{"schema", schema},
                              {"suite", suite},
                              {"environment",
                               {{"grid_n", env.grid_n}, {"extent", env.extent}, {"seed", env.seed}}},
                              {"checks", jchecks},
                              {"wall_time_s", wall_time_s},
                              {"pass", pass()}};
    }
};

namespace detail {

/// Gaussian bump field with seeded weights, width and center; decays at the
/// boundary by construction so it is admissible for quadrature tests.
inline GridField seeded_gaussian_field(const Grid2& grid, FieldKind kind, std::uint64_t seed,
                                       bool mean_zero = false) {
    SplitMix64 rng(seed * 0x9E3779B97F4A7C15ull + 17);
    std::vector<double> w(component_count(kind));
    for (auto& x : w) x = 2.0 * rng.uniform01() - 1.0;
    // widths and centers sized so the 1e-12 boundary-decay gate holds at L = 6
    double width = 0.8 + 0.15 * rng.uniform01();
    Vec2 center{0.3 * (2.0 * rng.uniform01() - 1.0), 0.3 * (2.0 * rng.uniform01() - 1.0)};
    return gen_gaussian(grid, kind, center, width, w, mean_zero);
}

inline CheckResult check_le(std::string name, std::string ref, double measured, double tol,
                            std::string note = "") {
    return {std::move(name), std::move(ref), measured, tol, measured <= tol, std::move(note)};
}

inline CheckResult check_ge(std::string name, std::string ref, double measured, double threshold,
                            std::string note = "") {
    return {std::move(name), std::move(ref), measured, threshold, measured >= threshold,
            std::move(note)};
}

template <class F>
VerifyReport timed_suite(const std::string& name, const VerifyEnv& env, F&& body) {
    VerifyReport rep;
    rep.suite = name;
    rep.env = env;
    auto t0 = std::chrono::steady_clock::now();
    body(rep);
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace detail

/// Checks the unique split f = g + d^2 v, delta^2 g = 0, on mean-zero fields.
inline VerifyReport suite_decomp(const VerifyEnv& env) {
    return detail::timed_suite("decomp", env, [&](VerifyReport& rep) {
        Grid2 grid(env.grid_n, env.extent);
        double worst_recon = 0.0, worst_sol = 0.0;
        for (std::uint64_t s = 1; s <= 8; ++s) {
            GridField f = gen_random_bandlimited(grid, FieldKind::sym2, env.seed + s - 1, 0.25, true);
            auto split = decompose_sym2(f);
            worst_recon = std::max(worst_recon, split.recon_residual);
            worst_sol = std::max(worst_sol, split.solenoidal_residual);
        }
        rep.checks.push_back(detail::check_le("reconstruction_8_seeds", "f = g + d^2 v",
                                              worst_recon, 1e-10));
        rep.checks.push_back(detail::check_le("solenoidal_8_seeds", "delta^2 g = 0",
                                              worst_sol, 1e-10));

        GridField f1 = gen_random_bandlimited(grid, FieldKind::sym2, env.seed, 0.25, true);
        auto s1 = decompose_sym2(f1);
        auto s2 = decompose_sym2(s1.g);
        double idem = s1.g.max_abs() > 0.0 ? s2.v.max_abs() / s1.g.max_abs() : s2.v.max_abs();
        rep.checks.push_back(detail::check_le("idempotence_v_part", "split(g) = (g, 0)", idem, 1e-9));

        // potential recovery: the constant mode of v is invisible to d^2, so
        // compare after matching grid means
        AnalyticScalar v0 = AnalyticScalar::gaussian({0.0, 0.0}, 1.0);
        GridField fh = gen_hessian_field(grid, v0);
        auto sh = decompose_sym2(fh);
        GridField v0g = eval_analytic(grid, FieldKind::scalar, {v0});
        double v0mean = 0.0;
        for (double x : v0g.component(0)) v0mean += x;
        v0mean /= static_cast<double>(v0g.component(0).size());
        double verr = 0.0;
        for (std::size_t k = 0; k < v0g.component(0).size(); ++k)
            verr = std::max(verr, std::abs(sh.v.component(0)[k] - (v0g.component(0)[k] - v0mean)));
        rep.checks.push_back(detail::check_le("hessian_recovery_v", "decompose(d^2 v0).v = v0",
                                              verr / v0g.max_abs(), 1e-8,
                                              "compared after removing the constant mode"));
        rep.checks.push_back(detail::check_le("hessian_recovery_g", "decompose(d^2 v0).g = 0",
                                              sh.g.max_abs() / fh.max_abs(), 1e-8));

        // mean-zero necessity probe
        GridField fg = gen_gaussian(grid, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
        auto probe = mean_zero_necessity_probe(fg);
        const auto& ax = probe.directions[0];
        rep.checks.push_back(detail::check_le("probe_model_coeff_axis",
                                              "omega.fhat(0).omega = 1/2", std::abs(ax.model_coeff - 0.5),
                                              1e-6));
        rep.checks.push_back(detail::check_le("probe_agreement_axis",
                                              "|vhat| |y|^2 -> |omega.fhat(0).omega|",
                                              std::abs(ax.ratio - 1.0), 0.10));
        GridField ctrl = gen_perp_hessian_field(grid, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
        auto probe2 = mean_zero_necessity_probe(ctrl);
        double worst_ctrl = 0.0;
        for (const auto& d : probe2.directions) worst_ctrl = std::max(worst_ctrl, d.intercept);
        rep.checks.push_back(detail::check_le("probe_mean_zero_control",
                                              "solenoidal control: coefficient = 0", worst_ctrl, 1e-6));
    });
}

/// Checks the elastic split f = H v + K u + g, pointwise and full-field.
inline VerifyReport suite_elastic(const VerifyEnv& env) {
    return detail::timed_suite("elastic", env, [&](VerifyReport& rep) {
        Grid2 grid(env.grid_n, env.extent);
        detail::SplitMix64 rng(env.seed * 977 + 3);
        double worst_recon = 0.0, worst_orth = 0.0, worst_oracle = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            ElasticTensor2<Complex> f(2);
            for (int k = 0; k < 6; ++k) f[k] = Complex(rng.normal(), rng.normal());
            Vec2 y{rng.normal(), rng.normal()};
            if (dot(y, y) < 1e-4) y = {1.0, 0.5};
            auto sp = pointwise_split_elastic(f, y);
            auto recon = f - Hhat_y(y, sp.v) - Khat_y(y, sp.u) - sp.g;
            for (int k = 0; k < 6; ++k) worst_recon = std::max(worst_recon, std::abs(recon[k]));
            auto hs = Hstar_y(y, sp.g);
            auto ks = Kstar_y(y, sp.g);
            double y2 = dot(y, y);
            for (int k = 0; k < 3; ++k)
                worst_orth = std::max(worst_orth, std::abs(hs[k]) / y2);
            worst_orth = std::max({worst_orth, std::abs(ks[0]) / std::sqrt(y2),
                                   std::abs(ks[1]) / std::sqrt(y2)});
            worst_orth = std::max(worst_orth,
                                  std::abs(sp.u[0] * y[0] + sp.u[1] * y[1]) / std::sqrt(y2));
            auto od = oracle::dense_split(f, y);
            double mag = 1.0;
            for (int k = 0; k < 6; ++k) mag = std::max(mag, std::abs(sp.g[k]));
            for (int k = 0; k < 3; ++k) mag = std::max(mag, std::abs(sp.v[k]));
            for (int k = 0; k < 2; ++k) mag = std::max(mag, std::abs(sp.u[k]));
            for (int k = 0; k < 6; ++k)
                worst_oracle = std::max(worst_oracle, std::abs(sp.g[k] - od.g[k]) / mag);
            for (int k = 0; k < 3; ++k)
                worst_oracle = std::max(worst_oracle, std::abs(sp.v[k] - od.v[k]) / mag);
            for (int k = 0; k < 2; ++k)
                worst_oracle = std::max(worst_oracle, std::abs(sp.u[k] - od.u[k]) / mag);
        }
        rep.checks.push_back(detail::check_le("pointwise_reconstruction",
                                              "f = H_y v + K_y u + g", worst_recon, 1e-12));
        rep.checks.push_back(detail::check_le("pointwise_orthogonality",
                                              "H*_y g = K*_y g = <u,y> = 0", worst_orth, 1e-12));
        rep.checks.push_back(detail::check_le("dense_oracle_agreement",
                                              "formulas = dense least squares", worst_oracle, 1e-12));

        double worst_field = 0.0;
        for (std::uint64_t s = 0; s < 4; ++s) {
            GridField f = gen_random_bandlimited(grid, FieldKind::elastic2, env.seed + 100 + s,
                                                 0.25, true);
            auto sp = decompose_elastic(f);
            worst_field = std::max({worst_field, sp.recon_residual, sp.hstar_residual,
                                    sp.kstar_residual, sp.u_dot_y_residual});
        }
        rep.checks.push_back(detail::check_le("field_residuals_4_seeds",
                                              "f = Hv + Ku + g, H*g = K*g = 0", worst_field, 1e-9));

        // potential round-trip, mean-adjusted (constant modes are invisible)
        std::vector<AnalyticScalar> v0{AnalyticScalar::gaussian({0.2, -0.1}, 0.9),
                                       AnalyticScalar::gaussian({-0.3, 0.2}, 0.95,
                                                                Poly2::monomial(0, 1, 0.7)),
                                       AnalyticScalar::gaussian({0.1, 0.3}, 0.85)};
        // divergence-free u0 so the round trip sits in the uniqueness class
        AnalyticScalar stream = AnalyticScalar::gaussian({0.0, 0.1}, 0.9);
        std::vector<AnalyticScalar> u0{stream.derivative(1), -1.0 * stream.derivative(0)};
        GridField fp = gen_elastic_potential(grid, v0, u0);
        auto sp = decompose_elastic(fp);
        GridField v0g = eval_analytic(grid, FieldKind::sym2, v0);
        GridField u0g = eval_analytic(grid, FieldKind::vector, u0);
        auto mean_adjusted_err = [](const GridField& got, const GridField& want) {
            double worst = 0.0;
            for (int c = 0; c < want.components(); ++c) {
                double mw = 0.0, mg = 0.0;
                for (double x : want.component(c)) mw += x;
                for (double x : got.component(c)) mg += x;
                mw /= static_cast<double>(want.component(c).size());
                mg /= static_cast<double>(got.component(c).size());
                for (std::size_t k = 0; k < want.component(c).size(); ++k)
                    worst = std::max(worst, std::abs((got.component(c)[k] - mg) -
                                                     (want.component(c)[k] - mw)));
            }
            return worst;
        };
        double verr = mean_adjusted_err(sp.v, v0g) / v0g.max_abs();
        double uerr = mean_adjusted_err(sp.u, u0g) / u0g.max_abs();
        double gres = sp.g.max_abs() / fp.max_abs();
        rep.checks.push_back(detail::check_le("potential_roundtrip_v", "recover v0 from Hv0+Ku0",
                                              verr, 1e-7, "mean-adjusted"));
        rep.checks.push_back(detail::check_le("potential_roundtrip_u", "recover u0 from Hv0+Ku0",
                                              uerr, 1e-7, "mean-adjusted"));
        rep.checks.push_back(detail::check_le("potential_roundtrip_g", "g = 0 on potentials",
                                              gres, 1e-7));
    });
}

/// Checks that I^0 f = I^1 f = 0 exactly on Hessian fields.
inline VerifyReport suite_kernel_moments(const VerifyEnv& env) {
    return detail::timed_suite("kernel-moments", env, [&](VerifyReport& rep) {
        Grid2 grid(env.grid_n, env.extent);
        GridField f = gen_hessian_field(grid, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
        FieldSampler sampler(f);
        LineGrid lines = make_line_grid(grid, 64, 129);
        Sinogram sino = momentum_I_multi(sampler, {0, 1}, lines);
        double scale = f.max_abs() * grid.extent;
        rep.checks.push_back(detail::check_le("kernel_forward_i0", "I^0(d^2 v) = 0",
                                              sino.max_abs(0) / scale, 1e-6));
        rep.checks.push_back(detail::check_le("kernel_forward_i1", "I^1(d^2 v) = 0",
                                              sino.max_abs(1) / scale, 1e-6));

        GridField g0 = gen_perp_hessian_field(grid, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
        GridField f2 = f + g0;
        FieldSampler sampler2(f2);
        Sinogram sino2 = momentum_I_multi(sampler2, {0, 1}, lines);
        double scale2 = f2.max_abs() * grid.extent;
        double detect = std::max(sino2.max_abs(0), sino2.max_abs(1)) / scale2;
        rep.checks.push_back(detail::check_ge("non_kernel_detected", "I(d^2 v + g0) != 0",
                                              detect, 1e-3));
        auto split = decompose_sym2(f2);
        GridField gerr = split.g - g0;
        rep.checks.push_back(detail::check_le("solenoidal_recovery", "decompose recovers g0",
                                              gerr.max_abs() / g0.max_abs(), 1e-8));
    });
}

/// Checks that X^2 vanishes exactly on H v + K u (and X^1 on Hessians).
inline VerifyReport suite_kernel_elastic(const VerifyEnv& env) {
    return detail::timed_suite("kernel-elastic", env, [&](VerifyReport& rep) {
        Grid2 grid(env.grid_n, env.extent);
        LineGrid lines = make_line_grid(grid, 32, 65);

        GridField fh = gen_hessian_field(grid, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
        FieldSampler sh(fh);
        Sinogram x1 = elastic_X(sh, 1, lines);
        double scale1 = fh.max_abs() * grid.extent;
        rep.checks.push_back(detail::check_le("x1_kernel", "X^1(d^2 v) = 0",
                                              std::max(x1.max_abs(0), x1.max_abs(1)) / scale1,
                                              1e-6));

        std::vector<AnalyticScalar> v0{AnalyticScalar::gaussian({0.1, 0.0}, 0.9),
                                       AnalyticScalar::gaussian({0.0, -0.2}, 0.95),
                                       AnalyticScalar::gaussian({-0.1, 0.1}, 0.85)};
        std::vector<AnalyticScalar> u0{AnalyticScalar::gaussian({0.2, 0.1}, 0.9),
                                       AnalyticScalar::gaussian({0.0, 0.0}, 0.95)};
        GridField fp = gen_elastic_potential(grid, v0, u0);
        FieldSampler sp(fp);
        Sinogram x2 = elastic_X(sp, 2, lines);
        double scale2 = fp.max_abs() * grid.extent;
        double floor2 = std::max(x2.max_abs(0), x2.max_abs(1)) / scale2;
        rep.checks.push_back(detail::check_le("x2_kernel", "X^2(Hv + Ku) = 0", floor2, 1e-6));

        GridField pert = gen_gaussian(grid, FieldKind::elastic2, {0.0, 0.0}, 1.0,
                                      {0.0, 0.0, 0.0, 1.0, 0.0, 0.0});
        GridField f2 = fp + 0.05 * pert;
        FieldSampler sp2(f2);
        Sinogram x2p = elastic_X(sp2, 2, lines);
        double lifted = std::max(x2p.max_abs(0), x2p.max_abs(1)) / (f2.max_abs() * grid.extent);
        rep.checks.push_back(detail::check_ge("x2_detects_g_part",
                                              "X^2(f + g) >= 100 x kernel floor", lifted,
                                              100.0 * std::max(floor2, 1e-12)));
    });
}

/// The slice identity: 1-D transform of I^0 f equals sqrt(2 pi) fhat
/// restricted to the perpendicular frequency line.
inline VerifyReport suite_slice(const VerifyEnv& env) {
    return detail::timed_suite("slice", env, [&](VerifyReport& rep) {
        Grid2 grid(env.grid_n, env.extent);
        GridField f = gen_gaussian(grid, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
        FieldSampler sampler(f);
        double worst = 0.0, worst_dc = 0.0;
        for (int a = 0; a < 8; ++a) {
            double phi = pi * a / 8.0;
            auto chk = fourier_slice_check(f, sampler, phi, 8.0);
            worst = std::max(worst, chk.scaled_residual);
            worst_dc = std::max(worst_dc, chk.dc_relative);
        }
        rep.checks.push_back(detail::check_le("slice_residual_8_angles",
                                              "FT_s I^0 f = sqrt(2 pi) fhat xi xi", worst, 1e-5,
                                              "relative to the profile maximum"));
        rep.checks.push_back(detail::check_le("slice_dc_vs_route", "sigma = 0 bin agreement",
                                              worst_dc, 1e-6));
        auto chk0 = fourier_slice_check(f, sampler, 0.0, 8.0);
        int mid = static_cast<int>(chk0.sigma.size()) / 2;
        double closed = pi / std::sqrt(2.0 * pi);
        rep.checks.push_back(detail::check_le("slice_closed_form_dc",
                                              "value pi (2 pi)^(-1/2) at sigma = 0",
                                              std::abs(chk0.lhs[mid].real() - closed) / closed,
                                              1e-6));
    });
}

/// J^q from I-moments versus direct quadrature, and the derivative relations.
inline VerifyReport suite_moments_relation(const VerifyEnv& env) {
    return detail::timed_suite("moments-relation", env, [&](VerifyReport& rep) {
        Grid2 grid(env.grid_n, env.extent);
        GridField fgen = detail::seeded_gaussian_field(grid, FieldKind::sym2, env.seed + 41);
        FieldSampler sgen(fgen);
        detail::SplitMix64 rng(env.seed * 131 + 7);
        double worst_rel = 0.0;
        std::array<double, 3> scale{0.0, 0.0, 0.0};
        std::vector<std::array<double, 5>> probes;  // x1 x2 xi1 xi2 speed
        for (int p = 0; p < 100; ++p) {
            double ang = 2.0 * pi * rng.uniform01();
            double r = 2.0 * rng.uniform01();
            double dang = 2.0 * pi * rng.uniform01();
            double speed = 0.5 + 1.5 * rng.uniform01();
            probes.push_back({r * std::cos(ang), r * std::sin(ang),
                              speed * std::cos(dang), speed * std::sin(dang), speed});
        }
        std::vector<std::array<double, 3>> direct(probes.size());
        for (std::size_t p = 0; p < probes.size(); ++p) {
            Vec2 x{probes[p][0], probes[p][1]};
            Vec2 xi{probes[p][2], probes[p][3]};
            for (int q = 0; q < 3; ++q) {
                direct[p][q] = momentum_J_direct(sgen, q, x, xi);
                scale[q] = std::max(scale[q], std::abs(direct[p][q]));
            }
        }
        for (std::size_t p = 0; p < probes.size(); ++p) {
            Vec2 x{probes[p][0], probes[p][1]};
            Vec2 xi{probes[p][2], probes[p][3]};
            auto viaI = J_from_I(sgen, x, xi);
            for (int q = 0; q < 3; ++q) {
                double denom = std::max(std::abs(direct[p][q]), 0.05 * scale[q]);
                worst_rel = std::max(worst_rel, std::abs(viaI[q] - direct[p][q]) / denom);
            }
        }
        rep.checks.push_back(detail::check_le("j_from_i_random_probes",
                                              "J^q(x, xi) from (I^0, I^1, I^2)", worst_rel, 1e-6,
                                              "100 probes, |xi| in [0.5, 2]"));

        GridField fg = gen_gaussian(grid, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
        FieldSampler sg(fg);
        double sqrt_pi = std::sqrt(pi);
        double j0 = momentum_J_direct(sg, 0, {0.0, 0.0}, {2.0, 0.0});
        double j0i = J_from_I(sg, {0.0, 0.0}, {2.0, 0.0})[0];
        rep.checks.push_back(detail::check_le("closed_form_2sqrtpi", "J^0(0, 2 e1) = 2 sqrt(pi)",
                                              std::max(std::abs(j0 - 2.0 * sqrt_pi),
                                                       std::abs(j0i - 2.0 * sqrt_pi)),
                                              1e-6 * 2.0 * sqrt_pi));
        double j1 = momentum_J_direct(sg, 1, {1.0, 0.0}, {1.0, 0.0});
        double j1i = J_from_I(sg, {1.0, 0.0}, {1.0, 0.0})[1];
        rep.checks.push_back(detail::check_le("closed_form_minus_sqrtpi",
                                              "J^1((1,0), e1) = -sqrt(pi)",
                                              std::max(std::abs(j1 + sqrt_pi), std::abs(j1i + sqrt_pi)),
                                              1e-6 * sqrt_pi));

        auto rel = moment_relation_residual(sgen, 32, env.seed + 5);
        rep.checks.push_back(detail::check_le("relation_residual",
                                              "d_xi J^0 - d_x J^1 = 2 V f",
                                              rel.max_residual_A / rel.scale, 1e-4,
                                              "32 probes, step 1e-3"));
        rep.checks.push_back(detail::check_le("recovery_residual",
                                              "d_x J^1 from X^1 data",
                                              rel.max_residual_B / rel.scale, 1e-4));
        rep.checks.push_back(detail::check_le("relation_richardson",
                                              "half-step consistency",
                                              std::max(rel.max_residual_A_half, rel.max_residual_B_half) /
                                                  rel.scale,
                                              1e-4));
    });
}

/// Kernel equality of {I^0, I^1} and X^1.
inline VerifyReport suite_equivalence(const VerifyEnv& env) {
    return detail::timed_suite("equivalence", env, [&](VerifyReport& rep) {
        Grid2 grid(env.grid_n, env.extent);
        LineGrid lines = make_line_grid(grid, 32, 65);

        GridField fk = gen_hessian_field(grid, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
        FieldSampler sk(fk);
        double scale_k = fk.max_abs() * grid.extent;
        Sinogram x1 = elastic_X(sk, 1, lines);
        Sinogram moments = momentum_I_multi(sk, {0, 1}, lines);
        double x1max = std::max(x1.max_abs(0), x1.max_abs(1)) / scale_k;
        double imax = std::max(moments.max_abs(0), moments.max_abs(1)) / scale_k;
        rep.checks.push_back(detail::check_le("kernel_x1", "X^1 = 0 on Hessians", x1max, 1e-6));
        rep.checks.push_back(detail::check_le("kernel_moments", "(I^0, I^1) = 0 on Hessians",
                                              imax, 1e-6));

        GridField fn = fk + gen_perp_hessian_field(grid, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
        FieldSampler sn(fn);
        double scale_n = fn.max_abs() * grid.extent;
        Sinogram x1n = elastic_X(sn, 1, lines);
        Sinogram mn = momentum_I_multi(sn, {0, 1}, lines);
        rep.checks.push_back(detail::check_ge("non_kernel_x1", "X^1 != 0 off the kernel",
                                              std::max(x1n.max_abs(0), x1n.max_abs(1)) / scale_n,
                                              1e-3));
        rep.checks.push_back(detail::check_ge("non_kernel_moments", "(I^0, I^1) != 0 off the kernel",
                                              std::max(mn.max_abs(0), mn.max_abs(1)) / scale_n,
                                              1e-3));

        GridField fgen = detail::seeded_gaussian_field(grid, FieldKind::sym2, env.seed + 43);
        FieldSampler sgen(fgen);
        auto rel = moment_relation_residual(sgen, 16, env.seed + 9);
        rep.checks.push_back(detail::check_le("x1_recovers_moment_derivatives",
                                              "d_x J^1 from X^1 data",
                                              rel.max_residual_B / rel.scale, 1e-4));
    });
}

/// The compatibility character of the kernel: the literal symmetrized formula
/// vanishes identically, and the 2-D compatibility operator annihilates
/// exactly the Hessians.
inline VerifyReport suite_saint_venant(const VerifyEnv& env) {
    return detail::timed_suite("saint-venant", env, [&](VerifyReport& rep) {
        detail::SplitMix64 rng(env.seed * 271 + 1);
        double worst_pt = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            // random first-derivative values with f symmetric in (i, j)
            std::array<std::array<double, 2>, 3> g{};
            for (auto& row : g)
                for (auto& v : row) v = rng.normal();
            std::array<std::array<std::array<double, 2>, 2>, 2> df{};
            for (int k = 0; k < 2; ++k) {
                df[0][0][k] = g[0][k];
                df[0][1][k] = df[1][0][k] = g[1][k];
                df[1][1][k] = g[2][k];
            }
            auto r = saint_venant_pointwise(df);
            for (double v : r) worst_pt = std::max(worst_pt, std::abs(v));
        }
        rep.checks.push_back(detail::check_le(
            "literal_identically_zero", "sigma(j,k){d_k f_ij - d_j f_ik} = 0", worst_pt, 1e-14,
            "the bracket is antisymmetric in (j,k); its (j,k)-symmetrization vanishes identically, "
            "so the literal formula carries no information and the 2-D compatibility operator is "
            "the operative kernel test"));

        Grid2 grid(env.grid_n, env.extent);
        GridField fr = gen_random_bandlimited(grid, FieldKind::sym2, env.seed + 7, 0.25, true);
        rep.checks.push_back(detail::check_le("literal_zero_on_fields", "R(f) = 0 as a field",
                                              saint_venant_literal(fr).max_abs(), 1e-12));

        GridField fh = gen_hessian_field(grid, AnalyticScalar::gaussian({0.0, 0.0}, 1.0));
        GridField wf = compatibility_2d(fh);
        rep.checks.push_back(detail::check_le("compatibility_kills_hessians", "W(d^2 v) = 0",
                                              wf.max_abs() / fh.max_abs(), 1e-9));

        GridField fw = gen_gaussian(grid, FieldKind::sym2, {0.0, 0.0}, 1.0, {1.0, 0.0, 0.0});
        GridField ww = compatibility_2d(fw);
        int c = grid.n / 2;
        rep.checks.push_back(detail::check_le("witness_center_value", "W f(0) = -2 for f11 Gaussian",
                                              std::abs(ww.at(0, c, c) + 2.0), 1e-9));
        rep.checks.push_back(detail::check_ge("witness_magnitude", "|W f| >= 0.1 scale off kernel",
                                              ww.max_abs() / fw.max_abs(), 0.1));
    });
}

/// Quadrature adjointness of the operator pairs.
inline VerifyReport suite_adjointness(const VerifyEnv& env) {
    return detail::timed_suite("adjointness", env, [&](VerifyReport& rep) {
        Grid2 grid(env.grid_n, env.extent);
        detail::SplitMix64 rng(env.seed * 31 + 11);

        double worst_ix = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            SymTensor<double> u(1, 2), w(2, 2);
            for (int k = 0; k < u.size(); ++k) u[k] = rng.normal();
            for (int k = 0; k < w.size(); ++k) w[k] = rng.normal();
            std::vector<double> x{rng.normal(), rng.normal()};
            double lhs = inner(i_x(x, u), w);
            double rhs = inner(u, j_x(x, w));
            worst_ix = std::max(worst_ix, std::abs(lhs - rhs) /
                                              std::max(1e-300, std::abs(lhs) + std::abs(rhs)));
        }
        rep.checks.push_back(detail::check_le("ix_jx", "<i_x u, w> = <u, j_x w>", worst_ix, 1e-13));

        auto rel_err = [](double a, double b) {
            return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
        };

        GridField u = detail::seeded_gaussian_field(grid, FieldKind::vector, env.seed + 1);
        GridField w2 = detail::seeded_gaussian_field(grid, FieldKind::sym2, env.seed + 2);
        GridField du = ifft_field(spectral_d(fft_field(u), 1));
        GridField dw = ifft_field(spectral_div(fft_field(w2), 1));
        rep.checks.push_back(detail::check_le("d_delta", "<d u, w> = -<u, delta w>",
                                              rel_err(field_inner(du, w2), -field_inner(u, dw)),
                                              1e-8));

        GridField v = detail::seeded_gaussian_field(grid, FieldKind::sym2, env.seed + 3);
        GridField we = detail::seeded_gaussian_field(grid, FieldKind::elastic2, env.seed + 4);
        rep.checks.push_back(detail::check_le("H_Hstar", "<H v, w> = <v, H* w>",
                                              rel_err(field_inner(apply_H(v), we),
                                                      field_inner(v, apply_Hstar(we))),
                                              1e-8));

        GridField uv = detail::seeded_gaussian_field(grid, FieldKind::vector, env.seed + 5);
        rep.checks.push_back(detail::check_le("K_Kstar", "<K u, w> = <u, K* w>",
                                              rel_err(field_inner(apply_K(uv), we),
                                                      field_inner(uv, apply_Kstar(we))),
                                              1e-8));
    });
}

inline std::vector<std::string> suite_names() {
    return {"decomp",          "elastic",     "kernel-moments", "kernel-elastic", "slice",
            "moments-relation", "equivalence", "saint-venant",   "adjointness"};
}

inline VerifyReport run_suite(const std::string& name, const VerifyEnv& env) {
    if (name == "decomp") return suite_decomp(env);
    if (name == "elastic") return suite_elastic(env);
    if (name == "kernel-moments") return suite_kernel_moments(env);
    if (name == "kernel-elastic") return suite_kernel_elastic(env);
    if (name == "slice") return suite_slice(env);
    if (name == "moments-relation") return suite_moments_relation(env);
    if (name == "equivalence") return suite_equivalence(env);
    if (name == "saint-venant") return suite_saint_venant(env);
    if (name == "adjointness") return suite_adjointness(env);
    throw error("unknown suite '" + name + "'");
}

}  // namespace ttomo
