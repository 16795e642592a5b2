#include <cstdio>
#include <future>
#include <iostream>

#include <CLI11.hpp>

#include "ttomo/io.hpp"
#include "ttomo/verify.hpp"

namespace {

using namespace ttomo;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

GridField make_generated(const std::string& kind, const Grid2& grid, std::uint64_t seed,
                         double width, Vec2 center, bool mean_zero, double rho,
                         const std::string& tensor, const std::vector<double>& weights) {
    detail::SplitMix64 rng(seed * 0x2545F4914F6CDD1Dull + 99);
    auto seeded_weights = [&](FieldKind k) {
        if (!weights.empty()) {
            if (static_cast<int>(weights.size()) != component_count(k))
                throw error("gen: --weights needs " + std::to_string(component_count(k)) +
                            " values for this kind");
            return weights;
        }
        std::vector<double> w(component_count(k));
        for (auto& x : w) x = 2.0 * rng.uniform01() - 1.0;
        return w;
    };
    auto seeded_gaussian = [&](Poly2 pre = Poly2(1.0)) {
        double wdt = width * (0.85 + 0.1 * rng.uniform01());
        Vec2 c = center + Vec2{0.25 * (2.0 * rng.uniform01() - 1.0),
                               0.25 * (2.0 * rng.uniform01() - 1.0)};
        return AnalyticScalar::gaussian(c, wdt, std::move(pre));
    };

    if (kind == "gaussian-scalar")
        return gen_gaussian(grid, FieldKind::scalar, center, width,
                            seeded_weights(FieldKind::scalar), mean_zero);
    if (kind == "gaussian-vector")
        return gen_gaussian(grid, FieldKind::vector, center, width,
                            seeded_weights(FieldKind::vector), mean_zero);
    if (kind == "gaussian-sym2")
        return gen_gaussian(grid, FieldKind::sym2, center, width, seeded_weights(FieldKind::sym2),
                            mean_zero);
    if (kind == "gaussian-elastic2")
        return gen_gaussian(grid, FieldKind::elastic2, center, width,
                            seeded_weights(FieldKind::elastic2), mean_zero);
    if (kind == "hessian") return gen_hessian_field(grid, seeded_gaussian());
    if (kind == "perp-hessian") return gen_perp_hessian_field(grid, seeded_gaussian());
    if (kind == "elastic-potential") {
        std::vector<AnalyticScalar> v{seeded_gaussian(), seeded_gaussian(), seeded_gaussian()};
        std::vector<AnalyticScalar> u{seeded_gaussian(), seeded_gaussian()};
        return gen_elastic_potential(grid, v, u);
    }
    if (kind == "random-bandlimited")
        return gen_random_bandlimited(grid, kind_from_name(tensor), seed, rho, mean_zero);
    throw error("unknown generator kind '" + kind + "'");
}

int cmd_gen(const std::string& kind, int n, double extent, std::uint64_t seed, double width,
            std::vector<double> center, bool mean_zero, double rho, const std::string& tensor,
            const std::vector<double>& weights, const std::string& out) {
    Grid2 grid(n, extent);
    Vec2 c{center.size() > 0 ? center[0] : 0.0, center.size() > 1 ? center[1] : 0.0};
    GridField f = make_generated(kind, grid, seed, width, c, mean_zero, rho, tensor, weights);
    save_grid_field(out, f);
    std::cout << "wrote " << kind_name(f.kind()) << " field (" << n << "x" << n << ", extent "
              << extent << ") to " << out << "\n";
    return exit_ok;
}

int cmd_decompose(const std::string& in, const std::string& out, double tol, double mean_tol) {
    GridField f = load_grid_field(in);
    std::filesystem::create_directories(out);
    nlohmann::json report{{"schema", "report/1"}, {"input", in}};
    report["tolerances"] = {{"residual", tol}, {"mean", mean_tol}};
    try {
        if (f.kind() == FieldKind::sym2) {
            auto split = decompose_sym2(f, mean_tol);
            save_grid_field(std::filesystem::path(out) / "g", split.g);
            save_grid_field(std::filesystem::path(out) / "v", split.v);
            report["residuals"] = {{"reconstruction", split.recon_residual},
                                   {"solenoidal", split.solenoidal_residual},
                                   {"g_fraction", f.max_abs() > 0.0
                                                      ? split.g.max_abs() / f.max_abs()
                                                      : 0.0}};
            report["means"] = split.input_means;
            bool pass = split.recon_residual <= tol && split.solenoidal_residual <= tol;
            report["pass"] = pass;
            std::ofstream(std::filesystem::path(out) / "report.json") << report.dump(2) << "\n";
            std::cout << report.dump(2) << "\n";
            return pass ? exit_ok : exit_check_failed;
        }
        if (f.kind() == FieldKind::elastic2) {
            auto split = decompose_elastic(f, mean_tol);
            save_grid_field(std::filesystem::path(out) / "g", split.g);
            save_grid_field(std::filesystem::path(out) / "v", split.v);
            save_grid_field(std::filesystem::path(out) / "u", split.u);
            report["residuals"] = {{"reconstruction", split.recon_residual},
                                   {"hstar_g", split.hstar_residual},
                                   {"kstar_g", split.kstar_residual},
                                   {"u_dot_y", split.u_dot_y_residual},
                                   {"g_fraction", f.max_abs() > 0.0
                                                      ? split.g.max_abs() / f.max_abs()
                                                      : 0.0}};
            report["means"] = split.input_means;
            bool pass = split.recon_residual <= tol && split.hstar_residual <= tol &&
                        split.kstar_residual <= tol && split.u_dot_y_residual <= tol;
            report["pass"] = pass;
            std::ofstream(std::filesystem::path(out) / "report.json") << report.dump(2) << "\n";
            std::cout << report.dump(2) << "\n";
            return pass ? exit_ok : exit_check_failed;
        }
        std::cerr << "decompose: input must be a sym2 or elastic2 field\n";
        return exit_usage;
    } catch (const mean_zero_error& e) {
        report["error"] = "mean-zero precondition violated";
        report["means"] = e.component_means;
        report["pass"] = false;
        std::ofstream(std::filesystem::path(out) / "report.json") << report.dump(2) << "\n";
        std::cerr << "decompose: " << e.what() << "\n" << report.dump(2) << "\n";
        return exit_usage;
    }
}

int cmd_transform(const std::string& in, const std::string& out, const std::string& which,
                  int angles, int offsets) {
    GridField f = load_grid_field(in);
    FieldSampler sampler(f);
    LineGrid lines = make_line_grid(f.grid(), angles, offsets);
    Sinogram sino;
    sino.lines = lines;
    if (which == "i0" || which == "i1" || which == "i2") {
        int q = which[1] - '0';
        sino = momentum_I(sampler, q, lines);
    } else if (which == "x1") {
        sino = elastic_X(sampler, 1, lines);
    } else if (which == "x2") {
        sino = elastic_X(sampler, 2, lines);
    } else if (which == "mixed") {
        sino = mixed_M(sampler, lines);
    } else {
        std::cerr << "transform: unknown transform '" << which << "'\n";
        return exit_usage;
    }
    save_sinogram_csv(out, sino);
    std::cout << "wrote " << sino.channels.size() << " channel(s) x " << lines.n_angles << " x "
              << lines.n_offsets << " samples to " << out << "\n";
    return exit_ok;
}

void print_report(const VerifyReport& rep) {
    for (const auto& c : rep.checks) {
        std::printf("[%s] %s/%s: measured %.3e vs %.3e  (%s)\n", c.pass ? "PASS" : "FAIL",
                    rep.suite.c_str(), c.name.c_str(), c.measured, c.tolerance, c.ref.c_str());
    }
    std::printf("%s: %s (%.2f s)\n", rep.suite.c_str(), rep.pass() ? "all checks passed" : "FAILED",
                rep.wall_time_s);
}

int cmd_verify(const std::string& suite, int n, double extent, std::uint64_t seed,
               const std::string& out, bool parallel) {
    VerifyEnv env{n, extent, seed};
    std::vector<std::string> names =
        suite == "all" ? suite_names() : std::vector<std::string>{suite};
    std::vector<VerifyReport> reports;
    if (parallel && names.size() > 1) {
        std::vector<std::future<VerifyReport>> futs;
        for (const auto& nm : names)
            futs.push_back(std::async(std::launch::async, [nm, env] { return run_suite(nm, env); }));
        for (auto& fu : futs) reports.push_back(fu.get());
    } else {
        for (const auto& nm : names) reports.push_back(run_suite(nm, env));
    }
    bool all_pass = true;
    nlohmann::json jout = nlohmann::json::array();
    for (const auto& rep : reports) {
        print_report(rep);
        jout.push_back(rep.to_json());
        all_pass = all_pass && rep.pass();
    }
    if (!out.empty()) {
        std::ofstream f(out);
        f << (jout.size() == 1 ? jout[0].dump(2) : jout.dump(2)) << "\n";
    }
    return all_pass ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ttomo: symmetric/elastic tensor-field decompositions and ray transforms on periodic "
        "2-D grids"};
    app.require_subcommand(1);

    int grid_n = 128;
    double extent = 6.0;
    std::uint64_t seed = 1;

    auto* gen = app.add_subcommand("gen", "generate a tensor field directory");
    std::string gen_kind, gen_out, gen_tensor = "sym2";
    double gen_width = 1.0, gen_rho = 0.25;
    bool gen_mean_zero = false;
    std::vector<double> gen_center, gen_weights;
    gen->add_option("--kind", gen_kind,
                    "gaussian-{scalar,vector,sym2,elastic2} | hessian | perp-hessian | "
                    "elastic-potential | random-bandlimited")
        ->required();
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--grid", grid_n, "samples per axis (power of two)");
    gen->add_option("--extent", extent, "half-extent L of the grid");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--width", gen_width, "gaussian width");
    gen->add_option("--center", gen_center, "bump center (two values)")
        ->delimiter(',')
        ->expected(0, 2);
    gen->add_option("--rho", gen_rho, "band-limit cutoff fraction in (0, 1/2]");
    gen->add_option("--tensor", gen_tensor, "tensor kind for random-bandlimited");
    gen->add_option("--weights", gen_weights, "explicit component weights for gaussian kinds")
        ->delimiter(',');
    gen->add_flag("--mean-zero", gen_mean_zero, "make component means vanish");

    auto* dec = app.add_subcommand("decompose", "split a field into potential and solenoidal parts");
    std::string dec_in, dec_out;
    double dec_tol = 1e-9, dec_mean_tol = default_mean_tol;
    dec->add_option("--in", dec_in, "input field directory")->required();
    dec->add_option("--out", dec_out, "output directory")->required();
    dec->add_option("--tol", dec_tol, "residual tolerance for exit status");
    dec->add_option("--mean-tol", dec_mean_tol, "mean-zero gate tolerance");

    auto* tra = app.add_subcommand("transform", "compute a ray-transform sinogram CSV");
    std::string tra_in, tra_out, tra_which;
    int tra_angles = 64, tra_offsets = 0;
    tra->add_option("--in", tra_in, "input field directory")->required();
    tra->add_option("--out", tra_out, "output CSV path")->required();
    tra->add_option("--transform", tra_which, "i0 | i1 | i2 | x1 | x2 | mixed")->required();
    tra->add_option("--angles", tra_angles, "number of angles");
    tra->add_option("--offsets", tra_offsets, "number of offsets (0 = grid+1)");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string ver_suite, ver_out;
    bool ver_parallel = false;
    ver->add_option("--suite", ver_suite,
                    "decomp | elastic | kernel-moments | kernel-elastic | slice | "
                    "moments-relation | equivalence | saint-venant | adjointness | all")
        ->required();
    ver->add_option("--grid", grid_n, "samples per axis (power of two)");
    ver->add_option("--extent", extent, "half-extent L of the grid");
    ver->add_option("--seed", seed, "fixture seed");
    ver->add_option("--out", ver_out, "write the report JSON here");
    ver->add_flag("--parallel", ver_parallel, "run independent suites concurrently (--suite all)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen)
            return cmd_gen(gen_kind, grid_n, extent, seed, gen_width, gen_center, gen_mean_zero,
                           gen_rho, gen_tensor, gen_weights, gen_out);
        if (*dec) return cmd_decompose(dec_in, dec_out, dec_tol, dec_mean_tol);
        if (*tra) return cmd_transform(tra_in, tra_out, tra_which, tra_angles, tra_offsets);
        if (*ver) {
            if (ver_suite != "all") {
                bool known = false;
                for (const auto& nm : suite_names()) known = known || nm == ver_suite;
                if (!known) {
                    std::cerr << "verify: unknown suite '" << ver_suite << "'\n";
                    return exit_usage;
                }
            }
            return cmd_verify(ver_suite, grid_n, extent, seed, ver_out, ver_parallel);
        }
    } catch (const decay_gate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const mean_zero_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
