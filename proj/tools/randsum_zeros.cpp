// randsum-zeros: intensity grids, Monte Carlo root clouds, and cross-oracle
// verification for random sums of entire basis functions with iid N(0,1)
// coefficients.
//
// Exit codes: 0 success, 1 check failure, 2 usage/config error.
// RANDSUM_THREADS caps worker threads (0 or unset = all cores).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "randsum/config.hpp"
#include "randsum/density.hpp"
#include "randsum/montecarlo.hpp"
#include "randsum/quadrature.hpp"
#include "randsum/render.hpp"
#include "randsum/rng.hpp"
#include "randsum/verify.hpp"

namespace {

using namespace randsum;
using nlohmann::json;

struct CliOverrides {
    std::string config_path;
    std::string family;
    int n = -1;
    std::int64_t trials = -1;
    std::int64_t seed = -1;
    std::string out;
    bool invert = false;
};

void attach_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--family", o.family,
                    "power|weyl|taylor|rootbinomial|cosine|mixed");
    cmd->add_option("--n", o.n, "index of the last basis term (n >= 1)");
    cmd->add_option("--trials", o.trials, "Monte Carlo trial count");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--out", o.out, "output path prefix");
    cmd->add_flag("--invert", o.invert, "render dense regions dark");
}

RunConfig load_config(const CliOverrides& o) {
    RunConfig cfg;
    bool configured = false;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw IoError("cannot open config file " + o.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config(ss.str());
        configured = true;
    }
    if (!o.family.empty() || o.n >= 0) {
        const std::string name = !o.family.empty()
                                     ? o.family
                                     : std::string(family_name(cfg.family.kind));
        const int n = o.n >= 0 ? o.n : cfg.family.n;
        if (!configured && (o.family.empty() || o.n < 0))
            throw ValidationError("give --config, or both --family and --n");
        cfg.family = make_family(name, n);
    } else if (!configured) {
        throw ValidationError("give --config, or both --family and --n");
    }
    if (o.trials >= 0) cfg.trials = o.trials;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (!o.out.empty()) cfg.output = o.out;
    if (o.invert) cfg.render.invert = true;
    return cfg;
}

json family_header(const RunConfig& cfg) {
    return {{"family", std::string(family_name(cfg.family.kind))},
            {"n", cfg.family.n}};
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed for " + path);
}

// ---------------------------------------------------------------- density

int cmd_density(const RunConfig& cfg) {
    const IntensityGrid grid =
        compute_grid(cfg.family, cfg.window, cfg.render, cfg.band);
    write_grayscale(grid, cfg.render, cfg.output + ".pgm");

    std::vector<double> xs;
    if (!grid.g_values.empty())
        for (int ix = 0; ix < grid.nx; ++ix) xs.push_back(grid.x_center(ix));
    write_csv_profile(xs, grid.g_values, cfg.output + "_g.csv");
    std::cout << "wrote " << cfg.output << ".pgm, " << cfg.output << "_g.csv";

    if (cfg.family.kind == Family::FourierCosine) {
        std::vector<double> ys(grid.ny), gy(grid.ny);
        for (int iy = 0; iy < grid.ny; ++iy) {
            ys[iy] = grid.y_center(iy);
            gy[iy] = imag_axis_intensity(cfg.family, ys[iy]);
        }
        write_csv_profile(ys, gy, cfg.output + "_g_imag.csv");
        std::cout << ", " << cfg.output << "_g_imag.csv";
    }
    std::cout << "\n";
    return 0;
}

// ----------------------------------------------------------------- sample

int cmd_sample(const RunConfig& cfg) {
    const TrialConfig tc = cfg.trial_config();
    tc.validate();
    std::vector<std::vector<Complex>> roots;
    const RootHistogram hist = run_trials(tc, &roots);

    IntensityGrid img;
    img.window = cfg.window;
    img.nx = hist.nx;
    img.ny = hist.ny;
    img.family = cfg.family;
    img.h_values.assign(hist.grid.begin(), hist.grid.end());
    if (cfg.window.meets_real_axis())
        img.g_values.assign(hist.axis_bins.begin(), hist.axis_bins.end());
    write_grayscale(img, cfg.render, cfg.output + "_hist.pgm");

    {
        std::ofstream out(cfg.output + "_roots.csv");
        if (!out) throw IoError("cannot open " + cfg.output + "_roots.csv");
        out << "re,im,trial\n";
        char line[96];
        for (std::size_t t = 0; t < roots.size(); ++t)
            for (const Complex& z : roots[t]) {
                std::snprintf(line, sizeof line, "%.17g,%.17g,%zu\n", z.real(),
                              z.imag(), t);
                out << line;
            }
        if (!out) throw IoError("write failed for " + cfg.output + "_roots.csv");
    }

    json summary = family_header(cfg);
    summary["seed"] = cfg.seed;
    summary["trials"] = cfg.trials;
    summary["trials_completed"] = hist.trials_completed;
    summary["discarded_trials"] = hist.discarded_trials;
    summary["total_roots"] = hist.total_roots;
    summary["total_real_roots"] = hist.total_real_roots;
    summary["total_imag_axis_roots"] = hist.total_imag_axis_roots;
    summary["out_of_window"] = hist.out_of_window;
    summary["mean_real_roots"] =
        static_cast<double>(hist.total_real_roots) /
        static_cast<double>(hist.trials_completed);
    write_json(summary, cfg.output + "_summary.json");

    std::cout << "wrote " << cfg.output << "_hist.pgm, " << cfg.output
              << "_roots.csv, " << cfg.output << "_summary.json\n";
    return 0;
}

// ---------------------------------------------------------------- compare

json category_json(const CategoryStats& cat) {
    return {{"qualifying", cat.qualifying},
            {"outside_3sigma", cat.outside_3sigma},
            {"max_abs_residual", cat.max_abs_residual}};
}

int cmd_compare(const RunConfig& cfg) {
    const TrialConfig tc = cfg.trial_config();
    tc.validate();
    const RootHistogram hist = run_trials(tc);
    const ComparisonReport rep = compare_histogram(hist, cfg.family, cfg.band);

    json report = family_header(cfg);
    report["trials_completed"] = hist.trials_completed;
    report["cells"] = category_json(rep.cells);
    report["axis_bins"] = category_json(rep.axis);
    report["imag_axis_bins"] = category_json(rep.imag_axis);
    report["fraction_outside_3sigma"] = rep.fraction_outside;
    report["pass"] = rep.pass;
    write_json(report, cfg.output + "_compare.json");

    std::cout << (rep.pass ? "PASS" : "FAIL") << ": "
              << 100.0 * (1.0 - rep.fraction_outside)
              << "% of qualifying bins within 3 sigma ("
              << rep.cells.qualifying + rep.axis.qualifying +
                     rep.imag_axis.qualifying
              << " bins)\n";
    return rep.pass ? 0 : 1;
}

// ----------------------------------------------------------------- verify

double uniform(SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_unit();
}

// off-axis point with decent D0/B0 and, optionally, non-negligible h
Complex sample_off_axis(SplitMix64& rng, const BasisFamily& family,
                        double min_rel, double min_pi_h) {
    const bool trig = !is_polynomial_kind(family.kind);
    const double xspan = trig ? kPi : 2.0;
    for (int tries = 0; tries < 10000; ++tries) {
        const double x = uniform(rng, -xspan, xspan);
        const double y = (rng.next_unit() < 0.5 ? -1.0 : 1.0) *
                         uniform(rng, 0.25, 1.5);
        const Complex z{x, y};
        const KernelBundle kb = kernels_at(family, z);
        if (kb.d0_rel < min_rel) continue;
        if (min_pi_h > 0.0 && kPi * plane_intensity(kb) < min_pi_h) continue;
        return z;
    }
    throw Error("verify: could not sample a usable off-axis point");
}

Complex extrapolate_to_zero(const std::array<double, 3>& eps,
                            const std::array<Complex, 3>& f) {
    Complex sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        double w = 1.0;
        for (int j = 0; j < 3; ++j)
            if (j != i) w *= eps[j] / (eps[j] - eps[i]);
        sum += w * f[i];
    }
    return sum;
}

struct CheckOutcome {
    double worst = 0.0;
    double allowed = 0.0;
    bool pass = true;
};

json outcome_json(const CheckOutcome& c, int points) {
    return {{"points", points},
            {"max_deviation", c.worst},
            {"tolerance", c.allowed},
            {"pass", c.pass}};
}

int cmd_verify(const RunConfig& cfg) {
    const BasisFamily family = cfg.family;
    SplitMix64 rng(mix64(cfg.seed ^ 0x5eedULL));
    json report = family_header(cfg);
    bool all_pass = true;

    // closed-form F against the Cholesky reconstruction
    CheckOutcome cholesky{0.0, 1e-10, true};
    for (int i = 0; i < 200; ++i) {
        const Complex z = sample_off_axis(rng, family, 1e-3, 0.0);
        const Complex closed = log_derivative_mean(kernels_at(family, z));
        const Complex oracle =
            log_derivative_mean_cholesky(build_quartet(evaluate_basis(family, z)));
        cholesky.worst = std::max(
            cholesky.worst, std::abs(closed - oracle) / std::abs(oracle));
    }
    cholesky.pass = cholesky.worst < cholesky.allowed;
    report["checks"]["cholesky_vs_closed_form"] = outcome_json(cholesky, 200);

    // pi*h against the Wirtinger finite difference of F
    CheckOutcome wirt{0.0, 1e-5, true};
    for (int i = 0; i < 100; ++i) {
        const Complex z = sample_off_axis(rng, family, 1e-2, 1e-3);
        const double pih = kPi * plane_intensity(kernels_at(family, z));
        const Complex fd = wirtinger_derivative_fd(family, z);
        wirt.worst = std::max(wirt.worst, std::abs(fd - pih) / pih);
    }
    wirt.pass = wirt.worst < wirt.allowed;
    report["checks"]["wirtinger_vs_plane_intensity"] = outcome_json(wirt, 100);

    // closed-form zbar-derivatives of the kernels
    CheckOutcome zbar{0.0, 1e-5, true};
    for (int i = 0; i < 25; ++i) {
        const Complex z = sample_off_axis(rng, family, 1e-2, 0.0);
        const ZbarDerivativeCheck chk = kernel_zbar_derivative_check(family, z);
        zbar.worst = std::max({zbar.worst, chk.b0_dev, chk.a0c_dev, chk.b1_dev,
                               chk.d0_dev});
    }
    zbar.pass = zbar.worst < zbar.allowed;
    report["checks"]["kernel_zbar_derivatives"] = outcome_json(zbar, 25);

    // contour count against the area integral on off-axis rectangles
    CheckOutcome stokes{0.0, 0.0, true};
    QuadratureSpec qspec;
    qspec.grid_nx = qspec.grid_ny = 384;
    for (int i = 0; i < 20; ++i) {
        Window w;
        w.xmin = uniform(rng, 0.1, 1.0);
        w.xmax = w.xmin + uniform(rng, 0.3, 1.0);
        w.ymin = uniform(rng, 0.25, 0.8);
        w.ymax = w.ymin + uniform(rng, 0.3, 0.8);
        const double contour =
            expected_zeros_contour(family, w, qspec, cfg.band).count;
        const double area = expected_zeros_area(family, w, qspec, cfg.band);
        const double allowed = std::max(1e-4, 1e-3 * std::fabs(area));
        const double dev = std::fabs(contour - area);
        if (dev > allowed) stokes.pass = false;
        stokes.worst = std::max(stokes.worst, dev);
        stokes.allowed = std::max(stokes.allowed, allowed);
    }
    report["checks"]["stokes_consistency"] = outcome_json(stokes, 20);

    // one-sided limits of F across the axis, extrapolated over three decades
    CheckOutcome jump{0.0, 1e-6, true};
    const std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
    for (int i = 0; i < 50; ++i) {
        double a = uniform(rng, 0.1, 2.0);
        if (i % 2 == 1) a = -a;  // both signs: the limits carry no sgn(a)
        const KernelBundle kb = kernels_at(family, Complex{a, 0.0});
        const JumpLimits lim = log_derivative_jump(kb);
        std::array<Complex, 3> above, below;
        for (int k = 0; k < 3; ++k) {
            above[k] = log_derivative_mean(
                kernels_at(family, Complex{a, eps[k]}), cfg.band);
            below[k] = log_derivative_mean(
                kernels_at(family, Complex{a, -eps[k]}), cfg.band);
        }
        const Complex up = extrapolate_to_zero(eps, above);
        const Complex dn = extrapolate_to_zero(eps, below);
        const double dev =
            std::max(std::abs(up - lim.upper) /
                         std::max(1.0, std::abs(lim.upper)),
                     std::abs(dn - lim.lower) /
                         std::max(1.0, std::abs(lim.lower)));
        jump.worst = std::max(jump.worst, dev);
    }
    jump.pass = jump.worst < jump.allowed;
    report["checks"]["jump_extrapolation"] = outcome_json(jump, 50);

    all_pass = cholesky.pass && wirt.pass && zbar.pass && stokes.pass &&
               jump.pass;
    report["pass"] = all_pass;
    write_json(report, cfg.output + "_verify.json");

    for (const auto& item : report["checks"].items())
        std::cout << (item.value()["pass"].get<bool>() ? "PASS" : "FAIL")
                  << ": " << item.key()
                  << " (max deviation " << item.value()["max_deviation"].get<double>()
                  << ")\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "intensity grids, Monte Carlo root clouds, and verification sweeps "
        "for zeros of random sums"};
    app.require_subcommand(1);

    CliOverrides o;
    CLI::App* density = app.add_subcommand(
        "density", "write the grey-scale intensity image and axis profiles");
    CLI::App* sample = app.add_subcommand(
        "sample", "sample random sums and histogram their roots");
    CLI::App* compare = app.add_subcommand(
        "compare", "test the root histogram against the analytic densities");
    CLI::App* verify =
        app.add_subcommand("verify", "run the cross-oracle sweeps");
    for (CLI::App* cmd : {density, sample, compare, verify})
        attach_options(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunConfig cfg;
    try {
        cfg = load_config(o);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (density->parsed()) return cmd_density(cfg);
        if (sample->parsed()) return cmd_sample(cfg);
        if (compare->parsed()) return cmd_compare(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const TooFewTrials& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
