#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "randsum/density.hpp"
#include "randsum/errors.hpp"
#include "randsum/parallel.hpp"
#include "randsum/quadrature.hpp"
#include "randsum/rng.hpp"
#include "randsum/roots.hpp"

namespace randsum {

struct TrialConfig {
    BasisFamily family;
    std::int64_t trials = 1;
    std::uint64_t seed = 1;
    Window window;
    int nx = 440, ny = 440;
    double real_tol = 1e-8;  // |Im z| < real_tol * max(1,|z|) means real

    void validate() const {
        family.validate();
        window.validate();
        if (trials < 1) throw ValidationError("trials must be >= 1");
        if (nx < 1 || ny < 1) throw ValidationError("histogram needs nx, ny >= 1");
        if (!(real_tol > 0.0)) throw ValidationError("real_tol must be positive");
    }
};

// Binned roots of many sampled sums.  Real roots are pulled out of the grid
// into axis_bins; for the cosine family, imaginary-axis roots get the same
// treatment, since both carry one-dimensional mass the plane density does
// not describe.
struct RootHistogram {
    Window window;
    int nx = 0, ny = 0;
    std::vector<std::int64_t> grid;            // nx*ny, index iy*nx+ix
    std::vector<std::int64_t> axis_bins;       // nx over [xmin, xmax]
    std::vector<std::int64_t> imag_axis_bins;  // ny over [ymin, ymax]
    std::int64_t total_roots = 0;
    std::int64_t total_real_roots = 0;
    std::int64_t total_imag_axis_roots = 0;
    std::int64_t out_of_window = 0;
    std::int64_t trials_completed = 0;
    std::int64_t discarded_trials = 0;

    void init(const Window& w, int nx_, int ny_) {
        window = w;
        nx = nx_;
        ny = ny_;
        grid.assign(static_cast<std::size_t>(nx) * ny, 0);
        axis_bins.assign(nx, 0);
        imag_axis_bins.assign(ny, 0);
    }

    void merge(const RootHistogram& o) {
        for (std::size_t i = 0; i < grid.size(); ++i) grid[i] += o.grid[i];
        for (std::size_t i = 0; i < axis_bins.size(); ++i)
            axis_bins[i] += o.axis_bins[i];
        for (std::size_t i = 0; i < imag_axis_bins.size(); ++i)
            imag_axis_bins[i] += o.imag_axis_bins[i];
        total_roots += o.total_roots;
        total_real_roots += o.total_real_roots;
        total_imag_axis_roots += o.total_imag_axis_roots;
        out_of_window += o.out_of_window;
        trials_completed += o.trials_completed;
        discarded_trials += o.discarded_trials;
    }
};

inline std::vector<double> sample_coefficients(int n, NormalSampler& rng) {
    std::vector<double> eta(n + 1);
    for (double& e : eta) e = rng.next();
    return eta;
}

namespace detail {

inline int bin_index(double v, double lo, double hi, int bins) {
    const int i = static_cast<int>((v - lo) / (hi - lo) * bins);
    return std::clamp(i, 0, bins - 1);
}

inline void tally_roots(const TrialConfig& cfg, const std::vector<Complex>& roots,
                        RootHistogram& hist) {
    const bool cosine = cfg.family.kind == Family::FourierCosine;
    hist.total_roots += static_cast<std::int64_t>(roots.size());
    for (const Complex& z : roots) {
        const double size = std::max(1.0, std::abs(z));
        if (std::fabs(z.imag()) < cfg.real_tol * size) {
            ++hist.total_real_roots;
            if (z.real() >= cfg.window.xmin && z.real() <= cfg.window.xmax)
                ++hist.axis_bins[bin_index(z.real(), cfg.window.xmin,
                                           cfg.window.xmax, cfg.nx)];
        } else if (cosine && std::fabs(z.real()) < cfg.real_tol * size) {
            ++hist.total_imag_axis_roots;
            if (z.imag() >= cfg.window.ymin && z.imag() <= cfg.window.ymax)
                ++hist.imag_axis_bins[bin_index(z.imag(), cfg.window.ymin,
                                                cfg.window.ymax, cfg.ny)];
            else
                ++hist.out_of_window;
        } else if (z.real() >= cfg.window.xmin && z.real() <= cfg.window.xmax &&
                   z.imag() >= cfg.window.ymin && z.imag() <= cfg.window.ymax) {
            const int ix = bin_index(z.real(), cfg.window.xmin, cfg.window.xmax,
                                     cfg.nx);
            const int iy = bin_index(z.imag(), cfg.window.ymin, cfg.window.ymax,
                                     cfg.ny);
            ++hist.grid[static_cast<std::size_t>(iy) * cfg.nx + ix];
        } else {
            ++hist.out_of_window;
        }
    }
}

}  // namespace detail

// Samples `trials` random sums, finds their zeros, and bins them.  Trial t
// draws from substream_seed(seed, t), so the histogram is bit-identical for
// any worker count; histograms are merged, never contended.  Trials whose
// root iteration fails are discarded and counted.
inline RootHistogram run_trials(const TrialConfig& cfg,
                                std::vector<std::vector<Complex>>* roots_out =
                                    nullptr) {
    cfg.validate();
    const bool polynomial = is_polynomial_kind(cfg.family.kind);
    const std::vector<double> pref =
        polynomial ? polynomial_prefactors(cfg.family) : std::vector<double>{};
    if (roots_out) roots_out->assign(cfg.trials, {});

    const int workers = static_cast<int>(
        std::min<std::int64_t>(thread_count(), cfg.trials));
    const std::int64_t chunk = (cfg.trials + workers - 1) / workers;
    const std::int64_t nchunks = (cfg.trials + chunk - 1) / chunk;

    std::vector<RootHistogram> parts(nchunks);
    parallel_for(nchunks, [&](std::int64_t clo, std::int64_t chi) {
        for (std::int64_t c = clo; c < chi; ++c) {
            RootHistogram& hist = parts[c];
            hist.init(cfg.window, cfg.nx, cfg.ny);
            const std::int64_t t0 = c * chunk;
            const std::int64_t t1 = std::min(cfg.trials, t0 + chunk);
            for (std::int64_t t = t0; t < t1; ++t) {
                NormalSampler rng(substream_seed(cfg.seed, t));
                const std::vector<double> eta =
                    sample_coefficients(cfg.family.n, rng);
                std::vector<Complex> roots;
                try {
                    if (polynomial) {
                        std::vector<Complex> coeffs(eta.size());
                        for (std::size_t j = 0; j < eta.size(); ++j)
                            coeffs[j] = eta[j] * pref[j];
                        roots = polynomial_roots(std::move(coeffs));
                    } else {
                        roots = trig_roots(cfg.family, eta, cfg.window);
                    }
                } catch (const NoConvergence&) {
                    ++hist.discarded_trials;
                    continue;
                }
                ++hist.trials_completed;
                detail::tally_roots(cfg, roots, hist);
                if (roots_out) (*roots_out)[t] = std::move(roots);
            }
        }
    });

    RootHistogram hist;
    hist.init(cfg.window, cfg.nx, cfg.ny);
    for (const RootHistogram& p : parts) hist.merge(p);
    if (hist.discarded_trials * 1000 > cfg.trials)
        throw UnstableFamily("run_trials: more than 0.1% of trials discarded");
    return hist;
}

struct CategoryStats {
    std::int64_t qualifying = 0;
    std::int64_t outside_3sigma = 0;
    double max_abs_residual = 0.0;
};

struct ComparisonReport {
    CategoryStats cells;      // grid cells against h
    CategoryStats axis;       // axis bins against g
    CategoryStats imag_axis;  // imaginary-axis bins against the rotated g
    double fraction_outside = 0.0;  // pooled over all qualifying bins
    bool pass = false;
};

// Standardized residuals (observed - expected)/sqrt(expected) for every bin
// whose expected count reaches `min_expected`.  Expected counts come from
// the analytic densities; the histogram passes when at least 98.5% of the
// qualifying bins sit within 3 sigma.
inline ComparisonReport compare_histogram(const RootHistogram& hist,
                                          const BasisFamily& family,
                                          const AxisBand& band = {},
                                          double min_expected = 20.0) {
    family.validate();
    if (hist.nx <= 0 || hist.ny <= 0 || hist.trials_completed <= 0)
        throw TooFewTrials("compare: empty histogram");
    const double trials = static_cast<double>(hist.trials_completed);
    const double dx = hist.window.width() / hist.nx;
    const double dy = hist.window.height() / hist.ny;

    ComparisonReport report;
    const auto tally = [](CategoryStats& cat, double expected, double observed,
                          double min_exp) {
        if (expected < min_exp) return;
        ++cat.qualifying;
        const double resid = (observed - expected) / std::sqrt(expected);
        cat.max_abs_residual = std::max(cat.max_abs_residual, std::fabs(resid));
        if (std::fabs(resid) > 3.0) ++cat.outside_3sigma;
    };

    // grid cells against the plane density
    std::vector<double> expected(hist.grid.size());
    parallel_for(static_cast<std::int64_t>(expected.size()),
                 [&](std::int64_t lo, std::int64_t hi) {
                     for (std::int64_t i = lo; i < hi; ++i) {
                         const int iy = static_cast<int>(i / hist.nx);
                         const int ix = static_cast<int>(i % hist.nx);
                         const Complex center{
                             hist.window.xmin + (ix + 0.5) * dx,
                             hist.window.ymin + (iy + 0.5) * dy};
                         expected[i] = trials * dx * dy *
                                       plane_intensity_displaced(family, center,
                                                                 band);
                     }
                 });
    for (std::size_t i = 0; i < hist.grid.size(); ++i)
        tally(report.cells, expected[i], static_cast<double>(hist.grid[i]),
              min_expected);

    // axis bins against the line density (3-point rule per bin)
    if (hist.window.meets_real_axis()) {
        const GaussLegendre rule = gauss_legendre(3);
        for (int ix = 0; ix < hist.nx; ++ix) {
            const double x0 = hist.window.xmin + ix * dx;
            double mass = 0.0;
            for (int k = 0; k < 3; ++k)
                mass += 0.5 * dx * rule.weights[k] *
                        line_intensity_at(
                            family, x0 + 0.5 * dx * (1.0 + rule.nodes[k]));
            tally(report.axis, trials * mass,
                  static_cast<double>(hist.axis_bins[ix]), min_expected);
        }
    }

    // imaginary-axis bins (cosine family only)
    if (family.kind == Family::FourierCosine &&
        hist.window.xmin <= 0.0 && hist.window.xmax >= 0.0) {
        const GaussLegendre rule = gauss_legendre(3);
        for (int iy = 0; iy < hist.ny; ++iy) {
            const double y0 = hist.window.ymin + iy * dy;
            double mass = 0.0;
            for (int k = 0; k < 3; ++k)
                mass += 0.5 * dy * rule.weights[k] *
                        imag_axis_intensity(
                            family, y0 + 0.5 * dy * (1.0 + rule.nodes[k]));
            tally(report.imag_axis, trials * mass,
                  static_cast<double>(hist.imag_axis_bins[iy]), min_expected);
        }
    }

    const std::int64_t qualifying = report.cells.qualifying +
                                    report.axis.qualifying +
                                    report.imag_axis.qualifying;
    if (qualifying == 0)
        throw TooFewTrials("compare: no bin reaches the expected-count floor");
    const std::int64_t outside = report.cells.outside_3sigma +
                                 report.axis.outside_3sigma +
                                 report.imag_axis.outside_3sigma;
    report.fraction_outside =
        static_cast<double>(outside) / static_cast<double>(qualifying);
    report.pass = report.fraction_outside <= 0.015;
    return report;
}

}  // namespace randsum
