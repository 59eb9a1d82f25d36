#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "randsum/density.hpp"
#include "randsum/errors.hpp"
#include "randsum/numeric.hpp"
#include "randsum/parallel.hpp"

namespace randsum {

struct Window {
    double xmin = -2.0, xmax = 2.0;
    double ymin = -2.0, ymax = 2.0;

    void validate() const {
        if (!(xmin < xmax) || !(ymin < ymax) || !std::isfinite(xmin) ||
            !std::isfinite(xmax) || !std::isfinite(ymin) || !std::isfinite(ymax))
            throw ValidationError("window: need finite xmin < xmax, ymin < ymax");
    }
    bool meets_real_axis() const { return ymin <= 0.0 && ymax >= 0.0; }
    bool straddles_real_axis() const { return ymin < 0.0 && ymax > 0.0; }
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

struct QuadratureSpec {
    int nodes_per_side = 16;  // composite Gauss-Legendre panels per contour side
    int grid_nx = 256;        // midpoint-rule cells for the area integral
    int grid_ny = 256;
    int axis_nodes = 512;     // total Gauss-Legendre nodes for the line integral

    void validate() const {
        if (nodes_per_side < 8)
            throw ValidationError("quadrature: nodes_per_side must be >= 8");
        if (grid_nx < 32 || grid_ny < 32)
            throw ValidationError("quadrature: grid_nx, grid_ny must be >= 32");
        if (axis_nodes < 64)
            throw ValidationError("quadrature: axis_nodes must be >= 64");
    }
};

// Composite 16-point Gauss-Legendre integral of g over [x0, x1].
inline double integrate_line_intensity(const BasisFamily& family, double x0,
                                       double x1, int total_nodes = 512) {
    constexpr int kOrder = 16;
    const int panels = std::max(1, (total_nodes + kOrder - 1) / kOrder);
    const GaussLegendre rule = gauss_legendre(kOrder);
    std::vector<double> vals(static_cast<std::size_t>(panels) * kOrder);
    const double h = (x1 - x0) / panels;
    parallel_for(static_cast<std::int64_t>(vals.size()), [&](std::int64_t lo,
                                                             std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const int p = static_cast<int>(i / kOrder);
            const int k = static_cast<int>(i % kOrder);
            const double x =
                x0 + h * (p + 0.5 + 0.5 * rule.nodes[k]);
            vals[i] = 0.5 * h * rule.weights[k] * line_intensity_at(family, x);
        }
    });
    return pairwise_sum(std::span<const double>(vals));
}

struct ContourCount {
    double count = 0.0;         // (1/2*pi*i) times the loop integral of F
    double imag_residue = 0.0;  // should be ~0; reported, not hidden
};

// Expected zero count of the window by the argument principle.  The
// rectangle is traversed counterclockwise; vertical sides of a straddling
// window are split at y = 0 so no panel spans the jump of F, and the open
// Gauss-Legendre rule keeps every node strictly off the axis.
inline ContourCount expected_zeros_contour(const BasisFamily& family,
                                           const Window& window,
                                           const QuadratureSpec& spec = {},
                                           const AxisBand& band = {}) {
    family.validate();
    window.validate();
    spec.validate();
    band.validate();

    struct Segment {
        Complex from, to;
        bool horizontal;
    };
    std::vector<Segment> segs;
    const Complex bl{window.xmin, window.ymin}, br{window.xmax, window.ymin};
    const Complex tr{window.xmax, window.ymax}, tl{window.xmin, window.ymax};
    segs.push_back({bl, br, true});
    if (window.straddles_real_axis()) {
        segs.push_back({br, Complex{window.xmax, 0.0}, false});
        segs.push_back({Complex{window.xmax, 0.0}, tr, false});
    } else {
        segs.push_back({br, tr, false});
    }
    segs.push_back({tr, tl, true});
    if (window.straddles_real_axis()) {
        segs.push_back({tl, Complex{window.xmin, 0.0}, false});
        segs.push_back({Complex{window.xmin, 0.0}, bl, false});
    } else {
        segs.push_back({tl, bl, false});
    }

    constexpr int kOrder = 16;
    const int panels = spec.nodes_per_side;
    const GaussLegendre rule = gauss_legendre(kOrder);
    const std::int64_t per_seg = static_cast<std::int64_t>(panels) * kOrder;
    std::vector<Complex> contrib(segs.size() * per_seg);

    parallel_for(static_cast<std::int64_t>(contrib.size()),
                 [&](std::int64_t lo, std::int64_t hi) {
                     for (std::int64_t i = lo; i < hi; ++i) {
                         const auto& seg = segs[i / per_seg];
                         const std::int64_t rest = i % per_seg;
                         const int p = static_cast<int>(rest / kOrder);
                         const int k = static_cast<int>(rest % kOrder);
                         const double t =
                             (p + 0.5 + 0.5 * rule.nodes[k]) / panels;
                         const Complex z = seg.from + t * (seg.to - seg.from);
                         Complex f;
                         try {
                             f = log_derivative_mean(kernels_at(family, z), band);
                         } catch (const OnVanishingSet&) {
                             if (seg.horizontal)
                                 throw ContourTooCloseToAxis(
                                     "contour: horizontal side inside the axis band");
                             throw;
                         }
                         contrib[i] = (0.5 * rule.weights[k] / panels) *
                                      (seg.to - seg.from) * f;
                     }
                 });

    const Complex integral = pairwise_sum(std::span<const Complex>(contrib));
    // division by 2*pi*i: the count is Im(I)/(2*pi)
    return {integral.imag() / (2.0 * kPi), -integral.real() / (2.0 * kPi)};
}

// Expected zero count of the window as the midpoint-rule area integral of h
// (axis-band cells displaced to the band edge, never skipped) plus, when
// the window meets the real axis, the line integral of g across it.
inline double expected_zeros_area(const BasisFamily& family,
                                  const Window& window,
                                  const QuadratureSpec& spec = {},
                                  const AxisBand& band = {}) {
    family.validate();
    window.validate();
    spec.validate();
    band.validate();

    const int nx = spec.grid_nx, ny = spec.grid_ny;
    const double dx = window.width() / nx;
    const double dy = window.height() / ny;
    std::vector<double> cells(static_cast<std::size_t>(nx) * ny);
    parallel_for(static_cast<std::int64_t>(cells.size()),
                 [&](std::int64_t lo, std::int64_t hi) {
                     for (std::int64_t i = lo; i < hi; ++i) {
                         const int iy = static_cast<int>(i / nx);
                         const int ix = static_cast<int>(i % nx);
                         const Complex center{window.xmin + (ix + 0.5) * dx,
                                              window.ymin + (iy + 0.5) * dy};
                         cells[i] = plane_intensity_displaced(family, center, band);
                     }
                 });
    double total = pairwise_sum(std::span<const double>(cells)) * dx * dy;
    if (window.meets_real_axis())
        total += integrate_line_intensity(family, window.xmin, window.xmax,
                                          spec.axis_nodes);
    return total;
}

}  // namespace randsum
