#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "randsum/density.hpp"
#include "randsum/errors.hpp"
#include "randsum/parallel.hpp"
#include "randsum/quadrature.hpp"

namespace randsum {

struct RenderSpec {
    int nx = 440, ny = 440;
    enum class Scaling { Separate, Joint };
    Scaling scaling = Scaling::Separate;
    bool invert = false;  // densest pixel black instead of white

    void validate() const {
        if (nx < 16 || ny < 16)
            throw ValidationError("render: nx, ny must be >= 16");
    }
};

struct IntensityGrid {
    Window window;
    int nx = 0, ny = 0;
    std::vector<double> h_values;  // nx*ny, index iy*nx+ix, iy = 0 at ymin
    std::vector<double> g_values;  // nx columns; empty off the real axis
    BasisFamily family;

    double x_center(int ix) const {
        return window.xmin + (ix + 0.5) * window.width() / nx;
    }
    double y_center(int iy) const {
        return window.ymin + (iy + 0.5) * window.height() / ny;
    }
    // pixel row carrying the axis density
    int axis_row() const {
        int best = 0;
        for (int iy = 1; iy < ny; ++iy)
            if (std::fabs(y_center(iy)) < std::fabs(y_center(best))) best = iy;
        return best;
    }
};

// h at every pixel center (band pixels displaced to the band edge), plus g
// at the column centers when the window meets the real axis.
inline IntensityGrid compute_grid(const BasisFamily& family,
                                  const Window& window,
                                  const RenderSpec& spec = {},
                                  const AxisBand& band = {}) {
    family.validate();
    window.validate();
    spec.validate();
    IntensityGrid grid;
    grid.window = window;
    grid.nx = spec.nx;
    grid.ny = spec.ny;
    grid.family = family;
    grid.h_values.assign(static_cast<std::size_t>(spec.nx) * spec.ny, 0.0);
    parallel_for(static_cast<std::int64_t>(grid.h_values.size()),
                 [&](std::int64_t lo, std::int64_t hi) {
                     for (std::int64_t i = lo; i < hi; ++i) {
                         const int iy = static_cast<int>(i / spec.nx);
                         const int ix = static_cast<int>(i % spec.nx);
                         const Complex center{grid.x_center(ix),
                                              grid.y_center(iy)};
                         grid.h_values[i] =
                             plane_intensity_displaced(family, center, band);
                     }
                 });
    if (window.meets_real_axis()) {
        grid.g_values.assign(spec.nx, 0.0);
        parallel_for(spec.nx, [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t ix = lo; ix < hi; ++ix)
                grid.g_values[ix] =
                    line_intensity_at(family, grid.x_center(static_cast<int>(ix)));
        });
    }
    return grid;
}

namespace detail {

inline std::uint8_t gray_byte(double v, double vmin, double vmax) {
    if (!(vmax > vmin)) return 0;
    const double t = 255.0 * (v - vmin) / (vmax - vmin);
    return static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 255.0)));
}

}  // namespace detail

// Binary PGM (P5, maxval 255), top row at ymax.  Black is the smallest
// value and white the largest; with separate scaling the axis row is
// stretched over its own min/max so the one-dimensional density stays
// visible next to the plane density.
inline void write_grayscale(const IntensityGrid& grid, const RenderSpec& spec,
                            const std::string& path) {
    if (grid.nx <= 0 || grid.ny <= 0 ||
        grid.h_values.size() != static_cast<std::size_t>(grid.nx) * grid.ny)
        throw ValidationError("pgm: malformed grid");

    double hmin = grid.h_values[0], hmax = grid.h_values[0];
    for (double v : grid.h_values) {
        hmin = std::min(hmin, v);
        hmax = std::max(hmax, v);
    }
    double gmin = 0.0, gmax = 0.0;
    const bool has_axis = !grid.g_values.empty();
    if (has_axis) {
        gmin = gmax = grid.g_values[0];
        for (double v : grid.g_values) {
            gmin = std::min(gmin, v);
            gmax = std::max(gmax, v);
        }
        if (spec.scaling == RenderSpec::Scaling::Joint) {
            hmin = gmin = std::min(hmin, gmin);
            hmax = gmax = std::max(hmax, gmax);
        }
    }

    std::vector<std::uint8_t> bytes(grid.h_values.size());
    const int axis_iy = has_axis ? grid.axis_row() : -1;
    for (int iy = 0; iy < grid.ny; ++iy) {
        const int file_row = grid.ny - 1 - iy;  // top row = ymax
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double v = (iy == axis_iy && has_axis)
                                 ? grid.g_values[ix]
                                 : grid.h_values[static_cast<std::size_t>(iy) *
                                                     grid.nx +
                                                 ix];
            const double lo = (iy == axis_iy && has_axis) ? gmin : hmin;
            const double hi = (iy == axis_iy && has_axis) ? gmax : hmax;
            std::uint8_t b = detail::gray_byte(v, lo, hi);
            if (spec.invert) b = static_cast<std::uint8_t>(255 - b);
            bytes[static_cast<std::size_t>(file_row) * grid.nx + ix] = b;
        }
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("pgm: cannot open " + path);
    out << "P5\n" << grid.nx << " " << grid.ny << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("pgm: write failed for " + path);
}

// Two-column CSV with a 17-significant-digit decimal representation, which
// round-trips doubles exactly.
inline void write_csv_profile(std::span<const double> xs,
                              std::span<const double> values,
                              const std::string& path) {
    if (xs.size() != values.size())
        throw ValidationError("csv: column length mismatch");
    std::ofstream out(path);
    if (!out) throw IoError("csv: cannot open " + path);
    out << "x,g\n";
    char line[80];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", xs[i], values[i]);
        out << line;
    }
    if (!out) throw IoError("csv: write failed for " + path);
}

}  // namespace randsum
