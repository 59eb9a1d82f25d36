#pragma once

#include <cmath>
#include <utility>

#include "randsum/errors.hpp"
#include "randsum/kernels.hpp"

namespace randsum {

// Numerical stand-in for the exact vanishing set of D0: a point counts as
// on-axis when D0/B0 drops below rel_threshold.  The default keeps roughly
// half the mantissa for the cancellation-prone D0^3 denominator.
struct AxisBand {
    double rel_threshold = 1e-8;

    void validate() const {
        if (!(rel_threshold > 0.0 && rel_threshold < 1e-3))
            throw ValidationError("axis band: threshold must be in (0, 1e-3)");
    }
};

// Expected zeros per unit area at a point off the vanishing set:
//
//   h = [B2 D0^2 - B0(|B1|^2 + |A1|^2) + 2 Re(A0 B1 conj(A1))] / (pi D0^3)
//
// The last numerator pair is a value plus its conjugate, so it is computed
// as a real from the start.
inline double plane_intensity(const KernelBundle& kb, const AxisBand& band = {}) {
    if (kb.d0_rel < band.rel_threshold)
        throw OnVanishingSet("plane_intensity: D0/B0 below the axis band");
    const double num = kb.B2 * kb.D0 * kb.D0 -
                       kb.B0 * (std::norm(kb.B1) + std::norm(kb.A1)) +
                       2.0 * (kb.A0 * kb.B1 * std::conj(kb.A1)).real();
    const double cube = kPi * kb.D0 * kb.D0 * kb.D0;
    double h = num / cube;
    if (h < 0.0) {
        // Roundoff scale of the cancellation: the numerator terms may dwarf
        // the result (h == 0 identically for degree-1 sums), so the clamp
        // tracks their magnitude as well as the nominal B2/D0 scale.
        const double term_scale =
            kb.B2 * kb.D0 * kb.D0 +
            kb.B0 * (std::norm(kb.B1) + std::norm(kb.A1)) +
            2.0 * std::abs(kb.A0) * std::abs(kb.B1) * std::abs(kb.A1);
        const double clamp =
            1e-12 * std::max(kb.B2 / kb.D0, term_scale / cube);
        if (h > -clamp) return 0.0;
        throw NumericalInconsistency("plane_intensity: negative beyond roundoff");
    }
    return h;
}

// Expected zeros per unit length on the real line: g = E1 / (pi B0).
inline double line_intensity(const KernelBundle& kb) {
    return e1_real(kb) / (kPi * kb.B0);
}

// Cosine-family density on the imaginary axis.  The rotated system
// f~_j(t) = f_j(it) = cosh(jt) is real on the real line again, so the line
// density applies verbatim to it; only this family admits the rotation.
inline double imag_axis_intensity(const BasisFamily& family, double y) {
    family.validate();
    if (family.kind != Family::FourierCosine)
        throw UnsupportedFamily(
            "imag_axis_intensity: only the cosine family is real on the "
            "imaginary axis");
    const int count = family.term_count();
    EvalVector ev;
    ev.point = Complex{y, 0.0};
    ev.values.assign(count, Complex{});
    ev.derivs.assign(count, Complex{});
    ev.values[0] = 1.0;
    for (int j = 1; j < count; ++j) {
        ev.values[j] = std::cosh(j * y);
        ev.derivs[j] = j * std::sinh(j * y);
    }
    return line_intensity(compute_kernels(ev));
}

// F(z) = E[P'/P], the mean logarithmic derivative, off the vanishing set:
//
//   F = (B1 D0 + B0 B1 - conj(A0) A1) / (B0 D0 + B0^2 - |A0|^2)
//
// The expanded denominator is preferred; it avoids a multiplication order
// that amplifies cancellation when D0 << B0.
inline Complex log_derivative_mean(const KernelBundle& kb, const AxisBand& band = {}) {
    if (kb.d0_rel < band.rel_threshold)
        throw OnVanishingSet("log_derivative_mean: D0/B0 below the axis band");
    const Complex num =
        kb.B1 * kb.D0 + kb.B0 * kb.B1 - std::conj(kb.A0) * kb.A1;
    const double den = kb.B0 * kb.D0 + kb.B0 * kb.B0 - std::norm(kb.A0);
    return num / den;
}

// One-sided limits of F across a real point:
//   from above:  (B1 - i E1) / B0
//   from below:  (B1 + i E1) / B0
// Their difference over 2*pi*i is the real-line density.
struct JumpLimits {
    Complex upper;
    Complex lower;
};

inline JumpLimits log_derivative_jump(const KernelBundle& kb) {
    const double e1 = e1_real(kb);
    const Complex i_e1{0.0, e1};
    return {(kb.B1 - i_e1) / kb.B0, (kb.B1 + i_e1) / kb.B0};
}

inline double plane_intensity_at(const BasisFamily& family, Complex z,
                                 const AxisBand& band = {}) {
    return plane_intensity(kernels_at(family, z), band);
}

inline double line_intensity_at(const BasisFamily& family, double x) {
    return line_intensity(kernels_at(family, Complex{x, 0.0}));
}

// Nearest usable evaluation point for h when z falls inside the axis band.
// h extends continuously to the band edge, so displacing (rather than
// skipping) keeps area sums unbiased.  Displacement is tried along y first;
// if the vanishing set is vertical there (the cosine family's imaginary
// axis) it is tried along x.
inline Complex band_edge_point(const BasisFamily& family, Complex z,
                               const AxisBand& band = {}) {
    const auto off_band = [&](Complex p) {
        return kernels_at(family, p).d0_rel >= band.rel_threshold;
    };
    if (off_band(z)) return z;

    // Linear model near the axis: D0/B0 ~ (2 E1 / B0) |y|.
    const KernelBundle axis = kernels_at(family, Complex{z.real(), 0.0});
    double est = band.rel_threshold;
    try {
        const double e1 = e1_real(axis);
        if (e1 > 0.0) est = band.rel_threshold * axis.B0 / (2.0 * e1);
    } catch (const NotOnAxis&) {
    }

    const double reach = 4.0 * (1.0 + std::abs(z));
    const double ysign = (z.imag() >= 0.0) ? 1.0 : -1.0;
    for (double y = std::max(std::fabs(z.imag()), est); y <= reach; y *= 2.0) {
        const Complex p{z.real(), ysign * y};
        if (off_band(p)) return p;
    }
    const double xsign = (z.real() >= 0.0) ? 1.0 : -1.0;
    for (double x = std::max(std::fabs(z.real()), est); x <= reach; x *= 2.0) {
        const Complex p{xsign * x, z.imag()};
        if (off_band(p)) return p;
    }
    throw NumericalInconsistency(
        "band_edge_point: could not leave the axis band");
}

// h at z, or at the displaced band-edge point when z is inside the band.
inline double plane_intensity_displaced(const BasisFamily& family, Complex z,
                                        const AxisBand& band = {}) {
    const KernelBundle kb = kernels_at(family, z);
    if (kb.d0_rel >= band.rel_threshold) return plane_intensity(kb, band);
    const Complex p = band_edge_point(family, z, band);
    return plane_intensity(kernels_at(family, p), band);
}

}  // namespace randsum
