#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "randsum/basis.hpp"
#include "randsum/errors.hpp"
#include "randsum/numeric.hpp"

namespace randsum {

// The eight pointwise sums the density formulas are built from:
//
//   A0 = sum f_j^2        B0 = sum |f_j|^2
//   A1 = sum f_j f_j'     B1 = sum conj(f_j) f_j'
//   A2 = sum f_j'^2       B2 = sum |f_j'|^2
//   D0 = sqrt(B0^2 - |A0|^2)
//   E1^2 = A2 A0 - A1^2   (kept unrooted; the root only exists on the axis)
//
// All sums are taken over a uniformly rescaled copy of the eval vector
// (values/scale, derivs/scale).  Every downstream density is invariant
// under that rescaling, and it tames e^{|z|^2}-type growth.
struct KernelBundle {
    Complex A0{}, A1{}, A2{};
    Complex B1{};
    double B0 = 0.0, B2 = 0.0;
    double D0 = 0.0;
    double d0_rel = 0.0;  // D0 / B0
    Complex E1_sq{};
    double scale = 1.0;
};

inline KernelBundle compute_kernels(const EvalVector& ev) {
    if (ev.values.empty()) throw AllZero("kernels: empty eval vector");

    double scale = 0.0;
    for (const Complex& v : ev.values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw AllZero("kernels: every basis value is zero");
    scale = std::max(scale, std::numeric_limits<double>::min());
    const double inv = 1.0 / scale;

    KahanComplexSum a0, a1, a2, b1;
    KahanSum b0, b2;
    for (std::size_t j = 0; j < ev.values.size(); ++j) {
        const Complex v = ev.values[j] * inv;
        const Complex d = ev.derivs[j] * inv;
        a0.add(v * v);
        b0.add(std::norm(v));
        a1.add(v * d);
        b1.add(std::conj(v) * d);
        a2.add(d * d);
        b2.add(std::norm(d));
    }

    KernelBundle kb;
    kb.A0 = a0.value();
    kb.B0 = b0.value();
    kb.A1 = a1.value();
    kb.B1 = b1.value();
    kb.A2 = a2.value();
    kb.B2 = b2.value();
    kb.scale = scale;
    // B0^2 - |A0|^2 >= 0 by Cauchy-Schwarz; roundoff can push it barely
    // negative, and near the axis the subtraction cancels catastrophically.
    kb.D0 = std::sqrt(std::max(0.0, kb.B0 * kb.B0 - std::norm(kb.A0)));
    kb.d0_rel = kb.D0 / kb.B0;
    kb.E1_sq = kb.A2 * kb.A0 - kb.A1 * kb.A1;
    return kb;
}

// Positive root of E1^2, licensed only where the radicand is real (the real
// axis, or the rotated systems that map an axis onto it).
inline double e1_real(const KernelBundle& kb) {
    const double mag = std::abs(kb.E1_sq);
    if (std::fabs(kb.E1_sq.imag()) > 1e-8 * mag)
        throw NotOnAxis("e1_real: E1^2 has a non-real residue; point is off axis");
    return std::sqrt(std::max(0.0, kb.E1_sq.real()));
}

inline KernelBundle kernels_at(const BasisFamily& family, Complex z) {
    return compute_kernels(evaluate_basis(family, z));
}

}  // namespace randsum
