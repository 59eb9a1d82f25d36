#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "randsum/density.hpp"
#include "randsum/errors.hpp"
#include "randsum/kernels.hpp"

namespace randsum {

// The four real Gaussian coordinates of (P, P') at a point:
//   xi = (Re P, Im P, Re P', Im P') = (a.eta, b.eta, c.eta, d.eta)
// with coefficient vectors a_j = Re f_j, b_j = Im f_j, c_j = Re f_j',
// d_j = Im f_j'.  Their covariance is the Gram matrix of (a, b, c, d), and
// its Cholesky factor expresses xi through four independent standard
// normals.  F is reconstructed from that factor alone, never touching the
// closed-form kernel route, which is what makes this an oracle.
struct GaussianQuartet {
    std::vector<double> a, b, c, d;
    std::array<std::array<double, 4>, 4> cov{};
    std::array<std::array<double, 4>, 4> L{};
    double scale = 1.0;
};

inline GaussianQuartet build_quartet(const EvalVector& ev) {
    if (ev.values.empty()) throw AllZero("quartet: empty eval vector");
    double scale = 0.0;
    for (const Complex& v : ev.values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw AllZero("quartet: every basis value is zero");
    const double inv = 1.0 / scale;

    GaussianQuartet gq;
    gq.scale = scale;
    const std::size_t count = ev.values.size();
    gq.a.resize(count);
    gq.b.resize(count);
    gq.c.resize(count);
    gq.d.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        gq.a[j] = ev.values[j].real() * inv;
        gq.b[j] = ev.values[j].imag() * inv;
        gq.c[j] = ev.derivs[j].real() * inv;
        gq.d[j] = ev.derivs[j].imag() * inv;
    }

    const std::array<const std::vector<double>*, 4> rows{&gq.a, &gq.b, &gq.c,
                                                         &gq.d};
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s <= r; ++s) {
            KahanSum dot;
            for (std::size_t j = 0; j < count; ++j)
                dot.add((*rows[r])[j] * (*rows[s])[j]);
            gq.cov[r][s] = gq.cov[s][r] = dot.value();
        }

    const double trace =
        gq.cov[0][0] + gq.cov[1][1] + gq.cov[2][2] + gq.cov[3][3];
    const double pivot_tol = 1e-14 * trace;
    for (int i = 0; i < 4; ++i) {
        double s = gq.cov[i][i];
        for (int k = 0; k < i; ++k) s -= gq.L[i][k] * gq.L[i][k];
        if (s <= pivot_tol) {
            // positive semidefinite completion: zero pivot, zero column
            gq.L[i][i] = 0.0;
            continue;
        }
        gq.L[i][i] = std::sqrt(s);
        for (int r = i + 1; r < 4; ++r) {
            double t = gq.cov[r][i];
            for (int k = 0; k < i; ++k) t -= gq.L[r][k] * gq.L[i][k];
            gq.L[r][i] = t / gq.L[i][i];
        }
    }
    return gq;
}

// F from the Cholesky factor:
//   F = (l32 - l41 + i(l31 + l42)) / (-l21 + i(l11 + l22))
// Valid off the real axis, where the first two pivots are strictly positive.
inline Complex log_derivative_mean_cholesky(const GaussianQuartet& gq) {
    if (gq.L[0][0] <= 0.0 || gq.L[1][1] <= 0.0)
        throw SingularPivot("cholesky oracle: pivot vanished (on-axis point?)");
    const Complex num{gq.L[2][1] - gq.L[3][0], gq.L[2][0] + gq.L[3][1]};
    const Complex den{-gq.L[1][0], gq.L[0][0] + gq.L[1][1]};
    return num / den;
}

// dF/dzbar by central differences with the Wirtinger convention
// d/dzbar = (d/dx + i d/dy)/2.  Certifies pi*h = dF/dzbar numerically.
inline Complex wirtinger_derivative_fd(const BasisFamily& family, Complex z,
                                       double step = 0.0,
                                       const AxisBand& band = {}) {
    if (step <= 0.0) step = 1e-5 * std::max(1.0, std::abs(z));
    const auto F = [&](Complex p) {
        return log_derivative_mean(kernels_at(family, p), band);
    };
    const Complex dfdx = (F(z + step) - F(z - step)) / (2.0 * step);
    const Complex dfdy =
        (F(z + Complex{0.0, step}) - F(z - Complex{0.0, step})) / (2.0 * step);
    return 0.5 * (dfdx + Complex{0.0, 1.0} * dfdy);
}

// Kernels as functions of independent (u, v), with v standing in for
// conj(z); conj(f_j(z)) = f_j(conj z) makes every kernel a polynomial in
// basis values at u and v:
//   B0 = sum f(u) f(v)        conj(A0) = sum f(v)^2
//   B1 = sum f(v) f'(u)       conj(B1) = sum f(u) f'(v)
//   B2 = sum f'(u) f'(v)      conj(A1) = sum f(v) f'(v)
// At v = conj(z) these agree with the ordinary kernels; differentiating in
// v realizes d/dzbar as an ordinary directional difference.
struct PairKernels {
    Complex B0{}, A0{}, A0c{}, A1{}, A1c{}, B1{}, B1c{}, B2{};
    Complex D0{};  // principal sqrt(B0^2 - A0 * A0c)
    // term-magnitude sums: the size of what each kernel cancels from, which
    // sets the honest roundoff floor of a finite difference
    double mag_B0 = 0.0, mag_A0 = 0.0, mag_A0c = 0.0, mag_B1 = 0.0;
};

inline PairKernels pair_kernels(const BasisFamily& family, Complex u,
                                Complex v) {
    const EvalVector eu = evaluate_basis(family, u);
    const EvalVector evv = evaluate_basis(family, v);
    KahanComplexSum b0, a0, a0c, a1, a1c, b1, b1c, b2;
    PairKernels pk;
    for (int j = 0; j < family.term_count(); ++j) {
        b0.add(eu.values[j] * evv.values[j]);
        a0.add(eu.values[j] * eu.values[j]);
        a0c.add(evv.values[j] * evv.values[j]);
        a1.add(eu.values[j] * eu.derivs[j]);
        a1c.add(evv.values[j] * evv.derivs[j]);
        b1.add(evv.values[j] * eu.derivs[j]);
        b1c.add(eu.values[j] * evv.derivs[j]);
        b2.add(eu.derivs[j] * evv.derivs[j]);
        pk.mag_B0 += std::abs(eu.values[j]) * std::abs(evv.values[j]);
        pk.mag_A0 += std::norm(eu.values[j]);
        pk.mag_A0c += std::norm(evv.values[j]);
        pk.mag_B1 += std::abs(evv.values[j]) * std::abs(eu.derivs[j]);
    }
    pk.B0 = b0.value();
    pk.A0 = a0.value();
    pk.A0c = a0c.value();
    pk.A1 = a1.value();
    pk.A1c = a1c.value();
    pk.B1 = b1.value();
    pk.B1c = b1c.value();
    pk.B2 = b2.value();
    pk.D0 = std::sqrt(pk.B0 * pk.B0 - pk.A0 * pk.A0c);
    return pk;
}

// Deviations of the central v-differences from the closed forms
//   dB0/dv = conj(B1),  d(conj A0)/dv = 2 conj(A1),  dB1/dv = B2,
//   dD0/dv = (B0 conj(B1) - A0 conj(A1)) / D0,
// each normalized by max(|target|, FD noise floor).  The floor matters for
// kernels that are constant by cancellation (the mixed family's A0), where
// the difference quotient is pure roundoff and the target is exactly zero.
struct ZbarDerivativeCheck {
    double b0_dev = 0.0, a0c_dev = 0.0, b1_dev = 0.0, d0_dev = 0.0;
};

inline ZbarDerivativeCheck kernel_zbar_derivative_check(
    const BasisFamily& family, Complex z, double step = 0.0) {
    if (step <= 0.0) step = 1e-6 * std::max(1.0, std::abs(z));
    const Complex v0 = std::conj(z);
    const PairKernels center = pair_kernels(family, z, v0);
    const PairKernels plus = pair_kernels(family, z, v0 + step);
    const PairKernels minus = pair_kernels(family, z, v0 - step);
    const auto fd = [step](Complex hi, Complex lo) {
        return (hi - lo) / (2.0 * step);
    };
    const auto dev = [step](Complex got, Complex want, double mag) {
        const double floor = 1e-10 * mag / (2.0 * step);
        return std::abs(got - want) / std::max(std::abs(want), floor);
    };
    ZbarDerivativeCheck chk;
    chk.b0_dev = dev(fd(plus.B0, minus.B0), center.B1c, center.mag_B0);
    chk.a0c_dev =
        dev(fd(plus.A0c, minus.A0c), 2.0 * center.A1c, center.mag_A0c);
    chk.b1_dev = dev(fd(plus.B1, minus.B1), center.B2, center.mag_B1);
    const double mag_d0sq = 2.0 * std::abs(center.B0) * center.mag_B0 +
                            std::abs(center.A0) * center.mag_A0c +
                            center.mag_A0 * std::abs(center.A0c);
    const double mag_d0 =
        mag_d0sq / std::max(2.0 * std::abs(center.D0), 1e-300);
    chk.d0_dev = dev(fd(plus.D0, minus.D0),
                     (center.B0 * center.B1c - center.A0 * center.A1c) /
                         center.D0,
                     mag_d0);
    return chk;
}

}  // namespace randsum
