#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "randsum/basis.hpp"
#include "randsum/errors.hpp"
#include "randsum/numeric.hpp"
#include "randsum/quadrature.hpp"

namespace randsum {

struct AberthOptions {
    int max_sweeps = 200;
    double correction_tol = 1e-13;  // relative to 1 + |root|
    // |lead|/max|c| at or below this drops the degree.  Zero by default:
    // prefactor-scaled families (Weyl past n ~ 47) have leading coefficients
    // under any fixed threshold whose terms still matter at window scale,
    // and the monic iteration copes with small leading coefficients anyway.
    double degree_drop = 0.0;
};

namespace detail {

// p(z) and p'(z) in one Horner pass; coefficients ascending.
inline std::pair<Complex, Complex> horner2(std::span<const Complex> c,
                                           Complex z) {
    Complex p = c.back();
    Complex dp = 0.0;
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
    return {p, dp};
}

}  // namespace detail

// All roots of c[0] + c[1] z + ... + c[deg] z^deg by Aberth-Ehrlich
// simultaneous iteration: circle of perturbed initial guesses, Newton
// corrections with mutual repulsion, one Newton polish at the end.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs,
                                             const AberthOptions& opt = {}) {
    if (coeffs.empty()) throw ValidationError("roots: no coefficients");
    double max_mag = 0.0;
    for (const Complex& c : coeffs) max_mag = std::max(max_mag, std::abs(c));
    if (max_mag == 0.0) throw ValidationError("roots: zero polynomial");

    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) <= opt.degree_drop * max_mag) --deg;
    coeffs.resize(deg + 1);

    std::vector<Complex> roots;
    if (deg == 0) return roots;

    const Complex lead = coeffs[deg];
    for (Complex& c : coeffs) c /= lead;

    // exact zero constant terms factor out as exact origin roots
    int at_origin = 0;
    while (at_origin < deg && coeffs[at_origin] == 0.0) ++at_origin;
    if (at_origin > 0) {
        roots.assign(at_origin, Complex{});
        coeffs.erase(coeffs.begin(), coeffs.begin() + at_origin);
        deg -= at_origin;
        if (deg == 0) return roots;
    }

    double radius = std::pow(std::abs(coeffs[0]), 1.0 / deg);
    if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
    std::vector<Complex> zs(deg);
    const double phase0 = 0.376 + kPi / (2.0 * deg);
    for (int k = 0; k < deg; ++k) {
        const double a = 2.0 * kPi * k / deg + phase0;
        zs[k] = radius * Complex{std::cos(a), std::sin(a)};
    }

    bool converged = false;
    for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
        double worst = 0.0;
        for (int k = 0; k < deg; ++k) {
            const auto [p, dp] = detail::horner2(coeffs, zs[k]);
            if (p == 0.0) continue;
            if (dp == 0.0) {
                // landed on a critical point; deterministic kick and retry
                zs[k] += 0.1 * (1.0 + std::abs(zs[k])) * Complex{0.696, 0.717};
                worst = std::max(worst, 1.0);
                continue;
            }
            const Complex newton = p / dp;
            Complex repulsion = 0.0;
            for (int j = 0; j < deg; ++j) {
                if (j == k) continue;
                Complex diff = zs[k] - zs[j];
                if (diff == 0.0) diff = 1e-14 * (1.0 + std::abs(zs[k]));
                repulsion += 1.0 / diff;
            }
            const Complex denom = 1.0 - newton * repulsion;
            const Complex w = (denom == 0.0) ? newton : newton / denom;
            zs[k] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(zs[k])));
        }
        converged = worst < opt.correction_tol;
    }
    if (!converged)
        throw NoConvergence("roots: Aberth sweeps exhausted");

    for (Complex& z : zs) {
        const auto [p, dp] = detail::horner2(coeffs, z);
        if (dp != 0.0) z -= p / dp;
    }
    roots.insert(roots.end(), zs.begin(), zs.end());
    return roots;
}

// Zeros of sum_j eta_j f_j inside the window for the trigonometric
// families.  Substituting w = exp(iz) turns w^m * P(z) into a degree-2m
// polynomial Q(w); its nonzero roots map back to one strip root each,
// z = arg(w) - i ln|w| with Re z in [-pi, pi), which periodicity then
// tiles across the window.
inline std::vector<Complex> trig_roots(const BasisFamily& family,
                                       std::span<const double> eta,
                                       const Window& window,
                                       const AberthOptions& opt = {}) {
    family.validate();
    window.validate();
    if (eta.size() != static_cast<std::size_t>(family.term_count()))
        throw ValidationError("trig_roots: coefficient count mismatch");

    std::vector<Complex> q;
    if (family.kind == Family::FourierCosine) {
        const int m = family.n;
        q.assign(2 * m + 1, Complex{});
        q[m] += eta[0];
        for (int j = 1; j <= family.n; ++j) {
            q[m + j] += 0.5 * eta[j];
            q[m - j] += 0.5 * eta[j];
        }
    } else if (family.kind == Family::FourierMixed) {
        const int m = family.n / 2;
        q.assign(2 * m + 1, Complex{});
        q[m] += eta[0];
        for (int k = 1; k <= m; ++k) {
            q[m + k] += Complex{0.5 * eta[2 * k], -0.5 * eta[2 * k - 1]};
            q[m - k] += Complex{0.5 * eta[2 * k], 0.5 * eta[2 * k - 1]};
        }
    } else {
        throw UnsupportedFamily("trig_roots: polynomial family");
    }

    const int m = static_cast<int>(q.size() - 1) / 2;
    std::vector<double> qmag(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) qmag[k] = std::abs(q[k]);

    const std::vector<Complex> ws = polynomial_roots(std::move(q), opt);

    std::vector<Complex> out;
    std::vector<double> w_scale;  // per root: sum |q_k||w|^k / |w|^m
    const double two_pi = 2.0 * kPi;
    for (const Complex& w : ws) {
        if (w == 0.0) continue;  // maps to Im z = +infinity
        double re = std::arg(w);
        if (re >= kPi) re -= two_pi;  // fundamental strip [-pi, pi)
        const double im = -std::log(std::abs(w));
        if (im < window.ymin || im > window.ymax) continue;
        double qsum = 0.0, wpow = 1.0;
        for (double mag : qmag) {
            qsum += mag * wpow;
            wpow *= std::abs(w);
        }
        const double scale = qsum / std::pow(std::abs(w), m);
        const double k0 = std::ceil((window.xmin - re) / two_pi);
        const double k1 = std::floor((window.xmax - re) / two_pi);
        for (double k = k0; k <= k1; ++k) {
            out.push_back(Complex{re + two_pi * k, im});
            w_scale.push_back(scale);
        }
    }

    // every reported zero must actually kill the sum; the magnitude scale
    // includes the w-polynomial side, which keeps the bound meaningful even
    // when a single eta term carries the whole sum
    for (std::size_t i = 0; i < out.size(); ++i) {
        const EvalVector ev = evaluate_basis(family, out[i]);
        KahanComplexSum sum;
        double mag = 0.0;
        for (int j = 0; j < family.term_count(); ++j) {
            sum.add(eta[j] * ev.values[j]);
            mag += std::fabs(eta[j]) * std::abs(ev.values[j]);
        }
        if (std::abs(sum.value()) > 1e-7 * std::max(mag, w_scale[i]))
            throw NoConvergence("trig_roots: mapped root fails the residual bound");
    }
    return out;
}

}  // namespace randsum
