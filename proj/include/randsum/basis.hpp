#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "randsum/errors.hpp"
#include "randsum/numeric.hpp"

namespace randsum {

// The closed catalog of basis-function systems.  Every family is entire and
// real-valued on the real line, which is what the density formulas assume.
enum class Family {
    Power,          // z^j
    Weyl,           // z^j / sqrt(j!)
    Taylor,         // z^j / j!
    RootBinomial,   // sqrt(C(n,j)) z^j
    FourierCosine,  // cos(jz)
    FourierMixed,   // cos((j/2)z) for even j, sin(((j+1)/2)z) for odd j
};

inline bool is_polynomial_kind(Family kind) {
    return kind == Family::Power || kind == Family::Weyl ||
           kind == Family::Taylor || kind == Family::RootBinomial;
}

inline std::string_view family_name(Family kind) {
    switch (kind) {
        case Family::Power: return "power";
        case Family::Weyl: return "weyl";
        case Family::Taylor: return "taylor";
        case Family::RootBinomial: return "rootbinomial";
        case Family::FourierCosine: return "cosine";
        case Family::FourierMixed: return "mixed";
    }
    return "?";
}

namespace detail {

// log of the scalar prefactor multiplying z^j (polynomial kinds only).
inline double log_prefactor(Family kind, int n, int j) {
    switch (kind) {
        case Family::Power: return 0.0;
        case Family::Weyl: return -0.5 * std::lgamma(j + 1.0);
        case Family::Taylor: return -std::lgamma(j + 1.0);
        case Family::RootBinomial:
            return 0.5 * (std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                          std::lgamma(n - j + 1.0));
        default: return 0.0;
    }
}

// Largest |log prefactor| that still exponentiates to a normal double
// (|log DBL_MIN| ~ 708.4); keeps Taylor usable through n = 170.
inline constexpr double kMaxLogPrefactor = 708.0;

}  // namespace detail

struct BasisFamily {
    Family kind = Family::Power;
    int n = 1;  // index of the last term; the sum has n+1 terms

    int term_count() const { return n + 1; }

    void validate() const {
        if (n < 1)
            throw ValidationError(
                "basis: n must be >= 1 (n = 0 is a constant sum with no zeros)");
        if (kind == Family::FourierMixed && n % 2 != 0)
            throw ValidationError("basis: the mixed family requires even n");
        if (is_polynomial_kind(kind)) {
            for (int j : {n, n / 2}) {
                const double lp = detail::log_prefactor(kind, n, j);
                if (std::fabs(lp) > detail::kMaxLogPrefactor)
                    throw DegreeTooLarge(
                        "basis: prefactor exceeds double range at n = " +
                        std::to_string(n));
            }
        }
    }
};

inline BasisFamily make_family(std::string_view name, int n) {
    BasisFamily f;
    if (name == "power") f.kind = Family::Power;
    else if (name == "weyl") f.kind = Family::Weyl;
    else if (name == "taylor") f.kind = Family::Taylor;
    else if (name == "rootbinomial") f.kind = Family::RootBinomial;
    else if (name == "cosine") f.kind = Family::FourierCosine;
    else if (name == "mixed") f.kind = Family::FourierMixed;
    else
        throw ParseError("family: unknown name \"" + std::string(name) +
                         "\" (expected power|weyl|taylor|rootbinomial|cosine|mixed)");
    f.n = n;
    f.validate();
    return f;
}

struct EvalVector {
    std::vector<Complex> values;  // f_j(z)
    std::vector<Complex> derivs;  // f_j'(z)
    Complex point{};
};

// Values and hand-derived derivatives of all n+1 basis functions at z.
//
// Polynomial kinds use the term recurrence f_j = f_{j-1} * z * r_j with the
// exact prefactor ratio r_j, so no intermediate z^j or factorial is formed;
// each multiplier is real, which keeps results exactly real on the real
// line and exactly conjugate-symmetric off it.
inline EvalVector evaluate_basis(const BasisFamily& family, Complex z) {
    family.validate();
    const int count = family.term_count();
    EvalVector ev;
    ev.point = z;
    ev.values.assign(count, Complex{});
    ev.derivs.assign(count, Complex{});

    switch (family.kind) {
        case Family::Power:
        case Family::Weyl:
        case Family::Taylor:
        case Family::RootBinomial: {
            ev.values[0] = 1.0;
            for (int j = 1; j < count; ++j) {
                double r = 1.0;
                switch (family.kind) {
                    case Family::Weyl: r = 1.0 / std::sqrt(double(j)); break;
                    case Family::Taylor: r = 1.0 / double(j); break;
                    case Family::RootBinomial:
                        r = std::sqrt(double(family.n - j + 1) / double(j));
                        break;
                    default: break;
                }
                ev.values[j] = (ev.values[j - 1] * z) * r;
                ev.derivs[j] = ev.values[j - 1] * (double(j) * r);
            }
            break;
        }
        case Family::FourierCosine: {
            ev.values[0] = 1.0;
            for (int j = 1; j < count; ++j) {
                const Complex jz = double(j) * z;
                ev.values[j] = complex_cos(jz);
                ev.derivs[j] = -double(j) * complex_sin(jz);
            }
            break;
        }
        case Family::FourierMixed: {
            ev.values[0] = 1.0;
            for (int j = 1; j < count; ++j) {
                if (j % 2 == 0) {
                    const double k = j / 2;
                    ev.values[j] = complex_cos(k * z);
                    ev.derivs[j] = -k * complex_sin(k * z);
                } else {
                    const double k = (j + 1) / 2;
                    ev.values[j] = complex_sin(k * z);
                    ev.derivs[j] = k * complex_cos(k * z);
                }
            }
            break;
        }
    }
    return ev;
}

// Scalar prefactors p_j with f_j(z) = p_j z^j, used to assemble monomial
// coefficients of a sampled sum.  Polynomial kinds only.
inline std::vector<double> polynomial_prefactors(const BasisFamily& family) {
    family.validate();
    if (!is_polynomial_kind(family.kind))
        throw UnsupportedFamily("prefactors: not a polynomial family");
    std::vector<double> pref(family.term_count());
    for (int j = 0; j < family.term_count(); ++j)
        pref[j] = std::exp(detail::log_prefactor(family.kind, family.n, j));
    return pref;
}

}  // namespace randsum
