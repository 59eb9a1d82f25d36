#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace randsum {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Kahan–Neumaier compensated accumulator.
class KahanSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanComplexSum {
  public:
    void add(Complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

  private:
    KahanSum re_, im_;
};

// Fixed-order pairwise reduction; the result does not depend on how the
// input array was produced, so parallel fills stay reproducible.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline Complex pairwise_sum(std::span<const Complex> zs) {
    if (zs.size() <= 8) {
        Complex s = 0.0;
        for (Complex z : zs) s += z;
        return s;
    }
    const std::size_t half = zs.size() / 2;
    return pairwise_sum(zs.first(half)) + pairwise_sum(zs.subspan(half));
}

// cos(x+iy) = cos(x)cosh(y) - i sin(x)sinh(y).  The even/odd factors are
// built explicitly from |y| so that conjugating the argument conjugates the
// result bit for bit, and real arguments produce exactly real results.
inline Complex complex_cos(Complex z) {
    const double x = z.real(), y = z.imag();
    const double ch = std::cosh(std::fabs(y));
    const double sh = std::copysign(std::sinh(std::fabs(y)), y);
    return {std::cos(x) * ch, -std::sin(x) * sh};
}

// sin(x+iy) = sin(x)cosh(y) + i cos(x)sinh(y), same symmetry guarantees.
inline Complex complex_sin(Complex z) {
    const double x = z.real(), y = z.imag();
    const double ch = std::cosh(std::fabs(y));
    const double sh = std::copysign(std::sinh(std::fabs(y)), y);
    return {std::sin(x) * ch, std::cos(x) * sh};
}

struct GaussLegendre {
    std::vector<double> nodes;    // on (-1, 1), ascending
    std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
inline GaussLegendre gauss_legendre(int k) {
    GaussLegendre rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);
    for (int i = 0; i < (k + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[k - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[k - 1 - i] = w;
    }
    return rule;
}

}  // namespace randsum
