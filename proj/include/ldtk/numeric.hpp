#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace ldtk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Compensated (Kahan) accumulator. Keeps long sums of cell masses and
// probabilities stable to a few ulp.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double kahan_total(std::span<const double> xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

// log(sum(exp(xs))) without overflow; -inf for an empty list.
inline double log_sum_exp(std::span<const double> xs) {
    double hi = -kInf;
    for (double x : xs)
        if (x > hi) hi = x;
    if (hi == -kInf) return -kInf;
    KahanSum s;
    for (double x : xs) s.add(std::exp(x - hi));
    return hi + std::log(s.value());
}

// x*log(x/y) with the 0*log(0) = 0 convention; +inf when x > 0 and y == 0.
inline double xlogxy(double x, double y) {
    if (x == 0.0) return 0.0;
    if (y == 0.0) return kInf;
    return x * std::log(x / y);
}

// Standard normal CDF / survival / density.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
inline double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }
inline double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014327;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

// Upper-tail quantile: the x with normal_sf(x) == p, for p in (0, 1).
// Bisection bracket then Newton polish; deterministic, ~1 ulp of sf itself.
inline double normal_sf_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_sf_quantile: p outside (0,1)");
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (normal_sf(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double g = normal_sf(x) - p;
        double d = normal_pdf(x);
        if (d <= 0.0) break;
        double step = g / d;
        if (!std::isfinite(step)) break;
        x += step;
    }
    return x;
}

// Adaptive Simpson quadrature on [a,b] to absolute tolerance tol.
namespace detail {
inline double simpson_est(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt(F&& f, double a, double m, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_est(a, m, fa, flm, fm);
    double right = simpson_est(m, b, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-8, int max_depth = 48) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = detail::simpson_est(a, b, fa, fm, fb);
    return detail::adapt(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

// Wilson score interval for a binomial proportion at z standard deviations.
struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

inline WilsonInterval wilson_interval(std::size_t hits, std::size_t trials, double z = 1.959963984540054) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(hits) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval w;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    // At the boundary counts the endpoints are exactly 0 and 1; don't let
    // rounding in center - half leak a spurious 1e-19 lower bound.
    if (hits == 0) w.lo = 0.0;
    if (hits == trials) w.hi = 1.0;
    return w;
}

// Golden-section minimization of a unimodal function on [a,b].
template <class F>
double golden_minimize(F&& f, double a, double b, double tol = 1e-12, int iters = 200) {
    static const double phi = 0.6180339887498949;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace ldtk
