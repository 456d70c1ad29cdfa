#include "stqp/special_functions.hpp"

#include <cmath>
#include <limits>

namespace stqp {

namespace {

constexpr double sqrt2 = 1.4142135623730951;
constexpr double sqrt_2pi = 2.5066282746310002;

// Regularized lower incomplete gamma by power series, for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma by modified Lentz continued
// fraction, for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double gamma_pdf(const GammaParams& p, double x) {
    if (x <= 0.0) return 0.0;
    return std::exp((p.shape - 1.0) * std::log(x / p.scale) - x / p.scale -
                    std::lgamma(p.shape)) /
           p.scale;
}

// Acklam's rational approximation for the normal quantile, accurate to
// ~1.15e-9 on its own; refined below.
double normal_quantile_estimate(double alpha) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    if (alpha < plow) {
        const double q = std::sqrt(-2.0 * std::log(alpha));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (alpha > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - alpha));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = alpha - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_cdf(double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("std_normal_cdf: non-finite input");
    return 0.5 * std::erfc(-z / sqrt2);
}

double std_normal_quantile(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("std_normal_quantile: alpha must lie in (0,1)");
    }
    double x = normal_quantile_estimate(alpha);
    // Two Halley steps against the cdf bring the estimate to full
    // double accuracy.
    for (int i = 0; i < 2; ++i) {
        const double err = std_normal_cdf(x) - alpha;
        const double u = err * sqrt_2pi * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double gamma_cdf(const GammaParams& p, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("gamma_cdf: non-finite input");
    return gamma_p(p.shape, x / p.scale);
}

double gamma_quantile(const GammaParams& p, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("gamma_quantile: alpha must lie in (0,1)");
    }

    // Wilson-Hilferty start, then bracketed Newton on the cdf.
    const double z = normal_quantile_estimate(alpha);
    const double k = p.shape;
    double q = k * std::pow(1.0 - 1.0 / (9.0 * k) + z * std::sqrt(1.0 / (9.0 * k)), 3.0);
    if (!(q > 0.0) || !std::isfinite(q)) q = k;
    q *= p.scale;

    double lo = 0.0;
    double hi = q;
    while (gamma_cdf(p, hi) < alpha) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("gamma_quantile: bracket expansion failed");
    }

    double x = std::min(std::max(q, lo), hi);
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
    for (int i = 0; i < 100; ++i) {
        const double err = gamma_cdf(p, x) - alpha;
        if (err > 0.0) {
            hi = x;
        } else if (err < 0.0) {
            lo = x;
        }
        if (std::abs(err) <= 1e-12) break;
        const double deriv = gamma_pdf(p, x);
        double next = (deriv > 0.0) ? x - err / deriv : 0.0;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return x;
}

}  // namespace stqp
