#ifndef TESTS_SUPPORT_STATS_ORACLE_HPP
#define TESTS_SUPPORT_STATS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

// Distribution-theory oracles for the sampler tests. The G0 CDF is
// computed through the regularized incomplete beta function, a route
// fully independent of the gamma-ratio sampling path it checks.
namespace oracle {

// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
inline double betainc(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    auto cf = [](double a_, double b_, double x_) {
        const double tiny = 1e-300;
        double c = 1.0, d = 1.0 - (a_ + b_) * x_ / (a_ + 1.0);
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 400; ++m) {
            const double m2 = 2.0 * m;
            double num = m * (b_ - m) * x_ / ((a_ + m2 - 1.0) * (a_ + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(a_ + m) * (a_ + b_ + m) * x_ / ((a_ + m2) * (a_ + m2 + 1.0));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double delta = d * c;
            h *= delta;
            if (std::abs(delta - 1.0) < 1e-14) break;
        }
        return h;
    };
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(ln_front) * cf(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     cf(b, a, 1.0 - x) / b;
}

// CDF of the G0 intensity law: P(Z <= z) = I_{Lz/(Lz+gamma)}(L, -alpha).
inline double g0_cdf(double z, double alpha, double gamma, double looks) {
    if (z <= 0.0) return 0.0;
    const double u = looks * z / (looks * z + gamma);
    return betainc(looks, -alpha, u);
}

// One-sample Kolmogorov-Smirnov statistic against a CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Asymptotic KS critical value at significance level 1% or 5%.
inline double ks_critical(size_t n, double alpha_level) {
    double c;
    if (alpha_level == 0.01) c = 1.628;
    else if (alpha_level == 0.05) c = 1.358;
    else throw std::invalid_argument("ks_critical: unsupported level");
    return c / std::sqrt(static_cast<double>(n));
}

// Two-sample KS statistic; critical value c(alpha) * sqrt((n+m)/(n m)).
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    // Ties: advance both ECDFs past the full run of an equal value before
    // comparing, otherwise discrete data inflates the statistic.
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

inline double ks_two_sample_critical(size_t n, size_t m, double alpha_level) {
    double c;
    if (alpha_level == 0.01) c = 1.628;
    else if (alpha_level == 0.05) c = 1.358;
    else throw std::invalid_argument("ks_two_sample_critical: unsupported level");
    return c * std::sqrt((static_cast<double>(n) + m) / (static_cast<double>(n) * m));
}

}  // namespace oracle

#endif
