#include "stackfilt/classic_filters.hpp"

#include <cmath>
#include <stdexcept>

namespace stackfilt {
namespace {

uint16_t round_clamp(double v, int levels) {
    long q = static_cast<long>(std::floor(v + 0.5));
    if (q < 0) q = 0;
    if (q > levels) q = levels;
    return static_cast<uint16_t>(q);
}

struct WindowStats {
    double mean;
    double variance;  // unbiased sample variance s_z^2 over the window
};

WindowStats window_stats(const QuantizedImage& img, int row, int col, const Window& w) {
    const int hr = w.rows / 2, hc = w.cols / 2;
    double sum = 0.0, sum_sq = 0.0;
    for (int dr = -hr; dr <= hr; ++dr)
        for (int dc = -hc; dc <= hc; ++dc) {
            const double v = img.at_clamped(row + dr, col + dc);
            sum += v;
            sum_sq += v * v;
        }
    const double n = w.size();
    const double mean = sum / n;
    double var = (sum_sq - n * mean * mean) / (n - 1.0);
    if (var < 0.0) var = 0.0;
    return {mean, var};
}

}  // namespace

QuantizedImage lee(const QuantizedImage& img, const LeeParams& p) {
    if (!(p.looks >= 1.0)) throw std::domain_error("lee: looks must be >= 1");
    const double cu2 = 1.0 / p.looks;
    QuantizedImage out(img.width(), img.height(), img.levels());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const WindowStats st = window_stats(img, r, c, p.window);
            if (st.mean == 0.0) {
                out.set(r, c, 0);
                continue;
            }
            const double cz2 = st.variance / (st.mean * st.mean);
            const double k = cz2 > 0.0 ? std::max(0.0, 1.0 - cu2 / cz2) : 0.0;
            const double z = img.at(r, c);
            out.set(r, c, round_clamp(st.mean + k * (z - st.mean), img.levels()));
        }
    return out;
}

QuantizedImage frost(const QuantizedImage& img, const FrostParams& p) {
    if (!(p.damping > 0.0)) throw std::domain_error("frost: damping must be positive");
    const int hr = p.window.rows / 2, hc = p.window.cols / 2;
    QuantizedImage out(img.width(), img.height(), img.levels());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const WindowStats st = window_stats(img, r, c, p.window);
            const double cz2 = st.mean > 0.0 ? st.variance / (st.mean * st.mean) : 0.0;
            double weighted = 0.0, total = 0.0;
            for (int dr = -hr; dr <= hr; ++dr)
                for (int dc = -hc; dc <= hc; ++dc) {
                    const double d = std::sqrt(double(dr * dr + dc * dc));
                    const double weight = std::exp(-p.damping * cz2 * d);
                    weighted += weight * img.at_clamped(r + dr, c + dc);
                    total += weight;
                }
            out.set(r, c, round_clamp(weighted / total, img.levels()));
        }
    return out;
}

}  // namespace stackfilt
