#include "stackfilt/quality.hpp"

#include <cmath>
#include <stdexcept>

namespace stackfilt {

double pairwise_sum(const std::vector<double>& terms) {
    // Recursive halving; fixed reduction order keeps results bit-stable
    // across runs and platforms.
    struct Sum {
        static double run(const double* data, size_t n) {
            if (n == 0) return 0.0;
            if (n <= 8) {
                double s = 0.0;
                for (size_t i = 0; i < n; ++i) s += data[i];
                return s;
            }
            const size_t half = n / 2;
            return run(data, half) + run(data + half, n - half);
        }
    };
    return Sum::run(terms.data(), terms.size());
}

QualityReport q_index_report(const QuantizedImage& x, const QuantizedImage& y, int win) {
    if (!x.same_shape(y)) throw std::domain_error("q_index: dimension mismatch");
    if (win < 2) throw std::domain_error("q_index: window must be >= 2");
    if (x.width() < win || x.height() < win)
        throw std::domain_error("q_index: image smaller than window");

    const double n = static_cast<double>(win) * win;
    std::vector<double> locals;
    long skipped = 0;
    for (int r = 0; r + win <= x.height(); ++r)
        for (int c = 0; c + win <= x.width(); ++c) {
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int dr = 0; dr < win; ++dr)
                for (int dc = 0; dc < win; ++dc) {
                    const double xv = x.at(r + dr, c + dc);
                    const double yv = y.at(r + dr, c + dc);
                    sx += xv; sy += yv;
                    sxx += xv * xv; syy += yv * yv; sxy += xv * yv;
                }
            const double mx = sx / n, my = sy / n;
            const double vx = (sxx - n * mx * mx) / (n - 1.0);
            const double vy = (syy - n * my * my) / (n - 1.0);
            const double cov = (sxy - n * mx * my) / (n - 1.0);
            if (vx <= 0.0 || vy <= 0.0 || mx * mx + my * my == 0.0) {
                ++skipped;
                continue;
            }
            const double sdx = std::sqrt(vx), sdy = std::sqrt(vy);
            const double q = (cov / (sdx * sdy))
                           * (2.0 * mx * my / (mx * mx + my * my))
                           * (2.0 * sdx * sdy / (vx + vy));
            locals.push_back(q);
        }
    QualityReport rep;
    rep.windows_used = static_cast<long>(locals.size());
    rep.windows_skipped = skipped;
    rep.q = locals.empty() ? 0.0 : pairwise_sum(locals) / static_cast<double>(locals.size());
    return rep;
}

double q_index(const QuantizedImage& x, const QuantizedImage& y, int win) {
    return q_index_report(x, y, win).q;
}

std::vector<double> laplacian(const QuantizedImage& img) {
    if (img.width() < 3 || img.height() < 3)
        throw std::domain_error("laplacian: image must be at least 3x3");
    std::vector<double> out(static_cast<size_t>(img.width()) * img.height());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const double center = img.at(r, c);
            out[static_cast<size_t>(r) * img.width() + c] =
                img.at_clamped(r - 1, c) + img.at_clamped(r + 1, c) +
                img.at_clamped(r, c - 1) + img.at_clamped(r, c + 1) - 4.0 * center;
        }
    return out;
}

double beta_index(const QuantizedImage& x, const QuantizedImage& y) {
    if (!x.same_shape(y)) throw std::domain_error("beta_index: dimension mismatch");
    const std::vector<double> lx = laplacian(x);
    const std::vector<double> ly = laplacian(y);
    const size_t n = lx.size();

    std::vector<double> tx(n), ty(n), txy(n);
    double mx = pairwise_sum(lx) / static_cast<double>(n);
    double my = pairwise_sum(ly) / static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
        tx[i] = (lx[i] - mx) * (lx[i] - mx);
        ty[i] = (ly[i] - my) * (ly[i] - my);
        txy[i] = (lx[i] - mx) * (ly[i] - my);
    }
    const double vx = pairwise_sum(tx);
    const double vy = pairwise_sum(ty);
    const double cov = pairwise_sum(txy);
    if (vx <= 0.0 || vy <= 0.0)
        throw std::domain_error("beta_index: zero-variance Laplacian");
    return cov / std::sqrt(vx * vy);
}

}  // namespace stackfilt
