#include "stackfilt/speckle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stackfilt {

void G0Params::validate() const {
    if (!(alpha < 0.0)) throw std::domain_error("G0Params: alpha must be negative");
    if (!(gamma > 0.0)) throw std::domain_error("G0Params: gamma must be positive");
    if (!(looks >= 1.0)) throw std::domain_error("G0Params: looks must be >= 1");
}

double G0Params::mean() const {
    if (!(alpha < -1.0))
        throw std::domain_error("G0Params: mean undefined for alpha >= -1");
    return gamma / (-alpha - 1.0);
}

double g0_pdf(double z, const G0Params& p) {
    p.validate();
    if (!(z > 0.0)) throw std::domain_error("g0_pdf: z must be positive");
    const double a = p.alpha, g = p.gamma, L = p.looks;
    const double log_pdf = L * std::log(L) + std::lgamma(L - a) - a * std::log(g)
                         - std::lgamma(L) - std::lgamma(-a)
                         + (L - 1.0) * std::log(z) - (L - a) * std::log(g + L * z);
    return std::exp(log_pdf);
}

double gamma_star(double alpha, double looks) {
    if (!(looks >= 1.0)) throw std::domain_error("gamma_star: looks must be >= 1");
    if (!(alpha < -1.0))
        throw std::domain_error("gamma_star: mean undefined for alpha >= -1");
    return -alpha - 1.0;
}

double sample_g0(const G0Params& p, Rng& rng) {
    p.validate();
    const double speckle = rng.next_gamma(p.looks, p.looks);
    const double w = rng.next_gamma(-p.alpha, p.gamma);
    return speckle / w;
}

QuantizeResult quantize(const RealImage& img, int levels, double clip_quantile) {
    if (img.values.empty()) throw std::domain_error("quantize: empty image");
    if (!(clip_quantile > 0.9 && clip_quantile <= 1.0))
        throw std::domain_error("quantize: clip quantile must be in (0.9, 1]");
    std::vector<double> sorted(img.values);
    std::sort(sorted.begin(), sorted.end());
    // Nearest-rank quantile; q = 1 picks the maximum.
    const size_t n = sorted.size();
    size_t rank = static_cast<size_t>(std::ceil(clip_quantile * static_cast<double>(n)));
    if (rank == 0) rank = 1;
    if (rank > n) rank = n;
    const double cap = sorted[rank - 1];
    const double scale = cap > 0.0 ? levels / cap : 0.0;

    QuantizedImage out(img.width, img.height, levels);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            double v = img.at(r, c) * scale;
            long q = static_cast<long>(std::floor(v + 0.5));  // round half-up
            if (q < 0) q = 0;
            if (q > levels) q = levels;
            out.set(r, c, static_cast<uint16_t>(q));
        }
    return {std::move(out), scale};
}

void PhantomSpec::validate() const {
    left.validate();
    right.validate();
    if (width <= 0 || height <= 0) throw std::domain_error("PhantomSpec: bad size");
    if (border_col <= 0 || border_col >= width)
        throw std::domain_error("PhantomSpec: border must be strictly inside image");
    if (!(contrast_num > 0.0 && contrast_den > 0.0))
        throw std::domain_error("PhantomSpec: contrast must be positive");
    if (levels <= 0) throw std::domain_error("PhantomSpec: bad levels");
    // Mean-based contrast needs finite means.
    left.mean();
    right.mean();
}

Phantom generate_phantom(const PhantomSpec& spec) {
    spec.validate();
    const double mean_left = spec.contrast_num;
    const double mean_right = spec.contrast_den;
    const double scale_left = mean_left / spec.left.mean();
    const double scale_right = mean_right / spec.right.mean();

    Rng rng(spec.seed, 0);
    RealImage real{spec.width, spec.height,
                   std::vector<double>(static_cast<size_t>(spec.width) * spec.height)};
    QuantizedImage labels(spec.width, spec.height, 255);
    for (int r = 0; r < spec.height; ++r)
        for (int c = 0; c < spec.width; ++c) {
            const bool right = c >= spec.border_col;
            const G0Params& p = right ? spec.right : spec.left;
            real.at(r, c) = sample_g0(p, rng) * (right ? scale_right : scale_left);
            labels.set(r, c, right ? 1 : 0);
        }

    QuantizeResult q = quantize(real, spec.levels, spec.clip_quantile);

    auto quantize_mean = [&](double m) {
        long v = static_cast<long>(std::floor(m * q.scale + 0.5));
        if (v < 0) v = 0;
        if (v > spec.levels) v = spec.levels;
        return static_cast<uint16_t>(v);
    };
    QuantizedImage reference(spec.width, spec.height, spec.levels);
    const uint16_t ref_left = quantize_mean(mean_left);
    const uint16_t ref_right = quantize_mean(mean_right);
    for (int r = 0; r < spec.height; ++r)
        for (int c = 0; c < spec.width; ++c)
            reference.set(r, c, c >= spec.border_col ? ref_right : ref_left);

    return {std::move(q.image), std::move(labels), std::move(reference),
            std::move(real), q.scale, mean_left, mean_right};
}

}  // namespace stackfilt
