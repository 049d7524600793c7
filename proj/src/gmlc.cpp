#include "stackfilt/gmlc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stackfilt {

ClassModel fit_gmlc(const QuantizedImage& img, const std::vector<RegionOfInterest>& rois) {
    if (rois.size() < 2) throw std::domain_error("fit_gmlc: need at least 2 classes");
    ClassModel model;
    for (size_t c = 0; c < rois.size(); ++c) {
        rois[c].validate(img.width(), img.height());
        const std::vector<uint8_t> mask = rois[c].mask(img.width(), img.height());
        double sum = 0.0, sum_sq = 0.0;
        uint64_t n = 0;
        for (size_t i = 0; i < mask.size(); ++i)
            if (mask[i]) {
                const double v = img.pixels()[i];
                sum += v;
                sum_sq += v * v;
                ++n;
            }
        if (n < 2)
            throw std::domain_error("fit_gmlc: class " + std::to_string(c) +
                                    " ROI has fewer than 2 pixels");
        const double mean = sum / static_cast<double>(n);
        const double var = (sum_sq - static_cast<double>(n) * mean * mean) /
                           (static_cast<double>(n) - 1.0);
        if (!(var > 0.0))
            throw std::domain_error("fit_gmlc: class " + std::to_string(c) +
                                    " ROI has zero variance");
        model.classes.push_back({mean, var});
    }
    return model;
}

QuantizedImage classify(const QuantizedImage& img, const ClassModel& model) {
    if (model.class_count() < 2) throw std::domain_error("classify: unfitted model");
    const int k = static_cast<int>(model.class_count());
    QuantizedImage out(img.width(), img.height(), 255);
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const double z = img.at(r, c);
            int best = 0;
            double best_ll = -std::numeric_limits<double>::infinity();
            for (int cls = 0; cls < k; ++cls) {
                const auto& g = model.classes[cls];
                const double d = z - g.mean;
                const double ll = -0.5 * std::log(g.variance) - d * d / (2.0 * g.variance);
                if (ll > best_ll) {  // strict: ties stay with the lowest index
                    best_ll = ll;
                    best = cls;
                }
            }
            out.set(r, c, static_cast<uint16_t>(best));
        }
    return out;
}

uint64_t ConfusionMatrix::row_total(int truth) const {
    uint64_t total = 0;
    for (int c = 0; c < class_count; ++c) total += at(truth, c);
    return total;
}

double ConfusionMatrix::diagonal_percent(int truth) const {
    const uint64_t total = row_total(truth);
    if (total == 0) return 0.0;
    return 100.0 * static_cast<double>(at(truth, truth)) / static_cast<double>(total);
}

ConfusionMatrix confusion(const QuantizedImage& labels, const QuantizedImage& truth,
                          const std::vector<uint8_t>& mask, int class_count) {
    if (!labels.same_shape(truth)) throw std::domain_error("confusion: dimension mismatch");
    if (mask.size() != labels.pixels().size())
        throw std::domain_error("confusion: mask size mismatch");
    bool any = false;
    ConfusionMatrix m;
    m.class_count = class_count;
    m.counts.assign(static_cast<size_t>(class_count) * class_count, 0);
    for (size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) continue;
        any = true;
        const int t = truth.pixels()[i];
        const int p = labels.pixels()[i];
        if (t >= class_count || p >= class_count)
            throw std::domain_error("confusion: label outside class range");
        ++m.counts[static_cast<size_t>(t) * class_count + p];
    }
    if (!any) throw std::domain_error("confusion: empty mask");
    return m;
}

}  // namespace stackfilt
