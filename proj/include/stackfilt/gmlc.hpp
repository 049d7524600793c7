#ifndef STACKFILT_GMLC_HPP
#define STACKFILT_GMLC_HPP

#include <vector>

#include "stackfilt/image.hpp"

namespace stackfilt {

/// Univariate Gaussian class model with uniform priors.
struct ClassModel {
    struct Gaussian {
        double mean;
        double variance;  // unbiased sample variance, > 0
    };
    std::vector<Gaussian> classes;

    size_t class_count() const { return classes.size(); }
};

/// Fits per-class mean and unbiased variance on the ROI pixels of `img`;
/// rois[c] is the training region of class c.
ClassModel fit_gmlc(const QuantizedImage& img, const std::vector<RegionOfInterest>& rois);

/// Per-pixel argmax of the Gaussian log-density; ties go to the lowest
/// class index. Returned as an image with the class index as gray level.
QuantizedImage classify(const QuantizedImage& img, const ClassModel& model);

struct ConfusionMatrix {
    int class_count = 0;
    std::vector<uint64_t> counts;  // row = truth, col = predicted

    uint64_t at(int truth, int predicted) const {
        return counts[static_cast<size_t>(truth) * class_count + predicted];
    }
    uint64_t row_total(int truth) const;
    /// Percentage of class-i pixels classified as class i.
    double diagonal_percent(int truth) const;
};

/// Counts over pixels where mask != 0.
ConfusionMatrix confusion(const QuantizedImage& labels, const QuantizedImage& truth,
                          const std::vector<uint8_t>& mask, int class_count);

}  // namespace stackfilt

#endif
