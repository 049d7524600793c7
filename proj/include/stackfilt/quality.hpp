#ifndef STACKFILT_QUALITY_HPP
#define STACKFILT_QUALITY_HPP

#include <vector>

#include "stackfilt/image.hpp"

namespace stackfilt {

struct QualityReport {
    double q = 0.0;
    long windows_used = 0;
    long windows_skipped = 0;  // degenerate denominators
};

/// Universal image quality index: mean over all win x win sliding
/// positions of correlation * luminance proximity * contrast proximity.
/// Windows with a zero denominator are skipped, not counted as 0.
QualityReport q_index_report(const QuantizedImage& x, const QuantizedImage& y, int win = 8);
double q_index(const QuantizedImage& x, const QuantizedImage& y, int win = 8);

/// 4-neighbour Laplacian with replicated borders.
std::vector<double> laplacian(const QuantizedImage& img);

/// Edge-preservation index: Pearson correlation of the two Laplacian
/// fields. Throws if either Laplacian has zero variance.
double beta_index(const QuantizedImage& x, const QuantizedImage& y);

/// Deterministic pairwise (cascade) summation; reduction order is fixed
/// regardless of how the terms were produced.
double pairwise_sum(const std::vector<double>& terms);

}  // namespace stackfilt

#endif
