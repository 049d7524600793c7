#ifndef STACKFILT_SPECKLE_HPP
#define STACKFILT_SPECKLE_HPP

#include <cstdint>
#include <vector>

#include "stackfilt/image.hpp"
#include "stackfilt/rng.hpp"

namespace stackfilt {

/// Parameters of the G0 intensity law: roughness alpha < 0, scale
/// gamma > 0, number of looks >= 1.
struct G0Params {
    double alpha;
    double gamma;
    double looks;

    void validate() const;
    /// E[Z] = gamma / (-alpha - 1); defined only for alpha < -1.
    double mean() const;
};

/// Density of G0(alpha, gamma, looks) at z > 0.
double g0_pdf(double z, const G0Params& p);

/// Scale making the G0 mean equal 1 for the given roughness. The speckle
/// factor already has unit mean, so gamma* = -alpha - 1 independently of
/// the number of looks.
double gamma_star(double alpha, double looks);

/// One draw Z = Y / W with Y ~ Gamma(L, rate L) (speckle) and
/// W ~ Gamma(-alpha, rate gamma), i.e. 1/W is the inverse-gamma backscatter.
double sample_g0(const G0Params& p, Rng& rng);

/// Real-valued field before quantization.
struct RealImage {
    int width = 0, height = 0;
    std::vector<double> values;  // row-major

    double& at(int row, int col) { return values[static_cast<size_t>(row) * width + col]; }
    double at(int row, int col) const { return values[static_cast<size_t>(row) * width + col]; }
};

/// Linear quantization [0, quantile_q] -> [0, levels] with round-half-up;
/// values above the clip quantile saturate at `levels`.
struct QuantizeResult {
    QuantizedImage image;
    double scale;  // gray levels per unit intensity
};
QuantizeResult quantize(const RealImage& img, int levels, double clip_quantile);

/// Two-region phantom: left / right halves split at border_col, sampled
/// i.i.d. from the two laws and rescaled so the theoretical region means
/// are in the ratio contrast_num : contrast_den.
struct PhantomSpec {
    int width = 128;
    int height = 128;
    G0Params left{-1.5, 0.5, 1.0};
    G0Params right{-10.0, 9.0, 1.0};
    int border_col = 64;
    double contrast_num = 10.0;
    double contrast_den = 10.0;
    int levels = 255;
    double clip_quantile = 0.995;
    uint64_t seed = 0;

    void validate() const;
};

struct Phantom {
    QuantizedImage image;
    QuantizedImage labels;     // 0 = left region, 1 = right region
    QuantizedImage reference;  // piecewise-constant theoretical means, same quantization
    RealImage real;            // pre-quantization intensities
    double scale;              // gray levels per unit intensity
    double mean_left;          // theoretical pre-quantization region means
    double mean_right;
};

Phantom generate_phantom(const PhantomSpec& spec);

}  // namespace stackfilt

#endif
