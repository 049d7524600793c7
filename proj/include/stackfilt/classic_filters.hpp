#ifndef STACKFILT_CLASSIC_FILTERS_HPP
#define STACKFILT_CLASSIC_FILTERS_HPP

#include "stackfilt/image.hpp"

namespace stackfilt {

/// Local-statistics Lee filter for multiplicative speckle:
/// out = mean + k (z - mean), k = max(0, 1 - Cu^2 / Cz^2), Cu^2 = 1/looks.
struct LeeParams {
    Window window{3, 3};
    double looks = 1.0;
};
QuantizedImage lee(const QuantizedImage& img, const LeeParams& p);

/// Frost filter: exponentially damped weighted window mean,
/// w(d) = exp(-damping * Cz^2 * d) with d the Euclidean distance to the
/// window center.
struct FrostParams {
    Window window{3, 3};
    double damping = 2.0;
};
QuantizedImage frost(const QuantizedImage& img, const FrostParams& p);

}  // namespace stackfilt

#endif
