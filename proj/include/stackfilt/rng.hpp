#ifndef STACKFILT_RNG_HPP
#define STACKFILT_RNG_HPP

#include <cstdint>

namespace stackfilt {

/// xoshiro256++ with splitmix64 state expansion. Streams are derived from
/// (seed, stream) so Monte Carlo replications can run independently and
/// reproducibly.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0);

    uint64_t next_u64();

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double();

    /// Uniform in (0, 1); never returns 0.
    double next_open_double();

    /// Standard normal via the Marsaglia polar method.
    double next_normal();

    /// Gamma(shape, rate) via Marsaglia-Tsang, with the U^(1/a) boost for
    /// shape < 1.
    double next_gamma(double shape, double rate);

private:
    uint64_t s_[4];
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace stackfilt

#endif
