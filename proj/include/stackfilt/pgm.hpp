#ifndef STACKFILT_PGM_HPP
#define STACKFILT_PGM_HPP

#include <iosfwd>
#include <string>

#include "stackfilt/image.hpp"

namespace stackfilt {

/// Binary PGM (P5). maxval must be 255 or 65535; 16-bit samples are
/// big-endian per the PNM convention. Lossless round-trip with write_pgm.
QuantizedImage read_pgm(const std::string& path);
QuantizedImage read_pgm(std::istream& in);

void write_pgm(const QuantizedImage& img, const std::string& path);
void write_pgm(const QuantizedImage& img, std::ostream& out);

}  // namespace stackfilt

#endif
