#include "stackfilt/pgm.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "stackfilt/errors.hpp"

namespace stackfilt {
namespace {

// Reads one whitespace-delimited unsigned integer, skipping '#' comments.
// `pos` tracks the byte offset for error reporting.
long read_header_int(std::istream& in, size_t& pos, const char* field) {
    int c = in.get();
    ++pos;
    while (in) {
        if (c == '#') {
            while (in && c != '\n') { c = in.get(); ++pos; }
        } else if (std::isspace(c)) {
            c = in.get();
            ++pos;
        } else {
            break;
        }
    }
    if (!in || !std::isdigit(c))
        throw FormatError(std::string("PGM: expected ") + field, pos - 1);
    long value = 0;
    while (in && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1'000'000'000)
            throw FormatError(std::string("PGM: ") + field + " too large", pos - 1);
        c = in.get();
        ++pos;
    }
    // The terminating byte (single whitespace after maxval, per spec) is
    // consumed; that is what the format requires before the raster.
    if (in && !std::isspace(c))
        throw FormatError(std::string("PGM: junk after ") + field, pos - 1);
    return value;
}

}  // namespace

QuantizedImage read_pgm(std::istream& in) {
    size_t pos = 0;
    char magic[2] = {0, 0};
    in.read(magic, 2);
    pos += static_cast<size_t>(in.gcount());
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw FormatError("PGM: missing P5 magic", 0);

    const long width = read_header_int(in, pos, "width");
    const long height = read_header_int(in, pos, "height");
    const long maxval = read_header_int(in, pos, "maxval");
    if (width <= 0 || height <= 0)
        throw FormatError("PGM: non-positive dimensions", pos);
    if (maxval != 255 && maxval != 65535)
        throw FormatError("PGM: unsupported maxval " + std::to_string(maxval), pos);

    const size_t count = static_cast<size_t>(width) * height;
    std::vector<uint16_t> pixels(count);
    if (maxval == 255) {
        std::vector<uint8_t> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (static_cast<size_t>(in.gcount()) != count)
            throw FormatError("PGM: truncated payload", pos + in.gcount());
        for (size_t i = 0; i < count; ++i) pixels[i] = raw[i];
    } else {
        std::vector<uint8_t> raw(count * 2);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 2));
        if (static_cast<size_t>(in.gcount()) != count * 2)
            throw FormatError("PGM: truncated payload", pos + in.gcount());
        for (size_t i = 0; i < count; ++i)
            pixels[i] = static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
    }
    return QuantizedImage(static_cast<int>(width), static_cast<int>(height),
                          static_cast<int>(maxval), std::move(pixels));
}

QuantizedImage read_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("PGM: cannot open " + path, 0);
    return read_pgm(f);
}

void write_pgm(const QuantizedImage& img, std::ostream& out) {
    const int maxval = img.levels();
    if (maxval != 255 && maxval != 65535)
        throw std::domain_error("write_pgm: levels must be 255 or 65535");
    out << "P5\n" << img.width() << " " << img.height() << "\n" << maxval << "\n";
    if (maxval == 255) {
        for (uint16_t v : img.pixels()) out.put(static_cast<char>(v));
    } else {
        for (uint16_t v : img.pixels()) {
            out.put(static_cast<char>(v >> 8));
            out.put(static_cast<char>(v & 0xff));
        }
    }
    if (!out) throw std::runtime_error("write_pgm: write failed");
}

void write_pgm(const QuantizedImage& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_pgm: cannot open " + path);
    write_pgm(img, f);
}

}  // namespace stackfilt
