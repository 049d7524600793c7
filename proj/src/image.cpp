#include "stackfilt/image.hpp"

namespace stackfilt {

BinaryImage threshold(const QuantizedImage& img, int m) {
    if (m < 1 || m > img.levels())
        throw std::domain_error("threshold: m out of [1, levels]");
    BinaryImage out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            out.set(r, c, img.at(r, c) >= m ? 1 : 0);
    return out;
}

QuantizedImage reconstruct(const std::vector<BinaryImage>& slices, int levels) {
    if (levels <= 0 || slices.size() != static_cast<size_t>(levels))
        throw std::domain_error("reconstruct: need exactly `levels` slices");
    const int w = slices.front().width();
    const int h = slices.front().height();
    for (const BinaryImage& s : slices)
        if (s.width() != w || s.height() != h)
            throw std::domain_error("reconstruct: slice dimension mismatch");
    QuantizedImage out(w, h, levels);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            int sum = 0;
            for (const BinaryImage& s : slices) sum += s.at(r, c);
            out.set(r, c, static_cast<uint16_t>(sum));
        }
    return out;
}

uint32_t window_pattern(const BinaryImage& img, int center_row, int center_col,
                        const Window& w) {
    if (center_row < 0 || center_row >= img.height() ||
        center_col < 0 || center_col >= img.width())
        throw std::domain_error("window_pattern: center outside image");
    const int hr = w.rows / 2, hc = w.cols / 2;
    uint32_t pattern = 0;
    int bit = 0;
    for (int dr = -hr; dr <= hr; ++dr)
        for (int dc = -hc; dc <= hc; ++dc, ++bit)
            if (img.at_clamped(center_row + dr, center_col + dc))
                pattern |= uint32_t{1} << bit;
    return pattern;
}

}  // namespace stackfilt
