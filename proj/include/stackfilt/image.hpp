#ifndef STACKFILT_IMAGE_HPP
#define STACKFILT_IMAGE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stackfilt {

/// Gray-level image with values in {0,...,levels}. Immutable by convention
/// once built; all filter operations return fresh images.
class QuantizedImage {
public:
    QuantizedImage() = default;
    QuantizedImage(int width, int height, int levels, uint16_t fill = 0)
        : width_(width), height_(height), levels_(levels),
          pixels_(static_cast<size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0 || levels <= 0)
            throw std::domain_error("QuantizedImage: non-positive dimensions");
        if (fill > levels)
            throw std::domain_error("QuantizedImage: fill exceeds levels");
    }
    QuantizedImage(int width, int height, int levels, std::vector<uint16_t> pixels)
        : width_(width), height_(height), levels_(levels), pixels_(std::move(pixels)) {
        if (width <= 0 || height <= 0 || levels <= 0)
            throw std::domain_error("QuantizedImage: non-positive dimensions");
        if (pixels_.size() != static_cast<size_t>(width) * height)
            throw std::domain_error("QuantizedImage: pixel count mismatch");
        for (uint16_t v : pixels_)
            if (v > levels) throw std::domain_error("QuantizedImage: pixel above levels");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    int levels() const { return levels_; }

    uint16_t at(int row, int col) const {
        return pixels_[static_cast<size_t>(row) * width_ + col];
    }
    void set(int row, int col, uint16_t v) {
        pixels_[static_cast<size_t>(row) * width_ + col] = v;
    }
    /// Value with clamped (edge-replicated) coordinates.
    uint16_t at_clamped(int row, int col) const {
        if (row < 0) row = 0; else if (row >= height_) row = height_ - 1;
        if (col < 0) col = 0; else if (col >= width_) col = width_ - 1;
        return at(row, col);
    }

    const std::vector<uint16_t>& pixels() const { return pixels_; }
    std::vector<uint16_t>& pixels() { return pixels_; }

    bool same_shape(const QuantizedImage& o) const {
        return width_ == o.width_ && height_ == o.height_;
    }
    bool operator==(const QuantizedImage& o) const {
        return width_ == o.width_ && height_ == o.height_ &&
               levels_ == o.levels_ && pixels_ == o.pixels_;
    }

private:
    int width_ = 0, height_ = 0, levels_ = 0;
    std::vector<uint16_t> pixels_;
};

/// Binary slice, values in {0,1}.
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, uint8_t fill = 0)
        : width_(width), height_(height),
          bits_(static_cast<size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0)
            throw std::domain_error("BinaryImage: non-positive dimensions");
        if (fill > 1) throw std::domain_error("BinaryImage: fill not in {0,1}");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    uint8_t at(int row, int col) const {
        return bits_[static_cast<size_t>(row) * width_ + col];
    }
    void set(int row, int col, uint8_t v) {
        bits_[static_cast<size_t>(row) * width_ + col] = v;
    }
    uint8_t at_clamped(int row, int col) const {
        if (row < 0) row = 0; else if (row >= height_) row = height_ - 1;
        if (col < 0) col = 0; else if (col >= width_) col = width_ - 1;
        return at(row, col);
    }

    const std::vector<uint8_t>& bits() const { return bits_; }
    bool operator==(const BinaryImage& o) const {
        return width_ == o.width_ && height_ == o.height_ && bits_ == o.bits_;
    }

private:
    int width_ = 0, height_ = 0;
    std::vector<uint8_t> bits_;
};

/// Odd rectangular sliding window centred on the output pixel.
struct Window {
    int rows = 3;
    int cols = 3;

    Window() = default;
    Window(int r, int c) : rows(r), cols(c) {
        if (r <= 0 || c <= 0 || r % 2 == 0 || c % 2 == 0)
            throw std::domain_error("Window: dimensions must be odd positive");
        if (r * c > 25)
            throw std::domain_error("Window: rows*cols must not exceed 25");
    }
    int size() const { return rows * cols; }
    bool operator==(const Window& o) const { return rows == o.rows && cols == o.cols; }
};

struct Rect {
    int x = 0, y = 0, w = 0, h = 0;
};

/// Union of axis-aligned rectangles, all inside the image they refer to.
struct RegionOfInterest {
    std::vector<Rect> rects;

    void validate(int img_width, int img_height) const {
        if (rects.empty())
            throw std::domain_error("RegionOfInterest: empty");
        for (const Rect& r : rects) {
            if (r.w <= 0 || r.h <= 0 || r.x < 0 || r.y < 0 ||
                r.x + r.w > img_width || r.y + r.h > img_height)
                throw std::domain_error("RegionOfInterest: rectangle outside image");
        }
    }
    /// Applies fn(row, col) to every ROI pixel. Overlapping rectangles
    /// visit shared pixels more than once; callers needing set semantics
    /// should use mask().
    template <typename Fn>
    void for_each_pixel(Fn&& fn) const {
        for (const Rect& r : rects)
            for (int row = r.y; row < r.y + r.h; ++row)
                for (int col = r.x; col < r.x + r.w; ++col)
                    fn(row, col);
    }
    std::vector<uint8_t> mask(int img_width, int img_height) const {
        std::vector<uint8_t> m(static_cast<size_t>(img_width) * img_height, 0);
        for_each_pixel([&](int row, int col) {
            m[static_cast<size_t>(row) * img_width + col] = 1;
        });
        return m;
    }
};

/// T^m operator: 1 where pixel >= m.
BinaryImage threshold(const QuantizedImage& img, int m);

/// Sum of M binary slices; inverse of full threshold decomposition.
QuantizedImage reconstruct(const std::vector<BinaryImage>& slices, int levels);

/// Row-major window read-out at (center_row, center_col); bit i of the
/// result is window position i (top-left first). Out-of-image positions
/// replicate the nearest edge pixel.
uint32_t window_pattern(const BinaryImage& img, int center_row, int center_col,
                        const Window& w);

}  // namespace stackfilt

#endif
