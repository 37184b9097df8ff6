#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace lodtex {

/// Row-major interleaved pixel grid.
template <typename T>
class Image {
public:
    Image() = default;
    Image(int width, int height, int channels, T fill = T{})
        : width_(width), height_(height), channels_(channels),
          data_(static_cast<std::size_t>(width) * height * channels, fill) {
        assert(width >= 0 && height >= 0 && channels > 0);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    bool empty() const noexcept { return data_.empty(); }

    T& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
    const T& at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

    T* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_ * channels_; }
    const T* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_ * channels_; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    bool same_shape(const Image& o) const noexcept {
        return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
    }
    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t index(int x, int y, int c) const {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_ && c >= 0 && c < channels_);
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<T> data_;
};

/// 8-bit image, 1 (gray) or 3 (RGB) channels.
using RasterImage = Image<std::uint8_t>;
/// Single-channel floating-point image.
using GrayImage = Image<float>;

/// W x H boolean grid, row-major.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool fill = false)
        : width_(width), height_(height),
          bits_(static_cast<std::size_t>(width) * height, fill ? 1 : 0) {}

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return bits_.empty(); }

    bool operator()(int x, int y) const { return bits_[idx(x, y)] != 0; }
    void set(int x, int y, bool v = true) { bits_[idx(x, y)] = v ? 1 : 0; }
    /// Out-of-range reads return false.
    bool get_or(int x, int y, bool fallback = false) const {
        if (x < 0 || y < 0 || x >= width_ || y >= height_) return fallback;
        return bits_[idx(x, y)] != 0;
    }

    std::span<std::uint8_t> bits() noexcept { return bits_; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    std::size_t count() const noexcept;
    bool same_shape(const BinaryMask& o) const noexcept { return width_ == o.width_ && height_ == o.height_; }
    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t idx(int x, int y) const {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
/// a AND NOT b
BinaryMask mask_subtract(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_not(const BinaryMask& a);

/// Luma (Rec. 601) for RGB, identity for gray.
GrayImage to_gray(const RasterImage& img);
GrayImage mask_to_gray(const BinaryMask& m, float on = 1.0f);
BinaryMask threshold(const GrayImage& img, float level);
RasterImage mask_to_image(const BinaryMask& m);
/// Any nonzero channel-0 value counts as set.
BinaryMask image_to_mask(const RasterImage& img);
RasterImage to_rgb(const RasterImage& img);
RasterImage gray_to_u8(const GrayImage& img);

/// Bilinear sample of channel c at continuous pixel coordinate (x, y), where
/// integer coordinates address pixel centres. Out-of-range handling: x wraps
/// when wrap_x is set, otherwise both axes clamp.
double sample_bilinear(const RasterImage& img, double x, double y, int c, bool wrap_x = false);
double sample_bilinear(const GrayImage& img, double x, double y, bool wrap_x = false);

/// Peak signal-to-noise ratio in dB over all channels (peak 255). A non-empty
/// region restricts the comparison to set pixels. Identical inputs give +inf.
double psnr(const RasterImage& a, const RasterImage& b, const BinaryMask& region = {});

}  // namespace lodtex
