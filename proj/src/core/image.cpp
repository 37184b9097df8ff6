#include "lodtex/core/image.hpp"

#include "lodtex/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lodtex {

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

namespace {

template <typename Op>
BinaryMask combine(const BinaryMask& a, const BinaryMask& b, Op op) {
    if (!a.same_shape(b)) throw ArgumentError("mask dimensions differ");
    BinaryMask out(a.width(), a.height());
    auto o = out.bits();
    auto x = a.bits();
    auto y = b.bits();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = op(x[i] != 0, y[i] != 0) ? 1 : 0;
    return out;
}

}  // namespace

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
    return combine(a, b, [](bool l, bool r) { return l || r; });
}
BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
    return combine(a, b, [](bool l, bool r) { return l && r; });
}
BinaryMask mask_subtract(const BinaryMask& a, const BinaryMask& b) {
    return combine(a, b, [](bool l, bool r) { return l && !r; });
}
BinaryMask mask_not(const BinaryMask& a) {
    BinaryMask out(a.width(), a.height());
    auto o = out.bits();
    auto x = a.bits();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] ? 0 : 1;
    return out;
}

GrayImage to_gray(const RasterImage& img) {
    GrayImage out(img.width(), img.height(), 1);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (img.channels() >= 3) {
                out.at(x, y) = static_cast<float>(0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                                                  0.114 * img.at(x, y, 2));
            } else {
                out.at(x, y) = img.at(x, y, 0);
            }
        }
    }
    return out;
}

GrayImage mask_to_gray(const BinaryMask& m, float on) {
    GrayImage out(m.width(), m.height(), 1);
    auto b = m.bits();
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = b[i] ? on : 0.0f;
    return out;
}

BinaryMask threshold(const GrayImage& img, float level) {
    BinaryMask out(img.width(), img.height());
    auto b = out.bits();
    auto d = img.data();
    for (std::size_t i = 0; i < d.size(); ++i) b[i] = d[i] >= level ? 1 : 0;
    return out;
}

RasterImage mask_to_image(const BinaryMask& m) {
    RasterImage out(m.width(), m.height(), 1);
    auto b = m.bits();
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = b[i] ? 255 : 0;
    return out;
}

BinaryMask image_to_mask(const RasterImage& img) {
    BinaryMask out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) out.set(x, y, img.at(x, y, 0) != 0);
    return out;
}

RasterImage to_rgb(const RasterImage& img) {
    if (img.channels() == 3) return img;
    RasterImage out(img.width(), img.height(), 3);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(x, y, 0);
    return out;
}

RasterImage gray_to_u8(const GrayImage& img) {
    RasterImage out(img.width(), img.height(), 1);
    auto s = img.data();
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = static_cast<std::uint8_t>(std::clamp(std::lround(s[i]), 0L, 255L));
    return out;
}

namespace {

struct Taps {
    int x0, x1, y0, y1;
    double fx, fy;
};

Taps bilinear_taps(int w, int h, double x, double y, bool wrap_x) {
    Taps t{};
    if (wrap_x) {
        x = std::fmod(x, static_cast<double>(w));
        if (x < 0) x += w;
        if (x >= w) x -= w;
    } else {
        x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    }
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const double xf = std::floor(x);
    const double yf = std::floor(y);
    t.x0 = static_cast<int>(xf);
    t.y0 = static_cast<int>(yf);
    t.fx = x - xf;
    t.fy = y - yf;
    t.x1 = wrap_x ? (t.x0 + 1) % w : std::min(t.x0 + 1, w - 1);
    t.y1 = std::min(t.y0 + 1, h - 1);
    if (t.x0 >= w) t.x0 = w - 1;
    return t;
}

}  // namespace

double sample_bilinear(const RasterImage& img, double x, double y, int c, bool wrap_x) {
    const Taps t = bilinear_taps(img.width(), img.height(), x, y, wrap_x);
    const double a = img.at(t.x0, t.y0, c), b = img.at(t.x1, t.y0, c);
    const double d = img.at(t.x0, t.y1, c), e = img.at(t.x1, t.y1, c);
    return (a * (1 - t.fx) + b * t.fx) * (1 - t.fy) + (d * (1 - t.fx) + e * t.fx) * t.fy;
}

double sample_bilinear(const GrayImage& img, double x, double y, bool wrap_x) {
    const Taps t = bilinear_taps(img.width(), img.height(), x, y, wrap_x);
    const double a = img.at(t.x0, t.y0), b = img.at(t.x1, t.y0);
    const double d = img.at(t.x0, t.y1), e = img.at(t.x1, t.y1);
    return (a * (1 - t.fx) + b * t.fx) * (1 - t.fy) + (d * (1 - t.fx) + e * t.fx) * t.fy;
}

double psnr(const RasterImage& a, const RasterImage& b, const BinaryMask& region) {
    if (!a.same_shape(b)) throw ArgumentError("psnr: image shapes differ");
    if (!region.empty() && (region.width() != a.width() || region.height() != a.height()))
        throw ArgumentError("psnr: region shape differs");
    double sse = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            if (!region.empty() && !region(x, y)) continue;
            for (int c = 0; c < a.channels(); ++c) {
                const double d = double(a.at(x, y, c)) - double(b.at(x, y, c));
                sse += d * d;
                ++n;
            }
        }
    }
    if (n == 0) throw ArgumentError("psnr: empty comparison region");
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sse / double(n);
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace lodtex
