#include "lodtex/imageproc/filter.hpp"

#include "lodtex/core/error.hpp"

#include <cmath>

namespace lodtex::imageproc {

double default_sigma(int kernel_size) { return 0.3 * ((kernel_size - 1) * 0.5 - 1.0) + 0.8; }

std::vector<double> gaussian_kernel(int kernel_size, double sigma) {
    if (kernel_size < 1 || kernel_size % 2 == 0) throw ArgumentError("gaussian kernel size must be odd and positive");
    if (!(sigma > 0)) throw ArgumentError("gaussian sigma must be positive");
    std::vector<double> k(static_cast<std::size_t>(kernel_size));
    const int r = kernel_size / 2;
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += k[i + r];
    }
    for (auto& v : k) v /= sum;
    return k;
}

int reflect101(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - i;
}

GrayImage gaussian_blur(const GrayImage& img, int kernel_size, std::optional<double> sigma) {
    const auto k = gaussian_kernel(kernel_size, sigma.value_or(default_sigma(kernel_size)));
    const int r = kernel_size / 2;
    const int w = img.width(), h = img.height();
    GrayImage tmp(w, h, 1), out(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -r; i <= r; ++i) acc += k[i + r] * img.at(reflect101(x + i, w), y);
            tmp.at(x, y) = static_cast<float>(acc);
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -r; i <= r; ++i) acc += k[i + r] * tmp.at(x, reflect101(y + i, h));
            out.at(x, y) = static_cast<float>(acc);
        }
    return out;
}

Gradient sobel(const GrayImage& img) {
    const int w = img.width(), h = img.height();
    Gradient g{GrayImage(w, h, 1), GrayImage(w, h, 1)};
    auto px = [&](int x, int y) { return static_cast<double>(img.at(reflect101(x, w), reflect101(y, h))); };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double gx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
            const double gy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
            g.gx.at(x, y) = static_cast<float>(gx);
            g.gy.at(x, y) = static_cast<float>(gy);
        }
    return g;
}

}  // namespace lodtex::imageproc
