#pragma once

#include "lodtex/core/image.hpp"

#include <optional>
#include <vector>

namespace lodtex::imageproc {

/// Sigma used when none is given: 0.3 * ((k - 1) / 2 - 1) + 0.8.
double default_sigma(int kernel_size);

/// Normalized 1D Gaussian taps.
std::vector<double> gaussian_kernel(int kernel_size, double sigma);

/// Separable Gaussian blur with reflect-101 borders. kernel_size must be odd.
GrayImage gaussian_blur(const GrayImage& img, int kernel_size, std::optional<double> sigma = std::nullopt);

/// Reflect-101 index into [0, n).
int reflect101(int i, int n);

struct Gradient {
    GrayImage gx;
    GrayImage gy;
};

/// 3x3 Sobel derivatives, reflect-101 borders.
Gradient sobel(const GrayImage& img);

}  // namespace lodtex::imageproc
