#pragma once

#include "lodtex/core/image.hpp"

namespace lodtex::imageproc {

struct SsimParams {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 255.0;
};

/// Mean SSIM over all fully contained Gaussian windows. Images smaller than
/// the window use the largest odd window that fits.
double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& p = {});
/// RGB inputs are reduced to luma first.
double ssim(const RasterImage& a, const RasterImage& b, const SsimParams& p = {});

}  // namespace lodtex::imageproc
