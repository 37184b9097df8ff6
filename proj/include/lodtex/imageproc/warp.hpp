#pragma once

#include "lodtex/core/image.hpp"
#include "lodtex/imageproc/homography.hpp"

namespace lodtex::imageproc {

/// Inverse-mapped bilinear warp; samples falling outside the source are 0.
RasterImage warp_perspective(const RasterImage& img, const Homography& p, int out_w, int out_h);
/// Nearest-neighbour variant for masks.
BinaryMask warp_perspective(const BinaryMask& mask, const Homography& p, int out_w, int out_h);

}  // namespace lodtex::imageproc
