#pragma once

#include "lodtex/core/image.hpp"

namespace lodtex::imageproc {

enum class MorphOp { Dilate, Erode, Open, Close };

/// Binary morphology with a kx-by-ky rectangle anchored at (kx/2, ky/2).
/// Pixels outside the mask read as false for dilation and true for erosion.
BinaryMask morphology(const BinaryMask& mask, MorphOp op, int kx, int ky);

inline BinaryMask dilate(const BinaryMask& m, int kx, int ky) { return morphology(m, MorphOp::Dilate, kx, ky); }
inline BinaryMask erode(const BinaryMask& m, int kx, int ky) { return morphology(m, MorphOp::Erode, kx, ky); }

}  // namespace lodtex::imageproc
