#pragma once

#include "lodtex/core/image.hpp"

namespace lodtex::eval {

struct AlignmentParams {
    double scale_min = 0.75;
    double scale_max = 1.2;
    int shift_max = 100;
    double coarse_scale_step = 0.05;
    int coarse_shift_step = 10;
    double fine_scale_step = 0.01;
    int fine_shift_step = 2;
};

struct AlignmentCandidate {
    double scale = 1.0;
    int dx = 0;
    int dy = 0;
    double iou = 0.0;
};

struct AlignmentResult {
    double scale = 1.0;
    int dx = 0;
    int dy = 0;
    double iou = 0.0;
    double identity_iou = 0.0;
    AlignmentCandidate coarse;
};

/// IoU of two equally sized masks; 0 when both are empty.
double mask_iou(const BinaryMask& a, const BinaryMask& b);

/// GT'(p) = GT(round(c + s (p - c) + d)) with c the GT centroid.
BinaryMask transform_gt(const BinaryMask& gt, double scale, int dx, int dy);

/// Resamples to w x h (bilinear, threshold 0.5).
BinaryMask resample_mask(const BinaryMask& m, int w, int h);

/// Coarse grid then a fine grid around the coarse argmax. Ties prefer
/// smaller |s - 1|, then smaller |dx| + |dy|.
AlignmentResult align_and_score(const BinaryMask& pred, const BinaryMask& gt, const AlignmentParams& p = {});

}  // namespace lodtex::eval
