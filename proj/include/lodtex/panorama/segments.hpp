#pragma once

#include "lodtex/core/image.hpp"
#include "lodtex/panorama/tiles.hpp"
#include "lodtex/panorama/zenith.hpp"

#include <cstdint>
#include <vector>

namespace lodtex::panorama {

struct Segment2 {
    Vec2 a;
    Vec2 b;
};

struct SegmentOptions {
    /// Sobel magnitude threshold (gray levels 0..255 input).
    double gradient_threshold = 60.0;
    int hough_threshold = 15;
    int min_length = 20;
    int max_gap = 3;
    /// Only lines within this angle of the image vertical are searched.
    double max_angle_from_vertical_deg = 90.0;
    std::uint64_t seed = 0;
};

/// Edge pixels (thinned Sobel maxima), then a progressive probabilistic Hough transform.
std::vector<Segment2> detect_segments(const GrayImage& img, const SegmentOptions& opt = {});

std::vector<SphereSegment> to_sphere(const TileCamera& cam, const std::vector<Segment2>& segs);

}  // namespace lodtex::panorama
