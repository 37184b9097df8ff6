#pragma once

#include "lodtex/core/image.hpp"

#include <filesystem>
#include <vector>

namespace lodtex::matching {

struct Keypoint {
    double x = 0.0;
    double y = 0.0;
    double scale = 1.0;
    double orientation = 0.0;  // radians
    double response = 0.0;
    std::vector<float> descriptor;  // L2-normalized
};

struct DetectorOptions {
    int max_features = 1000;
    double harris_k = 0.04;
    /// Corners below this fraction of the strongest response are dropped.
    double quality = 0.01;
    int nms_radius = 3;
    int patch_size = 16;
    int blur_kernel = 5;
};

/// Harris corners with intensity-centroid orientation and a rotated,
/// mean-free, unit-norm patch_size^2 descriptor sampled from the blurred image.
std::vector<Keypoint> detect_and_describe(const RasterImage& img, const DetectorOptions& opt = {});

/// Reads `{points: [{x, y, desc: [...]}, ...]}` (optional scale, orientation).
/// Descriptors are L2-normalized and must share one length.
std::vector<Keypoint> load_keypoints(const std::filesystem::path& path);

}  // namespace lodtex::matching
