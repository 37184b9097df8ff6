#pragma once

#include "lodtex/core/image.hpp"
#include "lodtex/imageproc/homography.hpp"
#include "lodtex/matching/features.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace lodtex::matching {

struct Match {
    std::size_t a = 0;
    std::size_t b = 0;
    double distance = 0.0;
};

struct MatchSet {
    std::vector<Match> pairs;
    std::vector<bool> inliers;  // filled by RANSAC, parallel to pairs
};

/// Ratio test on true L2 distances with a mutual nearest-neighbour check.
/// Fewer than two descriptors in b rejects everything.
MatchSet match_ratio(const std::vector<Keypoint>& a, const std::vector<Keypoint>& b, double ratio = 0.75);

struct RansacParams {
    double reproj_px = 3.0;
    int iterations = 2000;
    std::uint64_t seed = 0;
};

struct RansacResult {
    imageproc::Homography h;
    std::vector<bool> inliers;
    std::size_t inlier_count = 0;
};

/// Forward and backward reprojection errors of one correspondence under h.
std::pair<double, double> reprojection_errors(const imageproc::Homography& h, const Vec2& src, const Vec2& dst);

/// 4-point RANSAC; inliers need both forward and backward error below
/// reproj_px. The best model is refitted on its inliers.
RansacResult ransac_homography(std::span<const Vec2> src, std::span<const Vec2> dst, const RansacParams& p = {});

struct Stitched {
    RasterImage image;
    /// Canvas pixel (x, y) is reference pixel (x + offset_x, y + offset_y).
    int offset_x = 0;
    int offset_y = 0;
};

/// h maps source pixels into the reference frame. Overlaps are feathered
/// with distance-to-border weights.
Stitched warp_and_blend(const RasterImage& reference, const RasterImage& source, const imageproc::Homography& h);

struct StitchOptions {
    DetectorOptions detector;
    double ratio = 0.75;
    RansacParams ransac;
};

struct StitchPair {
    Stitched result;
    imageproc::Homography h;
    std::size_t matches = 0;
    std::size_t inliers = 0;
};

/// Detect, match, RANSAC and blend source onto reference.
StitchPair stitch_pair(const RasterImage& reference, const RasterImage& source, const StitchOptions& opt = {});

struct LabeledImage {
    std::string id;
    RasterImage image;
};

struct Assignment {
    std::optional<std::string> building_id;
    std::size_t inliers = 0;
};

struct AssociateOptions {
    StitchOptions match;
    std::size_t min_inliers = 15;
};

/// Highest-inlier labelled image per tile; ties and counts below
/// min_inliers leave the tile unassigned.
std::vector<Assignment> associate_ids(const std::vector<LabeledImage>& labeled, const std::vector<RasterImage>& tiles,
                                      const AssociateOptions& opt = {});

/// Same, with keypoints computed or injected by the caller.
std::vector<Assignment> associate_keypoints(const std::vector<std::pair<std::string, std::vector<Keypoint>>>& labeled,
                                            const std::vector<std::vector<Keypoint>>& tiles,
                                            const AssociateOptions& opt = {});

void write_assignments_csv(std::ostream& out, const std::vector<std::string>& tile_names,
                           const std::vector<Assignment>& rows);

}  // namespace lodtex::matching
