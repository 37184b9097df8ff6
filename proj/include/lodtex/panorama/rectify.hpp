#pragma once

#include "lodtex/core/image.hpp"
#include "lodtex/panorama/segments.hpp"
#include "lodtex/panorama/spherical.hpp"
#include "lodtex/panorama/zenith.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lodtex::panorama {

/// Non-empty message when the image is not 2:1.
std::optional<std::string> equirect_warning(const RasterImage& pano);

/// Output pixel direction d maps to source direction src_from_out * d.
RasterImage remap(const RasterImage& pano, const Mat3& src_from_out);

/// Levelled (and, with a heading, north-aligned) panorama. Identity
/// attitude returns the input unchanged.
RasterImage rectify(const RasterImage& pano, const Attitude& a);

struct AttitudeOptions {
    double tile_fov_deg = 90.0;
    double tile_overlap = 0.5;
    SegmentOptions segments;
    ZenithOptions zenith;
    bool refine_heading = false;
};

struct AttitudeEstimate {
    Attitude attitude;
    Vec3 zenith = Vec3::UnitY();
    std::vector<ZenithEstimate> tiles;  // tiles with enough evidence
    std::size_t segment_count = 0;
    std::optional<double> dominant_azimuth;  // histogram peak, degrees mod 90
};

/// Tiles -> segments -> per-tile zenith -> consensus -> pitch/roll. Throws
/// InsufficientEvidenceError when no tile yields an estimate.
AttitudeEstimate estimate_attitude(const RasterImage& pano, const AttitudeOptions& opt = {});
/// Same consensus from externally supplied per-tile segments.
AttitudeEstimate estimate_attitude(const std::vector<std::vector<SphereSegment>>& tile_segments,
                                   const AttitudeOptions& opt = {});

nlohmann::json attitude_sidecar(const std::string& pano_id, const Attitude& a);

}  // namespace lodtex::panorama
