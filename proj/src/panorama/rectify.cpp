#include "lodtex/panorama/rectify.hpp"

#include "lodtex/core/error.hpp"
#include "lodtex/panorama/tiles.hpp"

#include <cmath>

namespace lodtex::panorama {

std::optional<std::string> equirect_warning(const RasterImage& pano) {
    if (pano.width() == 2 * pano.height()) return std::nullopt;
    return "panorama is " + std::to_string(pano.width()) + "x" + std::to_string(pano.height()) +
           ", expected a 2:1 aspect ratio";
}

RasterImage remap(const RasterImage& pano, const Mat3& src_from_out) {
    const int w = pano.width(), h = pano.height(), ch = pano.channels();
    RasterImage out(w, h, ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const Spherical s = spherical_from_pixel(x, y, w, h);
            const Vec3 d = src_from_out * dir_from_spherical(s.theta, s.phi);
            const Vec2 p = pixel_from_spherical(spherical_from_dir(d), w, h);
            for (int c = 0; c < ch; ++c)
                out.at(x, y, c) = static_cast<std::uint8_t>(std::lround(sample_bilinear(pano, p.x(), p.y(), c, true)));
        }
    return out;
}

RasterImage rectify(const RasterImage& pano, const Attitude& a) {
    if (a.is_identity()) return pano;
    return remap(pano, camera_from_world(a));
}

AttitudeEstimate estimate_attitude(const std::vector<std::vector<SphereSegment>>& tile_segments,
                                   const AttitudeOptions& opt) {
    AttitudeEstimate est;
    std::vector<SphereSegment> all;
    for (const auto& segs : tile_segments) {
        est.segment_count += segs.size();
        all.insert(all.end(), segs.begin(), segs.end());
        try {
            est.tiles.push_back(estimate_tile_zenith(segs, opt.zenith));
        } catch (const InsufficientEvidenceError&) {
        }
    }
    if (est.tiles.empty()) throw InsufficientEvidenceError("no tile produced a zenith estimate");
    est.zenith = consensus_zenith(est.tiles);
    est.attitude = attitude_from_zenith(est.zenith);
    est.dominant_azimuth = horizontal_azimuth_peak(all, est.zenith, opt.zenith.vertical_tol_deg);
    return est;
}

AttitudeEstimate estimate_attitude(const RasterImage& pano, const AttitudeOptions& opt) {
    std::vector<std::vector<SphereSegment>> per_tile;
    std::uint64_t seed = opt.segments.seed;
    for (const auto& t : extract_tiles(pano, opt.tile_fov_deg, opt.tile_overlap)) {
        SegmentOptions so = opt.segments;
        so.seed = seed++;
        per_tile.push_back(to_sphere(t.camera, detect_segments(to_gray(t.image), so)));
    }
    return estimate_attitude(per_tile, opt);
}

nlohmann::json attitude_sidecar(const std::string& pano_id, const Attitude& a) {
    return {{"pano_id", pano_id}, {"pitch_deg", a.pitch}, {"roll_deg", a.roll}, {"heading_deg", a.heading}};
}

}  // namespace lodtex::panorama
