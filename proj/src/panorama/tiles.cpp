#include "lodtex/panorama/tiles.hpp"

#include "lodtex/core/error.hpp"

#include <cmath>

namespace lodtex::panorama {

double TileCamera::focal() const { return 0.5 * size / std::tan(deg2rad(fov_deg) / 2.0); }

Vec3 TileCamera::direction(double x, double y) const {
    const double c = 0.5 * (size - 1);
    const Vec3 local(x - c, -(y - c), focal());
    return rot_y(yaw_deg) * local.normalized();
}

std::optional<Vec2> TileCamera::project(const Vec3& d) const {
    const Vec3 l = rot_y(-yaw_deg) * d;
    if (l.z() <= 1e-12) return std::nullopt;
    const double c = 0.5 * (size - 1), f = focal();
    return Vec2(c + f * l.x() / l.z(), c - f * l.y() / l.z());
}

std::vector<TileCamera> tile_cameras(int pano_width, double tile_fov_deg, double overlap, int size) {
    if (!(tile_fov_deg > 0.0 && tile_fov_deg < 180.0)) throw ArgumentError("tile fov must be in (0, 180)");
    if (!(overlap >= 0.0 && overlap < 1.0)) throw ArgumentError("tile overlap must be in [0, 1)");
    const double spacing = tile_fov_deg * (1.0 - overlap);
    const int n = static_cast<int>(std::ceil(360.0 / spacing - 1e-9));
    if (size <= 0) size = std::max(8, static_cast<int>(std::lround(pano_width * tile_fov_deg / 360.0)));
    std::vector<TileCamera> cams;
    for (int i = 0; i < n; ++i) cams.push_back({wrap180(i * spacing), tile_fov_deg, size});
    return cams;
}

std::vector<Tile> extract_tiles(const RasterImage& pano, double tile_fov_deg, double overlap, int size) {
    std::vector<Tile> tiles;
    for (const auto& cam : tile_cameras(pano.width(), tile_fov_deg, overlap, size)) {
        Tile t{cam, RasterImage(cam.size, cam.size, pano.channels())};
        for (int y = 0; y < cam.size; ++y)
            for (int x = 0; x < cam.size; ++x) {
                const Vec2 p = pixel_from_spherical(spherical_from_dir(cam.direction(x, y)), pano.width(), pano.height());
                for (int c = 0; c < pano.channels(); ++c)
                    t.image.at(x, y, c) =
                        static_cast<std::uint8_t>(std::lround(sample_bilinear(pano, p.x(), p.y(), c, true)));
            }
        tiles.push_back(std::move(t));
    }
    return tiles;
}

}  // namespace lodtex::panorama
